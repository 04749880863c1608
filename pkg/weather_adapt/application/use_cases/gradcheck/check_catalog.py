"""Catálogo de verificações de gradiente (primitivas e composições)."""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.gradcheck import analytic_gradient, grad_check
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.global_class_memory import GlobalClassMemory
from weather_adapt.domain.entities.query_batch import QueryBatch
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.services.class_center_aggregator import class_centers
from weather_adapt.domain.services.contrastive_alignment import contrastive_loss
from weather_adapt.domain.services.detection_loss import detection_loss, query_detections
from weather_adapt.domain.services.domain_discriminator import (
    DomainDiscriminator,
    domain_adversarial_loss,
)
from weather_adapt.domain.services.hungarian_matcher import cost_matrix, hungarian
from weather_adapt.domain.services.toy_detector import ToyDetector, as_constants
from weather_adapt.domain.services.toy_scene_generator import make_toy_dataset
from weather_adapt.domain.value_objects.assignment import Assignment
from weather_adapt.domain.value_objects.domain_tag import DomainTag

PRIMITIVE_TOLERANCE = 1e-6
COMPOSITION_TOLERANCE = 1e-4
SIGN_LAW_TOLERANCE = 1e-12

Measure = Callable[[np.random.Generator], float]


@dataclass(frozen=True)
class GradCheckCase:
    """
    Uma verificação: mede o erro de uma instância aleatória.

    Attributes:
        name: Nome reportado (primitiva ou composição)
        tolerance: Erro máximo aceito
        measure: Gera uma instância com o RNG e retorna seu erro
    """

    name: str
    tolerance: float
    measure: Measure


def _weighted(node: Node, weights: np.ndarray) -> Node:
    """Projeção escalar com pesos aleatórios (evita gradientes triviais)."""
    return ops.sum(ops.mul(node, weights))


def _away_from(
    rng: np.random.Generator, shape: tuple[int, ...], kinks: tuple[float, ...]
) -> np.ndarray:
    """Valores em [-1, 1] a pelo menos 0.05 de cada ponto de não diferenciabilidade."""
    values = rng.uniform(-1.0, 1.0, size=shape)
    for kink in kinks:
        close = np.abs(values - kink) < 0.05
        values[close] = kink + np.sign(values[close] - kink + 1e-12) * 0.1
    return values


def unary_case(
    name: str, op: Callable[[Node], Node], sample: Callable[[np.random.Generator], np.ndarray]
) -> GradCheckCase:
    """Verificação de uma primitiva unária sob projeção aleatória."""

    def measure(rng: np.random.Generator) -> float:
        x = sample(rng)
        output = op(Node(x)).value
        weights = rng.normal(size=output.shape)
        return grad_check(lambda node: _weighted(op(node), weights), x)

    return GradCheckCase(name, PRIMITIVE_TOLERANCE, measure)


def _matrix(rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(3, 4))


def _primitive_cases() -> list[GradCheckCase]:
    other = np.random.default_rng(7).normal(size=(3, 4))
    row = np.random.default_rng(8).normal(size=(4,))
    right = np.random.default_rng(9).normal(size=(4, 2))
    keys = np.random.default_rng(10).normal(size=(2, 4))
    return [
        unary_case("add", lambda x: ops.add(x, row), _matrix),
        unary_case("sub", lambda x: ops.sub(other, x), _matrix),
        unary_case("multiply", lambda x: ops.mul(x, x), _matrix),
        unary_case("neg", ops.neg, _matrix),
        unary_case("scale", lambda x: ops.scale(x, 2.5), _matrix),
        unary_case("matmul", lambda x: ops.matmul(x, right), _matrix),
        unary_case("transpose", ops.transpose, _matrix),
        unary_case("relu", ops.relu, lambda rng: _away_from(rng, (3, 4), (0.0,))),
        unary_case("exp", ops.exp, _matrix),
        unary_case("log", ops.log, lambda rng: rng.uniform(0.5, 2.0, size=(3, 4))),
        unary_case("sigmoid", ops.sigmoid, _matrix),
        unary_case("softmax", ops.softmax, _matrix),
        unary_case("log_softmax", ops.log_softmax, _matrix),
        unary_case("l2_normalize", ops.l2_normalize, _matrix),
        unary_case("cosine_similarity", lambda x: ops.cosine_similarity(x, keys), _matrix),
        unary_case("concat", lambda x: ops.concat([x, other], axis=1), _matrix),
        unary_case("take_rows", lambda x: ops.take_rows(x, [2, 0, 2]), _matrix),
        unary_case("slice_cols", lambda x: ops.slice_cols(x, 1, 3), _matrix),
        unary_case("reshape", lambda x: ops.reshape(x, (4, 3)), _matrix),
        unary_case("sum", lambda x: ops.sum(x, axis=0, keepdims=True), _matrix),
        unary_case("abs", ops.abs, lambda rng: _away_from(rng, (3, 4), (0.0,))),
        unary_case(
            "clip",
            lambda x: ops.clip(x, -0.5, 0.5),
            lambda rng: _away_from(rng, (3, 4), (-0.5, 0.5)),
        ),
        unary_case("grl", ops.grl, _matrix),
    ]


def _bce_mlp(rng: np.random.Generator) -> float:
    """BCE de um MLP de duas camadas em relação aos pesos da primeira."""
    inputs = rng.normal(size=(5, 4))
    w2 = rng.normal(size=(6, 1))
    labels = rng.integers(0, 2, size=5)
    w1 = rng.normal(size=(4, 6))
    while np.min(np.abs(inputs @ w1)) < 0.05:
        w1 = rng.normal(size=(4, 6))

    def f(x: Node) -> Node:
        probs = ops.sigmoid(ops.matmul(ops.relu(ops.matmul(inputs, x)), w2))
        terms = [
            ops.binary_cross_entropy(ops.take_rows(probs, [i]), int(label))
            for i, label in enumerate(labels)
        ]
        return ops.sum(ops.concat(terms, axis=0))

    return grad_check(f, w1)


def _grl_composition(rng: np.random.Generator) -> float:
    w = rng.normal(size=(4, 3))
    weights = rng.normal(size=(5, 3))
    x = rng.normal(size=(5, 4))
    return grad_check(lambda node: _weighted(ops.sigmoid(ops.matmul(ops.grl(node), w)), weights), x)


def grl_sign_law(rng: np.random.Generator) -> float:
    """
    Gradiente com GRL na raiz versus sem GRL.

    Returns:
        max |g_grl + g_sem|, zero quando a reversão é exata
    """
    w = rng.normal(size=(4, 3))
    weights = rng.normal(size=(5, 3))
    x = rng.normal(size=(5, 4))

    def body(node: Node) -> Node:
        return ops.sigmoid(ops.matmul(ops.l2_normalize(node), w))

    without = analytic_gradient(lambda node: _weighted(body(node), weights), x)
    reversed_ = analytic_gradient(lambda node: _weighted(ops.grl(body(node)), weights), x)
    return float(np.max(np.abs(reversed_ + without)))


FIXED_BOX = (0.0, 0.0, 0.0, 1.5, 1.5, 3.0, 0.0, 1.0)


def _confident_logits(rng: np.random.Generator, n: int, num_classes: int) -> np.ndarray:
    logits = rng.normal(size=(n, num_classes + 1))
    logits[np.arange(n), rng.integers(0, num_classes, size=n)] += 4.0
    return logits


def _query_batch(features: Node, logits: np.ndarray, domain: DomainTag) -> QueryBatch:
    """Lote com logits e caixas fixos em torno das features dadas."""
    boxes = np.tile(FIXED_BOX, (features.shape[0], 1))
    return QueryBatch(features=features, logits=Node(logits), box_params=Node(boxes), domain=domain)


@dataclass(frozen=True)
class _QddmInstance:
    memory: GlobalClassMemory
    discriminator: DomainDiscriminator
    source_logits: np.ndarray
    target: QueryBatch
    source_features: np.ndarray


def _qddm_instance(rng: np.random.Generator, num_classes: int = 3, dim: int = 4) -> _QddmInstance:
    memory = GlobalClassMemory(
        num_classes=num_classes,
        feature_dim=dim,
        prototypes=rng.normal(size=(num_classes, dim)),
        counts=np.ones(num_classes, dtype=np.int64),
    )
    disc_arrays = DomainDiscriminator.init_parameters(dim, 4, rng)
    target = _query_batch(
        Node(rng.normal(size=(6, dim))),
        _confident_logits(rng, 6, num_classes),
        DomainTag.TARGET_NIGHT,
    )
    return _QddmInstance(
        memory=memory,
        discriminator=DomainDiscriminator({k: Node(v) for k, v in disc_arrays.items()}),
        source_logits=_confident_logits(rng, 6, num_classes),
        target=target,
        source_features=rng.normal(size=(6, dim)),
    )


def _qddm_objective(rng: np.random.Generator) -> float:
    """Perda adversarial + contrastiva em relação às features source."""
    case = _qddm_instance(rng)

    def f(node: Node) -> Node:
        src_centers = class_centers(_query_batch(node, case.source_logits, DomainTag.SOURCE), 0.5)
        tgt_centers = class_centers(case.target, 0.5)
        adversarial = domain_adversarial_loss(src_centers, tgt_centers, case.discriminator).loss
        contrastive = contrastive_loss([src_centers, tgt_centers], case.memory, 0.07).loss
        return ops.add(adversarial, contrastive)

    return grad_check(f, case.source_features)


def _contrastive(rng: np.random.Generator) -> float:
    case = _qddm_instance(rng)

    def f(node: Node) -> Node:
        centers = class_centers(_query_batch(node, case.source_logits, DomainTag.SOURCE), 0.5)
        return contrastive_loss([centers], case.memory, 0.07).loss

    return grad_check(f, case.source_features)


def _tiny_config(seed: int) -> TrainingConfiguration:
    return TrainingConfiguration(
        seed=seed, grid_size=2, feature_dim=8, hidden_dim=8, query_embedding_dim=4, discriminator_hidden=4
    )


def _detection_instance(rng: np.random.Generator):
    config = _tiny_config(int(rng.integers(0, 10_000)))
    detector = ToyDetector(config)
    parameters = detector.init_parameters(rng)
    scene = make_toy_dataset(1, DomainTag.SOURCE, config.seed, config)[0]
    batch = detector.forward(as_constants(parameters), scene)
    assignment = hungarian(cost_matrix(query_detections(batch), scene.objects, config.lambda_box))
    return batch, scene, assignment


def _detection_loss_logits(rng: np.random.Generator) -> float:
    """Perda de detecção em relação aos logits, com atribuição fixa."""
    batch, scene, assignment = _detection_instance(rng)

    def f(node: Node) -> Node:
        preds = QueryBatch(batch.features, node, batch.box_params, batch.domain)
        return detection_loss(preds, scene.objects, assignment=assignment).loss

    return grad_check(f, batch.logits.value)


def _detection_loss_boxes(rng: np.random.Generator) -> float:
    """Perda de detecção em relação às caixas; o termo IoU sem gradiente é removido."""
    batch, scene, assignment = _detection_instance(rng)

    def f(node: Node) -> Node:
        preds = QueryBatch(batch.features, batch.logits, node, batch.domain)
        result = detection_loss(preds, scene.objects, assignment=assignment)
        return ops.sub(result.loss, result.box_iou)

    return grad_check(f, batch.box_params.value)


def _total_objective(parameter: str) -> Measure:
    """Objetivo completo (supervisionado + pseudo + domínio + contrastivo) em relação a um parâmetro."""

    def measure(rng: np.random.Generator) -> float:
        config = _tiny_config(int(rng.integers(0, 10_000)))
        detector = ToyDetector(config)
        arrays = detector.init_parameters(rng)
        source = make_toy_dataset(1, DomainTag.SOURCE, config.seed, config)[0]
        target = make_toy_dataset(1, DomainTag.TARGET_NIGHT, config.seed, config, first_id=1)[0]
        disc_arrays = DomainDiscriminator.init_parameters(config.feature_dim, config.discriminator_hidden, rng)
        discriminator = DomainDiscriminator({k: Node(v) for k, v in disc_arrays.items()})
        memory = GlobalClassMemory(
            num_classes=config.num_classes,
            feature_dim=config.feature_dim,
            prototypes=rng.normal(size=(config.num_classes, config.feature_dim)),
            counts=np.ones(config.num_classes, dtype=np.int64),
        )
        base = as_constants(arrays)
        assignments: dict[str, Assignment] = {}
        for key, scene in (("source", source), ("target", target)):
            batch = detector.forward(base, scene)
            costs = cost_matrix(query_detections(batch), scene.objects, config.lambda_box)
            assignments[key] = hungarian(costs)

        def f(node: Node) -> Node:
            parameters = dict(base)
            parameters[parameter] = node
            src = detector.forward(parameters, source)
            tgt = detector.forward(parameters, target)
            gt = detection_loss(src, source.objects, assignment=assignments["source"])
            pseudo = detection_loss(tgt, target.objects, assignment=assignments["target"])
            src_centers = class_centers(src, config.gamma)
            tgt_centers = class_centers(tgt, config.gamma)
            dom = domain_adversarial_loss(src_centers, tgt_centers, discriminator).loss
            con = contrastive_loss([src_centers, tgt_centers], memory, config.tau).loss
            total = ops.add(ops.sub(gt.loss, gt.box_iou), ops.sub(pseudo.loss, pseudo.box_iou))
            total = ops.add(total, ops.scale(dom, config.lambda_dom))
            return ops.add(total, ops.scale(con, config.lambda_con))

        return grad_check(f, arrays[parameter])

    return measure


def default_cases() -> list[GradCheckCase]:
    """Suíte completa: primitivas (1e-6), composições (1e-4) e lei de sinal da GRL."""
    cases = _primitive_cases()
    cases.extend(
        [
            GradCheckCase("bce_mlp", COMPOSITION_TOLERANCE, _bce_mlp),
            GradCheckCase("grl_composicao", COMPOSITION_TOLERANCE, _grl_composition),
            GradCheckCase("grl_lei_do_sinal", SIGN_LAW_TOLERANCE, grl_sign_law),
            GradCheckCase("contrastiva", COMPOSITION_TOLERANCE, _contrastive),
            GradCheckCase("qddm_objetivo", COMPOSITION_TOLERANCE, _qddm_objective),
            GradCheckCase("detection_loss/logits", COMPOSITION_TOLERANCE, _detection_loss_logits),
            GradCheckCase("detection_loss/caixas", COMPOSITION_TOLERANCE, _detection_loss_boxes),
            GradCheckCase("objetivo_total/w_cls", COMPOSITION_TOLERANCE, _total_objective("w_cls")),
            GradCheckCase("objetivo_total/b_box", COMPOSITION_TOLERANCE, _total_objective("b_box")),
        ]
    )
    return cases
