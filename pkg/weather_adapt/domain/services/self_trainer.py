"""Laço teacher-student com pseudo rótulos e alinhamento por consultas."""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.autograd.tape import Tape
from weather_adapt.domain.entities.class_centers import ClassCenters
from weather_adapt.domain.entities.global_class_memory import GlobalClassMemory
from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.entities.query_batch import QueryBatch
from weather_adapt.domain.entities.toy_scene import ToyScene
from weather_adapt.domain.entities.trainer_state import TrainerState
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.exceptions.domain_exceptions import (
    NonFiniteLossException,
    TeacherMutatedException,
)
from weather_adapt.domain.services.class_center_aggregator import class_centers
from weather_adapt.domain.services.contrastive_alignment import contrastive_loss, memory_update
from weather_adapt.domain.services.detection_loss import detection_loss
from weather_adapt.domain.services.domain_discriminator import (
    DomainDiscriminator,
    domain_adversarial_loss,
)
from weather_adapt.domain.services.ema import ema_update
from weather_adapt.domain.services.pseudo_label_filter import filter_pseudo_labels
from weather_adapt.domain.services.sgd_optimizer import SGDMomentum
from weather_adapt.domain.services.toy_detector import ToyDetector, as_constants, as_trainable
from weather_adapt.domain.services.toy_scene_generator import flip_scene
from weather_adapt.domain.services.training_schedule import learning_rate_at, schedules
from weather_adapt.domain.value_objects.domain_tag import DomainTag

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepMetrics:
    """Métricas de uma iteração de treino."""

    iteration: int
    target_domain: str
    loss_total: float
    loss_gt: float
    loss_pseudo: float
    loss_dom: float
    loss_con: float
    weighted_dom: float
    weighted_con: float
    lambda_dom: float
    lambda_con: float
    alpha: float
    learning_rate: float
    grad_norm: float
    pseudo_labels: int
    source_counts: dict[int, int] = field(default_factory=dict)
    target_counts: dict[int, int] = field(default_factory=dict)
    memory_counts: tuple[int, ...] = ()
    contrastive_skipped: int = 0
    domain_loss_empty: bool = False
    zero_norm_excluded: int = 0

    def to_row(self, num_classes: int) -> dict[str, Any]:
        """Linha plana para o CSV de métricas."""
        row: dict[str, Any] = {
            "iteration": self.iteration,
            "target_domain": self.target_domain,
            "loss_total": self.loss_total,
            "loss_gt": self.loss_gt,
            "loss_pseudo": self.loss_pseudo,
            "loss_dom": self.loss_dom,
            "loss_con": self.loss_con,
            "weighted_dom": self.weighted_dom,
            "weighted_con": self.weighted_con,
            "lambda_dom": self.lambda_dom,
            "lambda_con": self.lambda_con,
            "alpha": self.alpha,
            "learning_rate": self.learning_rate,
            "grad_norm": self.grad_norm,
            "pseudo_labels": self.pseudo_labels,
        }
        for k in range(num_classes):
            row[f"n_source_{k}"] = self.source_counts.get(k, 0)
            row[f"n_target_{k}"] = self.target_counts.get(k, 0)
            row[f"S_{k}"] = self.memory_counts[k] if k < len(self.memory_counts) else 0
        row["contrastive_skipped"] = self.contrastive_skipped
        row["domain_loss_empty"] = int(self.domain_loss_empty)
        row["zero_norm_excluded"] = self.zero_norm_excluded
        return row


def finite_outputs(batches: Sequence[QueryBatch]) -> bool:
    """Indica se logits e caixas de todos os lotes são finitos."""
    return all(
        np.all(np.isfinite(b.logits.value)) and np.all(np.isfinite(b.box_params.value))
        for b in batches
    )


@dataclass(frozen=True, eq=False)
class Objective:
    """
    Perda total de uma iteração e seus termos.

    Attributes:
        total: L_gt + L_pseudo + λ_dom·L_dom + λ_con·L_con
        detached: Parcela constante do total (termos 1 - IoU, sem gradiente)
        source_centers: Centros source (None sem QDDM)
        target_centers: Centros alvo (None sem QDDM)
    """

    total: Node
    loss_gt: Node
    loss_pseudo: Node
    loss_dom: Node
    loss_con: Node
    weighted_dom: Node
    weighted_con: Node
    detached: float = 0.0
    source_centers: Optional[ClassCenters] = None
    target_centers: Optional[ClassCenters] = None
    domain_loss_empty: bool = False
    contrastive_terms: int = 0
    contrastive_skipped: int = 0

    @property
    def zero_norm_excluded(self) -> int:
        """Consultas de norma zero fora dos centros."""
        return sum(
            centers.zero_norm_excluded
            for centers in (self.source_centers, self.target_centers)
            if centers is not None
        )

    def terms(self) -> dict[str, float]:
        """Valores das quatro perdas."""
        return {
            "gt": self.loss_gt.item(),
            "pseudo": self.loss_pseudo.item(),
            "dom": self.loss_dom.item(),
            "con": self.loss_con.item(),
        }


@dataclass(frozen=True)
class TrainingBatch:
    """Lote 1:1 de quadros source e alvo de uma única condição."""

    source: tuple[ToyScene, ...]
    target: tuple[ToyScene, ...]
    target_domain: Optional[DomainTag]


def initialize_state(config: TrainingConfiguration) -> TrainerState:
    """
    Estado inicial: teacher copiado do student, memória vazia.

    O RNG de inicialização e o RNG de lotes derivam da semente.
    """
    init_rng = np.random.default_rng([config.seed, 0])
    detector = ToyDetector(config)
    student_arrays = detector.init_parameters(init_rng)
    discriminator_arrays = DomainDiscriminator.init_parameters(
        config.feature_dim, config.discriminator_hidden, init_rng
    )
    return TrainerState(
        student=as_trainable(student_arrays, prefix="student/"),
        teacher={name: value.copy() for name, value in student_arrays.items()},
        discriminator=as_trainable(discriminator_arrays, prefix="discriminator/"),
        memory=GlobalClassMemory.empty(config.num_classes, config.feature_dim),
        config=config,
        rng=np.random.default_rng([config.seed, 1]),
        iteration=0,
        total_iterations=config.iterations,
    )


def sample_batch(
    state: TrainerState,
    source: Sequence[ToyScene],
    targets: Mapping[DomainTag, Sequence[ToyScene]],
) -> TrainingBatch:
    """
    Sorteia um lote com o RNG do estado.

    Uma condição alvo é escolhida uniformemente entre as disponíveis; o
    espelhamento é aplicado aos quadros source com probabilidade 1/2.
    """
    config = state.config
    rng = state.rng
    picks = rng.integers(0, len(source), size=config.batch_size)
    chosen: list[ToyScene] = []
    for index in picks:
        scene = source[int(index)]
        if config.flip_augmentation and rng.random() < 0.5:
            scene = flip_scene(scene, config.grid_size, config.cell_size)
        chosen.append(scene)

    available = [tag for tag in config.target_domains if targets.get(tag)]
    if not available:
        return TrainingBatch(source=tuple(chosen), target=(), target_domain=None)
    domain = available[int(rng.integers(0, len(available)))]
    pool = targets[domain]
    target_picks = rng.integers(0, len(pool), size=config.batch_size)
    return TrainingBatch(
        source=tuple(chosen),
        target=tuple(pool[int(i)] for i in target_picks),
        target_domain=domain,
    )


class SelfTrainer:
    """
    Executa iterações teacher-student.

    Ordem de uma iteração: teacher sem gravação sobre os alvos, filtro de
    pseudo rótulos, forward do student, perda total
    L_gt + L_pseudo + λ_dom·L_dom + λ_con·L_con, backward, passo SGD,
    atualização da memória (source e depois alvo) e EMA do teacher.
    """

    def __init__(self, config: TrainingConfiguration):
        """Inicializa componentes a partir da configuração."""
        self._config = config
        self._detector = ToyDetector(config)
        self._optimizer = SGDMomentum(momentum=config.momentum, clip_norm=config.grad_clip_norm)

    @property
    def detector(self) -> ToyDetector:
        """Arquitetura compartilhada por teacher e student."""
        return self._detector

    def pseudo_labels(self, state: TrainerState, scenes: Sequence[ToyScene]) -> list[list[LabeledBox]]:
        """Pseudo rótulos do teacher para cada quadro alvo (sem gravação)."""
        teacher = as_constants(state.teacher)
        labels: list[list[LabeledBox]] = []
        for scene in scenes:
            batch = self._detector.forward(teacher, scene)
            if not finite_outputs([batch]):
                raise NonFiniteLossException(state.iteration, {"teacher_outputs": float("nan")})
            labels.append(
                filter_pseudo_labels(
                    batch.detections(),
                    beta=self._config.beta,
                    nms_threshold=self._config.nms_threshold,
                    teacher_iteration=state.iteration,
                )
            )
        return labels

    def _branch_loss(
        self, batches: Sequence[QueryBatch], labels: Sequence[Sequence[LabeledBox]]
    ) -> Optional[tuple[Node, float]]:
        """Média das perdas de detecção dos quadros do ramo e sua parcela sem gradiente."""
        if not batches:
            return None
        total: Optional[Node] = None
        detached = 0.0
        for batch, frame_labels in zip(batches, labels):
            result = detection_loss(
                batch,
                frame_labels,
                lambda_box=self._config.lambda_box,
                use_bev_iou=self._config.use_bev_iou,
            )
            total = result.loss if total is None else ops.add(total, result.loss)
            detached += result.box_iou
        assert total is not None
        return ops.scale(total, 1.0 / len(batches)), detached / len(batches)

    def objective(
        self,
        student: Mapping[str, Node],
        discriminator: DomainDiscriminator,
        memory: GlobalClassMemory,
        batch: TrainingBatch,
        pseudo: Sequence[Sequence[LabeledBox]],
        lambda_dom: float,
        lambda_con: float,
        iteration: int = 0,
    ) -> Objective:
        """
        Constrói o grafo da perda total sobre o lote.

        Os quadros alvo entram quando há auto-treino ou QDDM; os pseudo
        rótulos são pareados com batch.target na mesma ordem.

        Raises:
            NonFiniteLossException: Se alguma saída do student não for finita
        """
        config = self._config
        target_scenes = batch.target if config.self_training or config.qddm else ()
        src_batches = [self._detector.forward(student, s) for s in batch.source]
        tgt_batches = [self._detector.forward(student, s) for s in target_scenes]
        if not finite_outputs(src_batches + tgt_batches):
            raise NonFiniteLossException(iteration, {"student_outputs": float("nan")})

        zero = ops.constant(0.0)
        detached = 0.0
        loss_gt = zero
        supervised = self._branch_loss(src_batches, [s.objects for s in batch.source])
        if supervised is not None:
            loss_gt, detached = supervised

        loss_pseudo = zero
        if config.self_training and tgt_batches:
            pairs = [
                (b, p) for b, p in zip(tgt_batches, pseudo) if p or config.supervise_empty_pseudo
            ]
            branch = self._branch_loss([b for b, _ in pairs], [p for _, p in pairs])
            if branch is not None:
                loss_pseudo, pseudo_detached = branch
                detached += pseudo_detached

        loss_dom, loss_con = zero, zero
        src_centers: Optional[ClassCenters] = None
        tgt_centers: Optional[ClassCenters] = None
        dom_empty, terms, skipped = False, 0, 0
        if config.qddm:
            src_centers = class_centers(QueryBatch.stack(src_batches), config.gamma)
            tgt_centers = (
                class_centers(QueryBatch.stack(tgt_batches), config.gamma)
                if tgt_batches
                else ClassCenters.empty(batch.target_domain or DomainTag.TARGET_NIGHT)
            )
            adversarial = domain_adversarial_loss(src_centers, tgt_centers, discriminator)
            contrastive = contrastive_loss([src_centers, tgt_centers], memory, config.tau)
            loss_dom, loss_con = adversarial.loss, contrastive.loss
            dom_empty = adversarial.empty
            terms, skipped = contrastive.terms, len(contrastive.skipped)

        weighted_dom = ops.scale(loss_dom, lambda_dom)
        weighted_con = ops.scale(loss_con, lambda_con)
        return Objective(
            total=ops.add(ops.add(ops.add(loss_gt, loss_pseudo), weighted_dom), weighted_con),
            loss_gt=loss_gt,
            loss_pseudo=loss_pseudo,
            loss_dom=loss_dom,
            loss_con=loss_con,
            weighted_dom=weighted_dom,
            weighted_con=weighted_con,
            detached=detached,
            source_centers=src_centers,
            target_centers=tgt_centers,
            domain_loss_empty=dom_empty,
            contrastive_terms=terms,
            contrastive_skipped=skipped,
        )

    def train_step(self, state: TrainerState, batch: TrainingBatch) -> StepMetrics:
        """
        Executa uma iteração e avança o estado.

        Args:
            state: Estado mutável do treino
            batch: Quadros source e alvo

        Returns:
            Métricas da iteração

        Raises:
            NonFiniteLossException: Se a perda total não for finita
            TeacherMutatedException: Se o teacher mudar antes do EMA
            ValueError: Se o treino já terminou
        """
        if state.finished:
            raise ValueError("Treino já concluído")
        config = self._config
        t = state.iteration
        sched = schedules(
            t,
            state.total_iterations,
            lambda_dom_max=config.lambda_dom,
            lambda_con_max=config.lambda_con,
            alpha_start=config.alpha_start,
            alpha_end=config.alpha_end,
            ramp_fraction=config.ramp_fraction,
            fixed_alpha=config.fixed_alpha,
        )
        lr = learning_rate_at(t, state.total_iterations, config.learning_rate, config.lr_schedule)
        teacher_before = state.teacher_snapshot()

        uses_target = bool(batch.target) and (config.self_training or config.qddm)
        pseudo: list[list[LabeledBox]] = []
        if config.self_training and batch.target:
            pseudo = self.pseudo_labels(state, batch.target)

        with Tape() as tape:
            objective = self.objective(
                state.student,
                DomainDiscriminator(state.discriminator),
                state.memory,
                batch,
                pseudo,
                lambda_dom=sched.lambda_dom,
                lambda_con=sched.lambda_con,
                iteration=t,
            )
        total = objective.total
        terms = objective.terms()
        if not math.isfinite(total.item()):
            raise NonFiniteLossException(t, terms)

        if total.requires_grad:
            tape.backward(total)
        grad_norm = self._optimizer.step(state.trainable(), state.velocity, lr)

        for name, snapshot in teacher_before.items():
            if state.teacher[name].tobytes() != snapshot:
                raise TeacherMutatedException(t, name)

        src_centers, tgt_centers = objective.source_centers, objective.target_centers
        if src_centers is not None and tgt_centers is not None:
            state.memory = memory_update(memory_update(state.memory, src_centers), tgt_centers)

        student_values = {name: node.value for name, node in state.student.items()}
        state.teacher = ema_update(state.teacher, student_values, sched.alpha)
        state.iteration = t + 1

        metrics = StepMetrics(
            iteration=t,
            target_domain=str(batch.target_domain) if uses_target and batch.target_domain else "",
            loss_total=total.item(),
            loss_gt=terms["gt"],
            loss_pseudo=terms["pseudo"],
            loss_dom=terms["dom"],
            loss_con=terms["con"],
            weighted_dom=objective.weighted_dom.item(),
            weighted_con=objective.weighted_con.item(),
            lambda_dom=sched.lambda_dom,
            lambda_con=sched.lambda_con,
            alpha=sched.alpha,
            learning_rate=lr,
            grad_norm=grad_norm,
            pseudo_labels=sum(len(p) for p in pseudo),
            source_counts=dict(src_centers.counts) if src_centers else {},
            target_counts=dict(tgt_centers.counts) if tgt_centers else {},
            memory_counts=tuple(int(c) for c in state.memory.counts),
            contrastive_skipped=objective.contrastive_skipped,
            domain_loss_empty=objective.domain_loss_empty,
            zero_norm_excluded=objective.zero_norm_excluded,
        )
        logger.debug(
            f"Iteração {t}: total={metrics.loss_total:.4f} gt={metrics.loss_gt:.4f} "
            f"pseudo={metrics.loss_pseudo:.4f} dom={metrics.loss_dom:.4f} "
            f"con={metrics.loss_con:.4f} pseudo_rotulos={metrics.pseudo_labels}"
        )
        return metrics

    def evaluation_parameters(self, state: TrainerState) -> dict[str, np.ndarray]:
        """Teacher quando há auto-treino; senão o student."""
        if self._config.self_training:
            return {name: value.copy() for name, value in state.teacher.items()}
        return {name: node.value.copy() for name, node in state.student.items()}

    def predict(
        self, parameters: Mapping[str, np.ndarray], scenes: Sequence[ToyScene]
    ) -> list[QueryBatch]:
        """Forward sem gravação sobre várias cenas."""
        constants = as_constants(parameters)
        return [self._detector.forward(constants, scene) for scene in scenes]
