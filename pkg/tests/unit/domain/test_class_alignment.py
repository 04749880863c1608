"""Testes unitários para centros de classe, memória global e perdas de alinhamento."""
import math
from random import Random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weather_adapt.domain.autograd import Node, Tape, ops
from weather_adapt.domain.entities.class_centers import ClassCenters
from weather_adapt.domain.entities.global_class_memory import GlobalClassMemory
from weather_adapt.domain.entities.query_batch import QueryBatch, box_from_params, box_to_params
from weather_adapt.domain.services.class_center_aggregator import class_centers
from weather_adapt.domain.services.contrastive_alignment import contrastive_loss, memory_update
from weather_adapt.domain.services.domain_discriminator import (
    DomainDiscriminator,
    domain_adversarial_loss,
)
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.domain_tag import DomainTag

CONFIDENT = [5.0, 0.0, 0.0, 0.0]


def make_batch(features: list[list[float]], logits: list[list[float]], requires_grad: bool = False) -> QueryBatch:
    n = len(features)
    boxes = np.array([[float(i), 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0] for i in range(n)])
    return QueryBatch(
        features=Node(np.array(features), requires_grad=requires_grad),
        logits=Node(np.array(logits)),
        box_params=Node(boxes),
        domain=DomainTag.SOURCE,
    )


def categorized_batch(features: np.ndarray, categories: list[int]) -> QueryBatch:
    """Lote com consultas confiantes na categoria dada (3 = fundo)."""
    logits = np.zeros((len(categories), 4))
    logits[np.arange(len(categories)), categories] = 5.0
    boxes = np.tile([0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0], (len(categories), 1))
    return QueryBatch(
        features=Node(np.asarray(features, dtype=np.float64)),
        logits=Node(logits),
        box_params=Node(boxes),
        domain=DomainTag.SOURCE,
    )


def single_center(values: list[float], domain: DomainTag, category: int = 0) -> ClassCenters:
    return ClassCenters(
        centers={category: Node(np.array([values]), requires_grad=True)},
        counts={category: 1},
        domain=domain,
    )


class TestQueryBatch:
    """Testes para QueryBatch."""

    def test_detections_skip_background(self) -> None:
        """Deve ignorar consultas cujo argmax é o fundo."""
        batch = make_batch([[1, 0], [0, 1]], [CONFIDENT, [0, 0, 0, 5]])

        detections = batch.detections()

        assert len(detections) == 1
        assert detections[0].category == 0
        assert detections[0].num_classes == 4

    def test_reject_inconsistent_shapes(self) -> None:
        """Deve rejeitar formas inconsistentes."""
        with pytest.raises(ValueError, match="formas inconsistentes"):
            QueryBatch(
                features=Node(np.ones((2, 3))),
                logits=Node(np.ones((3, 4))),
                box_params=Node(np.ones((2, 8))),
                domain=DomainTag.SOURCE,
            )

    def test_stack_preserves_rows(self) -> None:
        """Deve empilhar lotes do mesmo domínio."""
        batch = make_batch([[1, 0]], [CONFIDENT])

        stacked = QueryBatch.stack([batch, batch])

        assert stacked.num_queries == 2

    def test_stack_rejects_mixed_domains(self) -> None:
        """Deve rejeitar lotes de domínios diferentes."""
        source = make_batch([[1, 0]], [CONFIDENT])
        target = QueryBatch(source.features, source.logits, source.box_params, DomainTag.TARGET_RAIN)

        with pytest.raises(ValueError, match="domínios diferentes"):
            QueryBatch.stack([source, target])

    def test_box_params_round_trip(self) -> None:
        """Deve codificar yaw por seno e cosseno."""
        box = Box3D(1.0, -2.0, 0.5, 1.6, 1.5, 3.9, 2.5)

        decoded = box_from_params(box_to_params(box))

        assert decoded.yaw == pytest.approx(2.5)
        assert decoded.l == pytest.approx(3.9)


class TestClassCenters:
    """Testes para class_centers."""

    def test_mean_of_normalized_features(self) -> None:
        """Deve calcular a média das features normalizadas por categoria."""
        batch = make_batch(
            [[3, 4], [1, 0], [0, 2], [5, 5]],
            [CONFIDENT, CONFIDENT, [0, 5, 0, 0], [0, 0, 0, 5]],
        )

        centers = class_centers(batch, gamma=0.5)

        assert centers.counts == {0: 2, 1: 1}
        np.testing.assert_allclose(centers.center_value(0), [0.8, 0.4])
        np.testing.assert_allclose(centers.center_value(1), [0.0, 1.0])

    def test_exclude_low_confidence(self) -> None:
        """Deve descartar consultas com confiança abaixo de gamma."""
        batch = make_batch([[1, 0], [0, 1]], [CONFIDENT, [0.1, 0, 0, 0]])

        centers = class_centers(batch, gamma=0.5)

        assert centers.counts == {0: 1}

    def test_exclude_zero_norm_features(self) -> None:
        """Deve descartar e contar features de norma zero."""
        batch = make_batch([[3, 4], [0, 0]], [CONFIDENT, CONFIDENT])

        centers = class_centers(batch, gamma=0.5)

        assert centers.counts == {0: 1}
        assert centers.zero_norm_excluded == 1
        np.testing.assert_allclose(centers.center_value(0), [0.6, 0.8])

    def test_empty_when_nothing_confident(self) -> None:
        """Deve retornar conjunto vazio sem consultas confiantes."""
        batch = make_batch([[1, 0]], [[0, 0, 0, 5]])

        assert class_centers(batch).is_empty

    def test_centers_stay_in_gradient_graph(self) -> None:
        """Deve propagar gradiente até as features."""
        batch = make_batch([[3, 4], [1, 0]], [CONFIDENT, CONFIDENT], requires_grad=True)

        with Tape() as tape:
            centers = class_centers(batch)
            loss = ops.sum(centers.centers[0])
        tape.backward(loss)

        assert batch.features.grad is not None
        assert np.any(batch.features.grad != 0.0)

    def test_reject_gamma_out_of_range(self) -> None:
        """Deve rejeitar gamma fora de [0, 1]."""
        with pytest.raises(ValueError, match="gamma"):
            class_centers(make_batch([[1, 0]], [CONFIDENT]), gamma=1.5)

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=2, max_size=2),
                st.integers(min_value=0, max_value=3),
            ),
            min_size=1,
            max_size=12,
        ),
        st.randoms(use_true_random=False),
    )
    def test_invariant_to_query_order(
        self, queries: list[tuple[list[float], int]], random: Random
    ) -> None:
        """Deve produzir os mesmos centros para qualquer ordem das consultas."""
        features = np.array([[1.0, *values] for values, _ in queries])
        categories = [category for _, category in queries]
        order = list(range(len(queries)))
        random.shuffle(order)

        original = class_centers(categorized_batch(features, categories))
        shuffled = class_centers(categorized_batch(features[order], [categories[i] for i in order]))

        assert shuffled.counts == original.counts
        for category in original.counts:
            np.testing.assert_allclose(
                shuffled.center_value(category), original.center_value(category), atol=1e-12
            )

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=2, max_size=2),
                st.integers(min_value=0, max_value=3),
            ),
            min_size=1,
            max_size=12,
        )
    )
    def test_duplicated_batch_keeps_mean_and_doubles_counts(
        self, queries: list[tuple[list[float], int]]
    ) -> None:
        """Deve manter a média e dobrar as contagens ao duplicar o conjunto confiante."""
        batch = categorized_batch(
            np.array([[1.0, *values] for values, _ in queries]), [c for _, c in queries]
        )

        single = class_centers(batch)
        doubled = class_centers(QueryBatch.stack([batch, batch]))

        assert doubled.counts == {k: 2 * n for k, n in single.counts.items()}
        for category in single.counts:
            np.testing.assert_allclose(
                doubled.center_value(category), single.center_value(category), atol=1e-12
            )

    def test_reject_center_without_count(self) -> None:
        """Deve exigir centro se e somente se n_k > 0."""
        with pytest.raises(ValueError, match="n_k > 0"):
            ClassCenters(centers={}, counts={0: 2}, domain=DomainTag.SOURCE)


class TestGlobalClassMemory:
    """Testes para GlobalClassMemory e memory_update."""

    def test_first_observation_copies_center(self) -> None:
        """Deve copiar o centro na primeira observação."""
        memory = GlobalClassMemory.empty(num_classes=3, feature_dim=2)

        updated = memory.updated_with({1: np.array([0.2, 0.4])}, {1: 4})

        np.testing.assert_array_equal(updated.prototype(1), [0.2, 0.4])
        assert updated.counts.tolist() == [0, 4, 0]
        assert not memory.has_prototype(1)

    def test_unobserved_prototype_raises(self) -> None:
        """Deve lançar KeyError para categoria não observada."""
        with pytest.raises(KeyError):
            GlobalClassMemory.empty(2, 2).prototype(0)

    def test_count_weighted_update(self) -> None:
        """Deve ponderar pelo número de consultas."""
        memory = GlobalClassMemory.empty(1, 2)

        memory = memory.updated_with({0: np.array([1.0, 0.0])}, {0: 2})
        memory = memory.updated_with({0: np.array([0.0, 1.0])}, {0: 3})

        np.testing.assert_allclose(memory.prototype(0), [0.4, 0.6])
        assert memory.counts[0] == 5

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=1, max_value=20),
                st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=3, max_size=3),
            ),
            min_size=1,
            max_size=10,
        )
    )
    def test_streaming_equals_weighted_mean(self, batches: list[tuple[int, list[float]]]) -> None:
        """Deve igualar a média ponderada por contagem de todos os lotes."""
        memory = GlobalClassMemory.empty(1, 3)

        for count, center in batches:
            memory = memory.updated_with({0: np.array(center)}, {0: count})

        counts = np.array([c for c, _ in batches], dtype=np.float64)
        centers = np.array([v for _, v in batches])
        expected = (counts[:, None] * centers).sum(axis=0) / counts.sum()
        np.testing.assert_allclose(memory.prototype(0), expected, atol=1e-9)
        assert memory.counts[0] == int(counts.sum())

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=1, max_value=50),
                st.lists(st.floats(min_value=-5.0, max_value=5.0), min_size=3, max_size=3),
            ),
            min_size=1,
            max_size=20,
        )
    )
    def test_prototype_within_running_bounds(self, batches: list[tuple[int, list[float]]]) -> None:
        """Deve manter o protótipo entre o mínimo e o máximo dos centros absorvidos."""
        memory = GlobalClassMemory.empty(1, 3)
        low = np.full(3, np.inf)
        high = np.full(3, -np.inf)

        for count, center in batches:
            memory = memory.updated_with({0: np.array(center)}, {0: count})
            low = np.minimum(low, center)
            high = np.maximum(high, center)

            prototype = memory.prototype(0)
            assert np.all(prototype >= low - 1e-12)
            assert np.all(prototype <= high + 1e-12)

    def test_memory_update_from_class_centers(self) -> None:
        """Deve absorver os valores dos centros de um lote."""
        batch = make_batch([[3, 4], [0, 2]], [CONFIDENT, [0, 5, 0, 0]])

        memory = memory_update(GlobalClassMemory.empty(3, 2), class_centers(batch))

        np.testing.assert_allclose(memory.prototype(0), [0.6, 0.8])
        np.testing.assert_allclose(memory.prototype(1), [0.0, 1.0])
        assert not memory.has_prototype(2)


class TestContrastiveLoss:
    """Testes para contrastive_loss."""

    def make_memory(self) -> GlobalClassMemory:
        return GlobalClassMemory(
            num_classes=3,
            feature_dim=2,
            prototypes=np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]),
            counts=np.array([1, 1, 0]),
        )

    def test_cross_entropy_over_prototypes(self) -> None:
        """Deve calcular -log softmax das similaridades com temperatura."""
        centers = single_center([0.6, 0.8], DomainTag.SOURCE)

        result = contrastive_loss([centers], self.make_memory(), tau=0.5)

        assert result.terms == 1
        assert float(result.loss.value) == pytest.approx(math.log(1.0 + math.exp(0.4)))

    def test_hand_computed_three_prototypes(self) -> None:
        """Deve igualar -log softmax de (0.9, 0.1, -0.2)/τ no índice da categoria."""
        sims = np.array([0.9, 0.1, -0.2])
        memory = GlobalClassMemory(
            num_classes=3,
            feature_dim=2,
            prototypes=np.column_stack([sims, np.sqrt(1.0 - sims**2)]),
            counts=np.array([4, 2, 7]),
        )
        centers = single_center([1.0, 0.0], DomainTag.SOURCE)

        result = contrastive_loss([centers], memory, tau=0.07)

        scaled = sims / 0.07
        expected = -(scaled[0] - math.log(np.exp(scaled).sum()))
        assert result.terms == 1
        assert float(result.loss.value) == pytest.approx(expected, rel=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_invariant_to_positive_rescaling(self, factor: float) -> None:
        """Deve ignorar a escala positiva do centro."""
        memory = GlobalClassMemory(
            num_classes=3,
            feature_dim=3,
            prototypes=np.array([[0.2, -0.5, 0.9], [1.0, 0.3, 0.1], [-0.4, 0.8, 0.2]]),
            counts=np.array([1, 1, 1]),
        )
        center = [0.3, -0.5, 0.8]

        original = contrastive_loss([single_center(center, DomainTag.SOURCE, 1)], memory)
        rescaled = contrastive_loss(
            [single_center([factor * v for v in center], DomainTag.SOURCE, 1)], memory
        )

        assert float(rescaled.loss.value) == pytest.approx(float(original.loss.value), rel=1e-9)

    def test_skip_category_without_prototype(self) -> None:
        """Deve pular categoria sem protótipo e registrá-la."""
        centers = single_center([0.6, 0.8], DomainTag.TARGET_NIGHT, category=2)

        result = contrastive_loss([centers], self.make_memory())

        assert result.terms == 0
        assert result.skipped == [(DomainTag.TARGET_NIGHT, 2)]
        assert float(result.loss.value) == 0.0

    def test_empty_memory_gives_zero(self) -> None:
        """Deve retornar zero com memória vazia."""
        centers = single_center([0.6, 0.8], DomainTag.SOURCE)

        result = contrastive_loss([centers], GlobalClassMemory.empty(3, 2))

        assert float(result.loss.value) == 0.0
        assert result.skipped == [(DomainTag.SOURCE, 0)]

    def test_reject_non_positive_tau(self) -> None:
        """Deve rejeitar temperatura não positiva."""
        with pytest.raises(ValueError, match="Temperatura"):
            contrastive_loss([], self.make_memory(), tau=0.0)


class TestDomainAdversarialLoss:
    """Testes para o discriminador e a perda adversarial."""

    def make_discriminator(self) -> DomainDiscriminator:
        values = DomainDiscriminator.init_parameters(3, 4, np.random.default_rng(5))
        return DomainDiscriminator({k: Node(v, requires_grad=True) for k, v in values.items()})

    def test_empty_when_no_centers(self) -> None:
        """Deve retornar perda zero sem centros."""
        result = domain_adversarial_loss(
            ClassCenters.empty(DomainTag.SOURCE),
            ClassCenters.empty(DomainTag.TARGET_RAIN),
            self.make_discriminator(),
        )

        assert result.empty
        assert float(result.loss.value) == 0.0

    def test_binary_cross_entropy_value(self) -> None:
        """Deve somar -log(1 - p) do source e -log(p) do alvo."""

        def half(x: Node) -> Node:
            return ops.constant(np.full((x.shape[0], 1), 0.5))

        result = domain_adversarial_loss(
            single_center([1.0, 0.0, 0.0], DomainTag.SOURCE),
            single_center([0.0, 1.0, 0.0], DomainTag.TARGET_HAZE),
            half,
        )

        assert not result.empty
        assert (result.source_terms, result.target_terms) == (1, 1)
        assert float(result.loss.value) == pytest.approx(2.0 * math.log(2.0))

    def test_gradient_reversal_sign(self) -> None:
        """Deve entregar aos centros o negativo do gradiente sem reversão."""
        discriminator = self.make_discriminator()
        source = single_center([0.3, -0.5, 0.8], DomainTag.SOURCE)
        target = single_center([-0.2, 0.7, 0.1], DomainTag.TARGET_RAIN)
        plain_src = Node(source.centers[0].value.copy(), requires_grad=True)
        plain_tgt = Node(target.centers[0].value.copy(), requires_grad=True)

        with Tape() as tape:
            result = domain_adversarial_loss(source, target, discriminator)
        tape.backward(result.loss)
        with Tape() as tape:
            probs = discriminator(ops.concat([plain_src, plain_tgt], axis=0))
            loss = ops.add(
                ops.neg(ops.sum(ops.log(ops.sub(1.0, ops.take_rows(probs, [0]))))),
                ops.neg(ops.sum(ops.log(ops.take_rows(probs, [1])))),
            )
        tape.backward(loss)

        np.testing.assert_allclose(source.centers[0].grad, -plain_src.grad)
        np.testing.assert_allclose(target.centers[0].grad, -plain_tgt.grad)

    def test_reject_missing_parameters(self) -> None:
        """Deve rejeitar discriminador sem todos os parâmetros."""
        with pytest.raises(ValueError, match="ausentes"):
            DomainDiscriminator({"w1": Node(np.ones((2, 2)))})
