"""Testes unitários para o casamento húngaro."""
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linear_sum_assignment

from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.services.hungarian_matcher import (
    PROBABILITY_FLOOR,
    cost_matrix,
    hungarian,
    pair_cost,
)
from weather_adapt.domain.value_objects.assignment import Assignment, CostMatrix
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection


def brute_force_cost(values: np.ndarray) -> float:
    """Menor custo entre todas as atribuições injetivas de tamanho min(m, n)."""
    rows, cols = values.shape
    if rows <= cols:
        return min(
            sum(values[r, c] for r, c in enumerate(perm))
            for perm in itertools.permutations(range(cols), rows)
        )
    return min(
        sum(values[r, c] for c, r in enumerate(perm))
        for perm in itertools.permutations(range(rows), cols)
    )


class TestHungarian:
    """Testes para hungarian."""

    def test_documented_example(self) -> None:
        """Deve trocar as colunas quando a diagonal é mais cara."""
        result = hungarian(CostMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))

        assert result.pairs == ((0, 1), (1, 0))
        assert result.total_cost == pytest.approx(2.0)

    def test_empty_matrix(self) -> None:
        """Deve retornar atribuição vazia para matriz sem linhas ou colunas."""
        assert len(hungarian(CostMatrix(np.zeros((0, 3))))) == 0
        assert len(hungarian(CostMatrix(np.zeros((4, 0))))) == 0

    def test_wide_matrix(self) -> None:
        """Deve casar todas as linhas quando há mais colunas."""
        values = np.array([[4.0, 1.0, 3.0, 9.0], [2.0, 0.0, 5.0, 1.0]])

        result = hungarian(CostMatrix(values))

        assert len(result) == 2
        assert result.total_cost == pytest.approx(2.0)

    def test_tall_matrix(self) -> None:
        """Deve casar todas as colunas quando há mais linhas."""
        values = np.array([[4.0, 1.0], [3.0, 9.0], [0.5, 6.0], [2.0, 2.0]])

        result = hungarian(CostMatrix(values))

        assert len(result) == 2
        assert result.total_cost == pytest.approx(1.5)
        assert result.target_of() == {0: 1, 2: 0}

    def test_matches_brute_force(self) -> None:
        """Deve atingir o custo mínimo da enumeração exaustiva."""
        rng = np.random.default_rng(0)
        for _ in range(500):
            rows, cols = rng.integers(1, 8, size=2)
            values = rng.uniform(-5.0, 5.0, size=(rows, cols))

            result = hungarian(CostMatrix(values))

            assert len(result) == min(rows, cols)
            assert result.total_cost == pytest.approx(brute_force_cost(values), abs=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(min_value=1, max_value=12).flatmap(
            lambda n: arrays(
                np.float64,
                st.tuples(st.just(n), st.integers(min_value=1, max_value=12)),
                elements=st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
            )
        )
    )
    def test_matches_scipy(self, values: np.ndarray) -> None:
        """Deve ter o mesmo custo total que linear_sum_assignment."""
        rows, cols = linear_sum_assignment(values)

        result = hungarian(CostMatrix(values))

        assert result.total_cost == pytest.approx(values[rows, cols].sum(), abs=1e-7)

    def test_row_and_column_shift_keep_assignment(self) -> None:
        """Deve manter a atribuição ao somar uma constante a uma linha ou coluna inteira."""
        rng = np.random.default_rng(11)

        for _ in range(100):
            n = int(rng.integers(1, 9))
            values = rng.uniform(0.0, 10.0, size=(n, n))
            expected = hungarian(CostMatrix(values)).pairs
            shift = float(rng.uniform(-20.0, 20.0))
            index = int(rng.integers(0, n))

            row_shifted = values.copy()
            row_shifted[index, :] += shift
            column_shifted = values.copy()
            column_shifted[:, index] += shift

            assert hungarian(CostMatrix(row_shifted)).pairs == expected
            assert hungarian(CostMatrix(column_shifted)).pairs == expected

    def test_ties_still_optimal(self) -> None:
        """Deve retornar atribuição ótima com custos empatados."""
        result = hungarian(CostMatrix(np.ones((3, 3))))

        assert len(result) == 3
        assert result.total_cost == pytest.approx(3.0)


class TestAssignment:
    """Testes para Assignment e CostMatrix."""

    def test_pairs_sorted_by_row(self) -> None:
        """Deve ordenar pares pela predição."""
        assignment = Assignment(pairs=((2, 0), (0, 1)))

        assert assignment.pairs == ((0, 1), (2, 0))

    def test_reject_non_injective(self) -> None:
        """Deve rejeitar alvo repetido."""
        with pytest.raises(ValueError, match="injetiva"):
            Assignment(pairs=((0, 1), (1, 1)))

    def test_reject_non_finite_cost(self) -> None:
        """Deve rejeitar custos não finitos."""
        with pytest.raises(ValueError, match="não finitos"):
            CostMatrix(np.array([[np.inf]]))


class TestCostMatrix:
    """Testes para cost_matrix e pair_cost."""

    def test_pair_cost_formula(self) -> None:
        """Deve combinar log-probabilidade e termo de IoU."""
        assert pair_cost(0.5, 0.25, 2.0) == pytest.approx(math.log(2.0) + 1.5)

    def test_pair_cost_floors_probability(self) -> None:
        """Deve limitar a probabilidade inferiormente."""
        assert pair_cost(0.0, 1.0, 2.0) == pytest.approx(-math.log(PROBABILITY_FLOOR))

    @settings(max_examples=100, deadline=None)
    @given(
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=5.0),
    )
    def test_pair_cost_monotone(
        self, p: float, p_gain: float, iou: float, iou_gain: float, lambda_box: float
    ) -> None:
        """Deve não aumentar o custo com probabilidade ou IoU maiores."""
        higher_p = p + (1.0 - p) * p_gain
        higher_iou = iou + (1.0 - iou) * iou_gain

        base = pair_cost(p, iou, lambda_box)

        assert pair_cost(higher_p, iou, lambda_box) <= base + 1e-12
        assert pair_cost(p, higher_iou, lambda_box) <= base + 1e-12
        assert pair_cost(higher_p, higher_iou, lambda_box) <= base + 1e-12

    def test_cost_matrix_monotone_in_probability_and_overlap(self) -> None:
        """Deve atribuir custo menor à predição mais provável ou mais sobreposta."""
        target = LabeledBox(box=Box3D(0, 0, 0, 2, 2, 2), category=0)
        predictions = [
            Detection.from_probs(Box3D(0.5, 0, 0, 2, 2, 2), [0.6, 0.4]),
            Detection.from_probs(Box3D(0.5, 0, 0, 2, 2, 2), [0.8, 0.2]),
            Detection.from_probs(Box3D(0.2, 0, 0, 2, 2, 2), [0.6, 0.4]),
        ]

        values = cost_matrix(predictions, [target], lambda_box=2.0).values[:, 0]

        assert values[1] < values[0]
        assert values[2] < values[0]

    def test_uses_probability_of_target_category(self) -> None:
        """Deve usar a probabilidade da categoria do alvo."""
        box = Box3D(0, 0, 0, 1, 1, 1)
        pred = Detection.from_probs(box, [0.2, 0.5, 0.3])
        targets = [LabeledBox(box=box, category=1), LabeledBox(box=box, category=2)]

        matrix = cost_matrix([pred], targets, lambda_box=2.0)

        np.testing.assert_allclose(matrix.values, [[-math.log(0.5), -math.log(0.3)]])

    def test_empty_predictions(self) -> None:
        """Deve produzir matriz vazia sem predições."""
        targets = [LabeledBox(box=Box3D(0, 0, 0, 1, 1, 1), category=0)]

        assert cost_matrix([], targets).is_empty

    def test_reject_negative_lambda(self) -> None:
        """Deve rejeitar lambda_box negativo."""
        with pytest.raises(ValueError, match="lambda_box"):
            cost_matrix([], [], lambda_box=-1.0)

    def test_bev_iou_ignores_height(self) -> None:
        """Deve ignorar altura quando use_bev_iou é verdadeiro."""
        pred = Detection.from_probs(Box3D(0, 0, 0, 1, 1, 1), [1.0, 0.0])
        target = LabeledBox(box=Box3D(0, 0, 5, 1, 1, 1), category=0)

        bev = cost_matrix([pred], [target], lambda_box=2.0, use_bev_iou=True)
        volumetric = cost_matrix([pred], [target], lambda_box=2.0)

        assert bev.values[0, 0] == pytest.approx(0.0, abs=1e-12)
        assert volumetric.values[0, 0] == pytest.approx(2.0)
