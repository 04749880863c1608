"""Testes unitários para cronogramas, EMA e otimizador."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from weather_adapt.domain.autograd import Node
from weather_adapt.domain.exceptions.domain_exceptions import ShapeMismatchException
from weather_adapt.domain.services.ema import ema_update
from weather_adapt.domain.services.sgd_optimizer import SGDMomentum
from weather_adapt.domain.services.training_schedule import learning_rate_at, ramp, schedules
from weather_adapt.domain.value_objects.lr_schedule import LrSchedule


class TestSchedules:
    """Testes para ramp e schedules."""

    def test_initial_values(self) -> None:
        """Deve começar com pesos nulos e α inicial."""
        values = schedules(0, 100)

        assert values.lambda_dom == 0.0
        assert values.lambda_con == 0.0
        assert values.alpha == pytest.approx(0.95)

    def test_half_ramp(self) -> None:
        """Deve estar na metade da rampa em 10% das iterações."""
        values = schedules(10, 100)

        assert values.lambda_dom == pytest.approx(0.05)
        assert values.alpha == pytest.approx(0.97)

    @pytest.mark.parametrize("t", [20, 50, 100])
    def test_plateau_after_ramp(self, t: int) -> None:
        """Deve manter os valores máximos após 20% das iterações."""
        values = schedules(t, 100)

        assert values.lambda_dom == pytest.approx(0.1)
        assert values.lambda_con == pytest.approx(0.1)
        assert values.alpha == pytest.approx(0.99)

    def test_fixed_alpha_overrides_warmup(self) -> None:
        """Deve usar α fixo quando informado."""
        assert schedules(0, 100, fixed_alpha=0.9).alpha == 0.9

    def test_reject_iteration_out_of_range(self) -> None:
        """Deve rejeitar iteração fora de [0, T]."""
        with pytest.raises(ValueError, match="fora de"):
            ramp(101, 100)

    def test_reject_non_positive_total(self) -> None:
        """Deve rejeitar total não positivo."""
        with pytest.raises(ValueError, match="positivo"):
            ramp(0, 0)

    def test_cosine_learning_rate(self) -> None:
        """Deve decair de lr base até zero em T."""
        assert learning_rate_at(0, 100, 0.01, LrSchedule.COSINE) == pytest.approx(0.01)
        assert learning_rate_at(50, 100, 0.01, LrSchedule.COSINE) == pytest.approx(0.005)
        assert learning_rate_at(100, 100, 0.01, LrSchedule.COSINE) == pytest.approx(0.0, abs=1e-15)

    def test_constant_learning_rate(self) -> None:
        """Deve manter lr constante."""
        assert learning_rate_at(73, 100, 0.01) == 0.01

    def test_parse_schedule(self) -> None:
        """Deve converter string em política."""
        assert LrSchedule.from_string(" Cosine ") is LrSchedule.COSINE
        with pytest.raises(ValueError, match="Política de taxa inválida"):
            LrSchedule.from_string("step")


class TestEmaUpdate:
    """Testes para ema_update."""

    def test_documented_value(self) -> None:
        """Deve mover o teacher 1% em direção ao student com α=0.99."""
        result = ema_update({"w": np.array(1.0)}, {"w": np.array(0.0)}, 0.99)

        assert float(result["w"]) == pytest.approx(0.99)

    def test_alpha_zero_copies_without_sharing(self) -> None:
        """Deve copiar o student sem compartilhar memória."""
        student = {"w": np.array([1.0, 2.0])}

        result = ema_update({"w": np.zeros(2)}, student, 0.0)
        student["w"][0] = 9.0

        np.testing.assert_array_equal(result["w"], [1.0, 2.0])

    @settings(max_examples=100, deadline=None)
    @given(
        arrays(np.float64, (2, 3), elements=st.floats(min_value=-1e3, max_value=1e3)),
        arrays(np.float64, (2, 3), elements=st.floats(min_value=-1e3, max_value=1e3)),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_convex_combination(self, teacher: np.ndarray, student: np.ndarray, alpha: float) -> None:
        """Deve ficar entre teacher e student elemento a elemento."""
        result = ema_update({"w": teacher}, {"w": student}, alpha)["w"]

        low = np.minimum(teacher, student)
        high = np.maximum(teacher, student)
        assert np.all(result >= low - 1e-9)
        assert np.all(result <= high + 1e-9)

    def test_reject_alpha_out_of_range(self) -> None:
        """Deve rejeitar α fora de [0, 1]."""
        with pytest.raises(ValueError, match="alpha"):
            ema_update({}, {}, 1.5)

    def test_reject_different_names(self) -> None:
        """Deve rejeitar conjuntos de parâmetros diferentes."""
        with pytest.raises(ValueError, match="mesmos parâmetros"):
            ema_update({"a": np.zeros(1)}, {"b": np.zeros(1)}, 0.5)

    def test_reject_shape_mismatch(self) -> None:
        """Deve rejeitar formas diferentes."""
        with pytest.raises(ShapeMismatchException):
            ema_update({"w": np.zeros(2)}, {"w": np.zeros(3)}, 0.5)


class TestSGDMomentum:
    """Testes para SGDMomentum."""

    def test_plain_step(self) -> None:
        """Deve subtrair lr·g sem momento acumulado."""
        param = Node(np.array([1.0, 2.0]), requires_grad=True)
        param.grad = np.array([0.5, -1.0])

        norm = SGDMomentum(momentum=0.9).step({"w": param}, {}, learning_rate=0.1)

        np.testing.assert_allclose(param.value, [0.95, 2.1])
        assert norm == pytest.approx(math.sqrt(1.25))
        assert param.grad is None

    def test_momentum_accumulates(self) -> None:
        """Deve acumular velocidade entre passos."""
        optimizer = SGDMomentum(momentum=0.5)
        param = Node(np.array([0.0]), requires_grad=True)
        velocity: dict[str, np.ndarray] = {}

        param.grad = np.array([1.0])
        optimizer.step({"w": param}, velocity, 1.0)
        param.grad = np.array([1.0])
        optimizer.step({"w": param}, velocity, 1.0)

        np.testing.assert_allclose(velocity["w"], [1.5])
        np.testing.assert_allclose(param.value, [-2.5])

    def test_clip_global_norm(self) -> None:
        """Deve recortar gradientes pela norma global."""
        a = Node(np.array([3.0]), requires_grad=True)
        b = Node(np.array([0.0]), requires_grad=True)
        a.grad, b.grad = np.array([3.0]), np.array([4.0])

        norm = SGDMomentum(momentum=0.0, clip_norm=1.0).step({"a": a, "b": b}, {}, 1.0)

        assert norm == pytest.approx(5.0)
        np.testing.assert_allclose(a.value, [2.4])
        np.testing.assert_allclose(b.value, [-0.8])

    def test_missing_gradient_treated_as_zero(self) -> None:
        """Deve tratar gradiente ausente como zero."""
        param = Node(np.array([1.0]), requires_grad=True)

        SGDMomentum().step({"w": param}, {}, 0.1)

        np.testing.assert_array_equal(param.value, [1.0])

    def test_reject_invalid_momentum(self) -> None:
        """Deve rejeitar momento fora de [0, 1]."""
        with pytest.raises(ValueError, match="Momento"):
            SGDMomentum(momentum=1.5)
