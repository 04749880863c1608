"""Testes unitários para RunGradCheckUseCase e o catálogo de verificações."""
import numpy as np
import pytest

from weather_adapt.application.use_cases.gradcheck.check_catalog import (
    COMPOSITION_TOLERANCE,
    PRIMITIVE_TOLERANCE,
    GradCheckCase,
    default_cases,
    grl_sign_law,
    unary_case,
)
from weather_adapt.application.use_cases.gradcheck.run_gradcheck import RunGradCheckUseCase
from weather_adapt.domain.autograd import functions as F
from weather_adapt.domain.autograd import ops


def _matrix(rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(2, 3))


class TestCatalog:
    """Testes para o catálogo padrão."""

    def test_names_are_unique(self) -> None:
        """Deve ter nomes únicos por verificação."""
        names = [case.name for case in default_cases()]

        assert len(names) == len(set(names))

    def test_covers_primitives_and_compositions(self) -> None:
        """Deve incluir primitivas, GRL, perdas de alinhamento e objetivo total."""
        cases = {case.name: case for case in default_cases()}

        for name in ("multiply", "matmul", "softmax", "l2_normalize", "grl", "take_rows"):
            assert cases[name].tolerance == PRIMITIVE_TOLERANCE
        for name in ("bce_mlp", "contrastiva", "qddm_objetivo", "objetivo_total/w_cls"):
            assert cases[name].tolerance == COMPOSITION_TOLERANCE

    def test_grl_sign_law_is_exact(self) -> None:
        """Deve inverter exatamente o gradiente sob a GRL."""
        assert grl_sign_law(np.random.default_rng(0)) == 0.0


class TestRunGradCheckUseCase:
    """Testes para RunGradCheckUseCase."""

    def test_correct_primitives_pass(self) -> None:
        """Deve aprovar primitivas com adjuntos corretos."""
        cases = [
            unary_case("multiply", lambda x: ops.mul(x, x), _matrix),
            unary_case("sigmoid", ops.sigmoid, _matrix),
        ]

        report = RunGradCheckUseCase(cases).execute(instances=5, seed=1)

        assert report.passed
        assert [e.name for e in report.entries] == ["multiply", "sigmoid"]
        assert all(e.instances == 5 for e in report.entries)
        assert all(e.max_error <= PRIMITIVE_TOLERANCE for e in report.entries)

    def test_corrupted_adjoint_is_reported(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Deve reprovar e nomear a primitiva com adjunto corrompido."""
        # Arrange
        original = F.Mul.backward

        def doubled(ctx, grad):
            return tuple(2.0 * g for g in original(ctx, grad))

        monkeypatch.setattr(F.Mul, "backward", staticmethod(doubled))
        cases = [unary_case("multiply", lambda x: ops.mul(x, x), _matrix)]

        # Act
        report = RunGradCheckUseCase(cases).execute(instances=3, seed=0)

        # Assert
        assert not report.passed
        assert report.failures == ["multiply"]
        assert report.entries[0].max_error > PRIMITIVE_TOLERANCE

    def test_errors_are_captured_per_check(self) -> None:
        """Deve registrar a mensagem de erro sem interromper as demais verificações."""

        def broken(rng: np.random.Generator) -> float:
            raise ValueError("instância inválida")

        cases = [
            GradCheckCase("quebrada", 1e-6, broken),
            unary_case("neg", ops.neg, _matrix),
        ]

        report = RunGradCheckUseCase(cases).execute(instances=2)

        assert report.failures == ["quebrada"]
        assert report.entries[0].error == "instância inválida"
        assert report.entries[1].passed

    def test_same_seed_same_report(self) -> None:
        """Deve reproduzir os erros com a mesma semente."""
        cases = [unary_case("softmax", ops.softmax, _matrix)]

        first = RunGradCheckUseCase(cases).execute(instances=3, seed=4)
        second = RunGradCheckUseCase(cases).execute(instances=3, seed=4)

        assert first.to_dict() == second.to_dict()

    def test_report_serialization(self) -> None:
        """Deve serializar nome, tolerância, erro e status."""
        report = RunGradCheckUseCase([unary_case("exp", ops.exp, _matrix)]).execute(instances=1)

        data = report.to_dict()

        assert data["passed"] is True
        assert data["checks"][0]["name"] == "exp"
        assert data["checks"][0]["tolerance"] == PRIMITIVE_TOLERANCE
        assert data["checks"][0]["error"] == ""

    def test_reject_invalid_instances(self) -> None:
        """Deve rejeitar instances < 1."""
        with pytest.raises(ValueError, match="instâncias"):
            RunGradCheckUseCase([]).execute(instances=0)

    @pytest.mark.slow
    def test_default_suite_passes(self) -> None:
        """Deve aprovar a suíte completa em poucas instâncias."""
        report = RunGradCheckUseCase().execute(instances=2, seed=42)

        assert report.failures == []
