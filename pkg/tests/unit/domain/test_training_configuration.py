"""Testes unitários para entidade TrainingConfiguration."""
import pytest

from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.domain.value_objects.lr_schedule import LrSchedule


class TestTrainingConfiguration:
    """Testes para TrainingConfiguration."""

    def test_default_values(self) -> None:
        """Deve criar configuração com os valores padrão do método."""
        config = TrainingConfiguration()

        assert config.alpha_start == 0.95
        assert config.alpha_end == 0.99
        assert config.beta == 0.9
        assert config.gamma == 0.5
        assert config.tau == 0.07
        assert config.lambda_dom == 0.1
        assert config.lambda_con == 0.1
        assert config.num_queries == 9
        assert config.target_domains == (DomainTag.TARGET_NIGHT,)

    def test_with_overrides_revalidates(self) -> None:
        """Deve revalidar a cópia com campos substituídos."""
        config = TrainingConfiguration().with_overrides(beta=0.8)

        assert config.beta == 0.8
        with pytest.raises(ValueError, match="'beta' deve estar em"):
            config.with_overrides(beta=1.5)

    @pytest.mark.parametrize("field", ["iterations", "batch_size", "feature_dim"])
    def test_reject_non_positive_sizes(self, field: str) -> None:
        """Deve rejeitar tamanhos zero."""
        with pytest.raises(ValueError, match=f"'{field}' deve ser maior que zero"):
            TrainingConfiguration(**{field: 0})

    def test_reject_small_grid(self) -> None:
        """Deve exigir ao menos 2 células por lado."""
        with pytest.raises(ValueError, match="2 células"):
            TrainingConfiguration(grid_size=1)

    def test_reject_non_positive_tau(self) -> None:
        """Deve rejeitar temperatura não positiva."""
        with pytest.raises(ValueError, match="Temperatura"):
            TrainingConfiguration(tau=0.0)

    def test_reject_fixed_alpha_out_of_range(self) -> None:
        """Deve rejeitar α fixo fora de [0, 1]."""
        with pytest.raises(ValueError, match="fixed_alpha"):
            TrainingConfiguration(fixed_alpha=1.2)

    def test_reject_source_as_target(self) -> None:
        """Deve rejeitar source entre os domínios alvo."""
        with pytest.raises(ValueError, match="target_domains"):
            TrainingConfiguration(target_domains=(DomainTag.SOURCE,))

    def test_reject_empty_targets(self) -> None:
        """Deve exigir ao menos um domínio alvo."""
        with pytest.raises(ValueError, match="ao menos um domínio"):
            TrainingConfiguration(target_domains=())

    def test_snapshot_is_json_friendly(self) -> None:
        """Deve serializar enums como strings."""
        config = TrainingConfiguration(
            lr_schedule=LrSchedule.COSINE,
            target_domains=(DomainTag.TARGET_RAIN, DomainTag.TARGET_HAZE),
        )

        snapshot = config.snapshot()

        assert snapshot["lr_schedule"] == "cosine"
        assert snapshot["target_domains"] == ["rain", "haze"]
        assert snapshot["fixed_alpha"] is None

    def test_field_names(self) -> None:
        """Deve listar todas as chaves aceitas."""
        names = TrainingConfiguration.field_names()

        assert "lambda_dom" in names
        assert "target_domains" in names
        assert len(names) == len(set(names))


class TestDomainTag:
    """Testes para DomainTag."""

    def test_from_string_case_insensitive(self) -> None:
        """Deve aceitar maiúsculas e espaços."""
        assert DomainTag.from_string(" Night ") is DomainTag.TARGET_NIGHT

    def test_from_string_invalid(self) -> None:
        """Deve rejeitar domínio desconhecido."""
        with pytest.raises(ValueError, match="Domínio inválido"):
            DomainTag.from_string("snow")

    def test_adversarial_label(self) -> None:
        """Deve rotular source com 0 e alvos com 1."""
        assert DomainTag.SOURCE.adversarial_label == 0
        assert all(tag.adversarial_label == 1 for tag in DomainTag.targets())
