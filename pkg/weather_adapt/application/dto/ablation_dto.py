"""DTOs para estudos de ablação."""
from dataclasses import dataclass, field
from typing import Any


@dataclass
class AblationRowDTO:
    """
    Uma configuração de um estudo, agregada sobre sementes.

    Attributes:
        setting: Rótulo da configuração (ex.: "+auto-treino", "alpha=0.99")
        overrides: Campos alterados em relação à configuração base
        seeds: Sementes executadas
        target_maps: mAP alvo por semente
        median_target_map: Mediana do mAP alvo
        domain_maps: Domínio -> mediana do mAP
    """

    setting: str
    overrides: dict[str, Any]
    seeds: list[int]
    target_maps: list[float]
    median_target_map: float
    domain_maps: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {
            "setting": self.setting,
            "overrides": self.overrides,
            "seeds": self.seeds,
            "target_mAP": self.target_maps,
            "median_target_mAP": self.median_target_map,
            "domain_mAP": self.domain_maps,
        }


@dataclass
class AblationStudyDTO:
    """Estudo nomeado com suas linhas."""

    name: str
    rows: list[AblationRowDTO]

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {"name": self.name, "rows": [row.to_dict() for row in self.rows]}


@dataclass(frozen=True)
class ComponentOrdering:
    """
    Verificação do padrão de ordenação da grade de componentes.

    Attributes:
        self_training_improves: (+auto-treino) > base
        qddm_improves: (+QDDM) > base
        both_at_least_singles: (+ambos) >= max dos individuais
        margin: (+ambos) - base, em pontos absolutos de mAP
        margin_ok: margem >= mínimo exigido
    """

    self_training_improves: bool
    qddm_improves: bool
    both_at_least_singles: bool
    margin: float
    margin_ok: bool

    @property
    def holds(self) -> bool:
        """Indica se todo o padrão se verificou."""
        return (
            self.self_training_improves
            and self.qddm_improves
            and self.both_at_least_singles
            and self.margin_ok
        )

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {
            "self_training_improves": self.self_training_improves,
            "qddm_improves": self.qddm_improves,
            "both_at_least_singles": self.both_at_least_singles,
            "margin_points": self.margin,
            "margin_ok": self.margin_ok,
            "holds": self.holds,
        }


@dataclass
class AblationReportDTO:
    """Relatório completo de ablações."""

    studies: list[AblationStudyDTO]
    ordering: ComponentOrdering | None = None

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {
            "studies": [study.to_dict() for study in self.studies],
            "component_ordering": self.ordering.to_dict() if self.ordering else None,
        }
