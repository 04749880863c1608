"""Entidade EvalResult (métricas de detecção)."""
from dataclasses import dataclass, field
from typing import Any

DISTANCE_THRESHOLDS: tuple[float, ...] = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class EvalResult:
    """
    Resultado de avaliação por limiares de distância de centro.

    Attributes:
        ap: Categoria -> {limiar -> AP em [0, 1]}
        mean_ap: Média de AP sobre categorias avaliáveis e limiares
        mean_translation_error: Erro médio de translação (m) dos TPs
        excluded_categories: Categorias sem ground truth (AP indefinido)
        num_predictions: Total de predições avaliadas
        num_ground_truths: Total de ground truths
    """

    ap: dict[int, dict[float, float]]
    mean_ap: float
    mean_translation_error: float
    excluded_categories: tuple[int, ...] = field(default_factory=tuple)
    num_predictions: int = 0
    num_ground_truths: int = 0
    num_true_positives: int = 0

    def __post_init__(self) -> None:
        """Valida intervalos."""
        for per_threshold in self.ap.values():
            for value in per_threshold.values():
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"AP fora de [0, 1]: {value}")
        if not 0.0 <= self.mean_ap <= 1.0:
            raise ValueError(f"mAP fora de [0, 1]: {self.mean_ap}")
        if self.mean_translation_error < 0.0:
            raise ValueError("mATE não pode ser negativo")

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {
            "mAP": self.mean_ap,
            "mATE": self.mean_translation_error,
            "ap": {
                str(category): {str(t): v for t, v in per_threshold.items()}
                for category, per_threshold in sorted(self.ap.items())
            },
            "excluded_categories": list(self.excluded_categories),
            "num_predictions": self.num_predictions,
            "num_ground_truths": self.num_ground_truths,
            "num_true_positives": self.num_true_positives,
        }
