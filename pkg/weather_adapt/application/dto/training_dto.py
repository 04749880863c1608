"""DTOs para resultados de treino e avaliação por domínio."""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from weather_adapt.domain.entities.eval_result import EvalResult


@dataclass
class TrainingResultDTO:
    """
    Resultado de um experimento de treino.

    Attributes:
        evaluations: Domínio -> avaliação final nas cenas de validação
        target_map: Média do mAP sobre os domínios alvo
        iterations: Iterações executadas
        final_metrics: Última linha de métricas
        artifacts: Nome lógico -> caminho escrito
    """

    evaluations: dict[str, EvalResult]
    target_map: float
    iterations: int
    final_metrics: dict[str, Any] = field(default_factory=dict)
    artifacts: dict[str, Path] = field(default_factory=dict)
    manifest_path: Optional[Path] = None

    def summary(self) -> dict[str, Any]:
        """Resumo serializável em JSON."""
        return {
            "iterations": self.iterations,
            "target_mAP": self.target_map,
            "evaluations": {domain: result.to_dict() for domain, result in self.evaluations.items()},
        }
