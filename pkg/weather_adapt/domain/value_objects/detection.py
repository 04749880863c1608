"""Value Object para detecções (caixa + distribuição de classes)."""
from dataclasses import dataclass
from typing import Any, Final, Sequence

import numpy as np

from weather_adapt.domain.value_objects.box3d import Box3D

PROBABILITY_TOLERANCE: Final[float] = 1e-6


def softmax(logits: Sequence[float] | np.ndarray) -> np.ndarray:
    """
    Softmax numericamente estável de um vetor.

    Args:
        logits: Vetor de logits finitos

    Returns:
        Vetor de probabilidades somando 1
    """
    values = np.asarray(logits, dtype=np.float64)
    shifted = np.exp(values - values.max())
    return shifted / shifted.sum()


@dataclass(frozen=True)
class Detection:
    """
    Detecção: caixa, distribuição de probabilidade por categoria e confiança.

    Para rótulos o vetor tem K entradas; para saídas do detector tem K+1,
    com o fundo na última posição.

    Attributes:
        box: Caixa 3D
        probs: Probabilidades por categoria (>= 0, somando 1)
        confidence: max(probs)
    """

    box: Box3D
    probs: tuple[float, ...]
    confidence: float

    def __post_init__(self) -> None:
        """Valida invariantes."""
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        self._validate()

    def _validate(self) -> None:
        """
        Valida distribuição e confiança.

        Raises:
            ValueError: Se probabilidades inválidas ou confiança inconsistente
        """
        if not self.probs:
            raise ValueError("Vetor de probabilidades não pode ser vazio")
        probs = np.asarray(self.probs)
        if not np.all(np.isfinite(probs)):
            raise ValueError("Probabilidades devem ser finitas")
        if np.any(probs < 0.0):
            raise ValueError("Probabilidades não podem ser negativas")
        if abs(probs.sum() - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"Probabilidades devem somar 1 (soma={probs.sum():.8f})")
        if abs(self.confidence - probs.max()) > PROBABILITY_TOLERANCE:
            raise ValueError("Confiança deve ser igual a max(probs)")

    @property
    def category(self) -> int:
        """Categoria de maior probabilidade (primeira em caso de empate)."""
        return int(np.argmax(self.probs))

    @property
    def num_classes(self) -> int:
        """Número de entradas do vetor de probabilidades."""
        return len(self.probs)

    @classmethod
    def from_probs(cls, box: Box3D, probs: Sequence[float] | np.ndarray) -> "Detection":
        """Cria detecção derivando a confiança do vetor de probabilidades."""
        values = tuple(float(p) for p in probs)
        return cls(box=box, probs=values, confidence=max(values))

    def to_dict(self) -> dict[str, Any]:
        """Serializa para registro JSON (sem domínio)."""
        record: dict[str, Any] = self.box.to_dict()
        record["probs"] = list(self.probs)
        return record


def detection_from_logits(logits: Sequence[float] | np.ndarray, box: Box3D) -> Detection:
    """
    Constrói uma detecção a partir de logits de classe.

    Args:
        logits: Vetor de K logits finitos
        box: Caixa válida

    Returns:
        Detecção com probs = softmax(logits) e confiança = max(probs)

    Raises:
        ValueError: Se logits não finitos
    """
    values = np.asarray(logits, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("Logits devem formar um vetor não vazio")
    if not np.all(np.isfinite(values)):
        raise ValueError("Logits devem ser finitos")
    return Detection.from_probs(box, softmax(values))
