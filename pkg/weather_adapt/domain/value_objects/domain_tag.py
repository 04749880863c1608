"""Enum para domínio (condição) de um quadro."""
from enum import Enum


class DomainTag(str, Enum):
    """
    Domínio de origem de um quadro.

    Source é o domínio rotulado (dia claro); os demais são alvos sem
    rótulo (noite, chuva e neblina).
    """

    SOURCE = "source"
    TARGET_NIGHT = "night"
    TARGET_RAIN = "rain"
    TARGET_HAZE = "haze"

    def __str__(self) -> str:
        """Retorna a string do domínio."""
        return self.value

    @property
    def is_target(self) -> bool:
        """Indica se é um domínio alvo."""
        return self is not DomainTag.SOURCE

    @property
    def adversarial_label(self) -> int:
        """Rótulo binário do discriminador: 0 para source, 1 para qualquer alvo."""
        return 1 if self.is_target else 0

    @classmethod
    def targets(cls) -> tuple["DomainTag", ...]:
        """Retorna os domínios alvo em ordem fixa."""
        return (cls.TARGET_NIGHT, cls.TARGET_RAIN, cls.TARGET_HAZE)

    @classmethod
    def from_string(cls, value: str) -> "DomainTag":
        """
        Cria DomainTag a partir de string (case-insensitive).

        Args:
            value: "source", "night", "rain" ou "haze"

        Returns:
            DomainTag correspondente

        Raises:
            ValueError: Se string não corresponder a nenhum domínio
        """
        value_lower = value.strip().lower()
        for tag in cls:
            if tag.value == value_lower:
                return tag
        raise ValueError(f"Domínio inválido: {value}. Valores válidos: {[t.value for t in cls]}")
