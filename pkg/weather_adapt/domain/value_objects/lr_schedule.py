"""Enum para política de taxa de aprendizado."""
from enum import Enum


class LrSchedule(str, Enum):
    """Política da taxa de aprendizado ao longo das iterações."""

    CONSTANT = "constant"
    COSINE = "cosine"

    def __str__(self) -> str:
        """Retorna a string da política."""
        return self.value

    @classmethod
    def from_string(cls, value: str) -> "LrSchedule":
        """
        Cria LrSchedule a partir de string (case-insensitive).

        Raises:
            ValueError: Se string não corresponder a nenhuma política
        """
        value_lower = value.strip().lower()
        for schedule in cls:
            if schedule.value == value_lower:
                return schedule
        raise ValueError(
            f"Política de taxa inválida: {value}. Valores válidos: {[s.value for s in cls]}"
        )
