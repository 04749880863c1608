"""DTOs para o relatório de verificação de gradientes."""
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class GradCheckEntryDTO:
    """
    Resultado de uma verificação.

    Attributes:
        name: Nome da primitiva ou composição
        tolerance: Tolerância aplicada
        max_error: Maior erro relativo entre as instâncias
        instances: Instâncias avaliadas
        error: Mensagem quando a verificação não pôde ser concluída
    """

    name: str
    tolerance: float
    max_error: float
    instances: int
    error: str = ""

    @property
    def passed(self) -> bool:
        """Indica se passou na tolerância."""
        return not self.error and self.max_error <= self.tolerance


@dataclass
class GradCheckReportDTO:
    """Relatório completo da suíte."""

    entries: list[GradCheckEntryDTO] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Indica se todas as verificações passaram."""
        return all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> list[str]:
        """Nomes das verificações reprovadas."""
        return [entry.name for entry in self.entries if not entry.passed]

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": e.name,
                    "tolerance": e.tolerance,
                    "max_error": e.max_error,
                    "instances": e.instances,
                    "passed": e.passed,
                    "error": e.error,
                }
                for e in self.entries
            ],
        }
