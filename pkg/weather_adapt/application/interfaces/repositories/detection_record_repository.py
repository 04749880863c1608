"""Interface do repositório de registros de detecção (JSON lines)."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Sequence


class DetectionRecordRepository(ABC):
    """Interface (Port) para arquivos de predições e rótulos."""

    @abstractmethod
    def read(self, path: Path, expected_kind: str) -> list[dict[str, Any]]:
        """
        Lê registros validando o campo de esquema ``kind``.

        Args:
            path: Arquivo JSON lines
            expected_kind: "prediction" ou "label"

        Returns:
            Registros na ordem do arquivo

        Raises:
            SchemaMismatchException: Se algum registro tiver outro tipo
        """
        pass

    @abstractmethod
    def write(self, path: Path, records: Sequence[dict[str, Any]]) -> None:
        """Escreve registros, um objeto JSON por linha."""
        pass
