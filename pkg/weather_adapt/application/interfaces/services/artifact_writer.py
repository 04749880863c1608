"""Interface do escritor de artefatos JSON e manifestos."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Mapping

from weather_adapt.domain.entities.run_manifest import RunManifest


class ArtifactWriter(ABC):
    """Interface (Port) para escrita atômica de JSON e hash de artefatos."""

    @abstractmethod
    def write_json(self, path: Path, payload: Mapping[str, Any]) -> None:
        """Escreve JSON com chaves ordenadas de forma atômica."""
        pass

    @abstractmethod
    def digest(self, path: Path) -> str:
        """
        Calcula sha256 do arquivo.

        Raises:
            FileNotFoundError: Se arquivo não existe
        """
        pass

    @abstractmethod
    def write_manifest(self, manifest: RunManifest, directory: Path) -> Path:
        """
        Escreve ``manifest.json`` no diretório.

        Returns:
            Caminho do manifesto
        """
        pass
