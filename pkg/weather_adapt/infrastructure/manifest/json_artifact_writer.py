"""Escrita atômica de JSON e manifestos."""
import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping

from weather_adapt.application.interfaces.services.artifact_writer import ArtifactWriter
from weather_adapt.domain.entities.run_manifest import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
_CHUNK = 1 << 16


class JsonArtifactWriter(ArtifactWriter):
    """Escreve em arquivo temporário no mesmo diretório e renomeia."""

    def write_json(self, path: Path, payload: Mapping[str, Any]) -> None:
        """Escreve JSON indentado com chaves ordenadas."""
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(payload, sort_keys=True, indent=2, default=str)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
                handle.write("\n")
            os.replace(tmp_name, path)
        except Exception as e:
            logger.error(f"Erro ao escrever '{path}': {e}", exc_info=True)
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise

    def digest(self, path: Path) -> str:
        """sha256 hexadecimal do conteúdo."""
        sha = hashlib.sha256()
        with path.open("rb") as handle:
            for chunk in iter(lambda: handle.read(_CHUNK), b""):
                sha.update(chunk)
        return sha.hexdigest()

    def write_manifest(self, manifest: RunManifest, directory: Path) -> Path:
        """Escreve ``manifest.json``."""
        path = directory / MANIFEST_NAME
        self.write_json(path, manifest.to_dict())
        logger.info(f"Manifesto '{manifest.command}' escrito em '{path}'")
        return path
