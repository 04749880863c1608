"""Registros de detecção em JSON lines."""
import json
import logging
from pathlib import Path
from typing import Any, Sequence

from weather_adapt.application.interfaces.repositories.detection_record_repository import (
    DetectionRecordRepository,
)
from weather_adapt.domain.exceptions.domain_exceptions import SchemaMismatchException

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ("kind", "frame", "x", "y", "z", "w", "h", "l", "yaw", "probs")


class JsonlRecordRepository(DetectionRecordRepository):
    """Um objeto JSON por linha; linhas vazias são ignoradas."""

    def read(self, path: Path, expected_kind: str) -> list[dict[str, Any]]:
        """Lê e valida registros."""
        records: list[dict[str, Any]] = []
        with path.open(encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                source = f"{path}:{line_number}"
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as e:
                    raise SchemaMismatchException(source, "objeto JSON", f"JSON inválido ({e.msg})") from e
                if not isinstance(record, dict):
                    raise SchemaMismatchException(source, "objeto JSON", type(record).__name__)
                kind = record.get("kind")
                if kind != expected_kind:
                    raise SchemaMismatchException(source, expected_kind, str(kind))
                missing = [name for name in REQUIRED_FIELDS if name not in record]
                if missing:
                    raise SchemaMismatchException(source, ", ".join(REQUIRED_FIELDS), f"faltando {missing}")
                records.append(record)
        logger.info(f"Lidos {len(records)} registros '{expected_kind}' de '{path}'")
        return records

    def write(self, path: Path, records: Sequence[dict[str, Any]]) -> None:
        """Escreve registros com chaves ordenadas."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as handle:
            for record in records:
                handle.write(json.dumps(record, sort_keys=True))
                handle.write("\n")
        logger.info(f"Escritos {len(records)} registros em '{path}'")
