"""Escrita de métricas e features em CSV."""
import csv
import logging
from pathlib import Path
from typing import Any, Sequence

from weather_adapt.application.interfaces.services.tabular_writer import TabularWriter
from weather_adapt.domain.services.detection_metrics import FeatureRow

logger = logging.getLogger(__name__)

FEATURE_PREFIX = "f_"
FEATURE_HEADER = ["domain", "predicted_class", "confidence"]


class CsvTabularWriter(TabularWriter):
    """Arquivos CSV com cabeçalho; floats em repr (ida e volta exata)."""

    def write_metrics(self, path: Path, rows: Sequence[dict[str, Any]]) -> None:
        """Escreve uma linha por iteração."""
        path.parent.mkdir(parents=True, exist_ok=True)
        columns = list(rows[0].keys()) if rows else []
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=columns)
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _format(value) for key, value in row.items()})
        logger.info(f"Métricas escritas: '{path}' ({len(rows)} linhas)")

    def write_features(self, path: Path, rows: Sequence[FeatureRow]) -> None:
        """Escreve features de consultas."""
        path.parent.mkdir(parents=True, exist_ok=True)
        dim = len(rows[0].features) if rows else 0
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(FEATURE_HEADER + [f"{FEATURE_PREFIX}{i}" for i in range(dim)])
            for row in rows:
                if len(row.features) != dim:
                    raise ValueError(f"Linhas de features com dimensões diferentes: {len(row.features)} != {dim}")
                writer.writerow(
                    [row.domain, row.predicted_class, repr(row.confidence)]
                    + [repr(value) for value in row.features]
                )
        logger.info(f"Features escritas: '{path}' ({len(rows)} consultas, dimensão {dim})")

    def read_features(self, path: Path) -> list[FeatureRow]:
        """Lê features exportadas."""
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or header[:3] != FEATURE_HEADER:
                raise ValueError(f"Cabeçalho de features inválido em '{path}'")
            return [
                FeatureRow(
                    domain=record[0],
                    predicted_class=int(record[1]),
                    confidence=float(record[2]),
                    features=tuple(float(value) for value in record[3:]),
                )
                for record in reader
                if record
            ]


def _format(value: Any) -> Any:
    return repr(value) if isinstance(value, float) else value
