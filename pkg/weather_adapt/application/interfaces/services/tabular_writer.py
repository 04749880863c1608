"""Interface do escritor de tabelas CSV (métricas e features)."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Sequence

from weather_adapt.domain.services.detection_metrics import FeatureRow


class TabularWriter(ABC):
    """Interface (Port) para arquivos CSV com cabeçalho."""

    @abstractmethod
    def write_metrics(self, path: Path, rows: Sequence[dict[str, Any]]) -> None:
        """
        Escreve linhas de métricas por iteração.

        Args:
            path: Arquivo de destino
            rows: Linhas com as mesmas chaves (ordem das colunas da primeira)
        """
        pass

    @abstractmethod
    def write_features(self, path: Path, rows: Sequence[FeatureRow]) -> None:
        """Escreve features de consultas (domínio, classe, confiança, f_0..f_D-1)."""
        pass

    @abstractmethod
    def read_features(self, path: Path) -> list[FeatureRow]:
        """Lê features exportadas."""
        pass
