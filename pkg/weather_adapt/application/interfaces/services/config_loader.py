"""Interface do carregador de configuração."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Mapping, Optional

from weather_adapt.domain.entities.training_configuration import TrainingConfiguration


class ConfigLoader(ABC):
    """Interface (Port) para arquivos de configuração ``chave = valor``."""

    @abstractmethod
    def load(
        self, path: Optional[Path], overrides: Optional[Mapping[str, str]] = None
    ) -> TrainingConfiguration:
        """
        Carrega configuração aplicando sobrescritas (sobrescritas vencem).

        Args:
            path: Arquivo de configuração (None usa apenas os padrões)
            overrides: Pares chave -> valor textual

        Raises:
            InvalidConfigKeyException: Se chave desconhecida
            ValueError: Se valor inválido
        """
        pass
