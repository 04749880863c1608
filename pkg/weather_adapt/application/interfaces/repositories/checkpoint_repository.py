"""Interface do repositório de checkpoints."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Mapping

import numpy as np


class CheckpointRepository(ABC):
    """
    Interface (Port) para persistência de tensores nomeados.

    O formato concreto é um contêiner binário little-endian com índice
    JSON; a ordem dos tensores segue a ordem das chaves.
    """

    @abstractmethod
    def save(self, path: Path, arrays: Mapping[str, np.ndarray], metadata: Mapping[str, Any]) -> None:
        """
        Salva tensores e metadados.

        Args:
            path: Caminho de destino
            arrays: Nome -> tensor (posto <= 2)
            metadata: Dados adicionais serializáveis em JSON
        """
        pass

    @abstractmethod
    def load(self, path: Path) -> tuple[dict[str, np.ndarray], dict[str, Any]]:
        """
        Carrega tensores e metadados.

        Raises:
            FileNotFoundError: Se arquivo não existe
            ValueError: Se o arquivo não for um checkpoint válido
        """
        pass
