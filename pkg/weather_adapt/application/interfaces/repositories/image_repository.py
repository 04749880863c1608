"""Interface do repositório de imagens e mapas de profundidade."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from weather_adapt.domain.value_objects.raster import DepthMap, ImageRGB


class ImageRepository(ABC):
    """
    Interface (Port) para leitura e escrita de imagens RGB.

    Define o contrato que a camada de infraestrutura deve implementar
    para o diretório de entrada da síntese.
    """

    @abstractmethod
    def list_images(self, directory: Path) -> list[Path]:
        """
        Lista imagens de um diretório em ordem determinística.

        Args:
            directory: Diretório de entrada

        Returns:
            Caminhos ordenados por nome
        """
        pass

    @abstractmethod
    def load(self, path: Path) -> ImageRGB:
        """
        Carrega imagem normalizada para [0, 1].

        Raises:
            FileNotFoundError: Se arquivo não existe
        """
        pass

    @abstractmethod
    def save(self, image: ImageRGB, path: Path) -> None:
        """
        Salva imagem como PNG de 8 bits.

        Args:
            image: Imagem a salvar
            path: Caminho de destino
        """
        pass


class DepthRepository(ABC):
    """Interface (Port) para mapas de profundidade pareados com imagens."""

    @abstractmethod
    def find_for(self, directory: Path, image_stem: str) -> Optional[DepthMap]:
        """
        Busca o mapa de profundidade de uma imagem.

        Args:
            directory: Diretório de profundidades
            image_stem: Nome da imagem sem extensão

        Returns:
            Mapa encontrado ou None
        """
        pass

    @abstractmethod
    def save(self, depth: DepthMap, path: Path) -> None:
        """Salva mapa de profundidade."""
        pass
