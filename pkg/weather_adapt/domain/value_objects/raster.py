"""Value Objects para imagens RGB e mapas de profundidade."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ImageRGB:
    """
    Imagem RGB com canais reais em [0, 1].

    Attributes:
        data: Array (altura, largura, 3) float64, recortado para [0, 1]
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        """Valida dimensões e recorta valores."""
        array = np.asarray(self.data, dtype=np.float64)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"Imagem deve ter forma (H, W, 3), recebido {array.shape}")
        if array.shape[0] == 0 or array.shape[1] == 0:
            raise ValueError("Dimensões da imagem devem ser positivas")
        if not np.all(np.isfinite(array)):
            raise ValueError("Imagem contém valores não finitos")
        clipped = np.clip(array, 0.0, 1.0)
        clipped.setflags(write=False)
        object.__setattr__(self, "data", clipped)

    @property
    def height(self) -> int:
        """Altura em pixels."""
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        """Largura em pixels."""
        return int(self.data.shape[1])

    def same_size(self, other: "ImageRGB | DepthMap | np.ndarray") -> bool:
        """Verifica se outra grade tem a mesma altura e largura."""
        shape = other.shape if isinstance(other, np.ndarray) else (other.height, other.width)
        return (self.height, self.width) == tuple(shape[:2])


@dataclass(frozen=True, eq=False)
class DepthMap:
    """
    Mapa de profundidade não negativo em escala métrica arbitrária.

    Attributes:
        data: Array (altura, largura) float64, valores >= 0 e finitos
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        """Valida valores."""
        array = np.asarray(self.data, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
            raise ValueError(f"Profundidade deve ter forma (H, W) não vazia, recebido {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("Profundidade contém valores não finitos")
        if np.any(array < 0.0):
            raise ValueError("Profundidade não pode ser negativa")
        array = array.copy()
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @property
    def height(self) -> int:
        """Altura em pixels."""
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        """Largura em pixels."""
        return int(self.data.shape[1])
