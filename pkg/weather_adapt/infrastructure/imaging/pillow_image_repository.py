"""Repositórios de imagens e profundidades usando Pillow."""
import logging
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image

from weather_adapt.application.interfaces.repositories.image_repository import (
    DepthRepository,
    ImageRepository,
)
from weather_adapt.domain.value_objects.raster import DepthMap, ImageRGB

logger = logging.getLogger(__name__)

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")
RAW_DEPTH_MAGIC = "WADEPTH"
RAW_DEPTH_SUFFIX = ".depth"


class PillowImageRepository(ImageRepository):
    """Imagens RGB de 8 bits linearizadas para [0, 1]."""

    def list_images(self, directory: Path) -> list[Path]:
        """Lista PNG/JPEG do diretório ordenados por nome."""
        if not directory.is_dir():
            raise FileNotFoundError(f"Diretório de entrada não encontrado: '{directory}'")
        return sorted(p for p in directory.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)

    def load(self, path: Path) -> ImageRGB:
        """Carrega imagem convertendo para RGB."""
        with Image.open(path) as image:
            data = np.asarray(image.convert("RGB"), dtype=np.float64) / 255.0
        return ImageRGB(data)

    def save(self, image: ImageRGB, path: Path) -> None:
        """Salva como PNG de 8 bits (arredondamento ao inteiro mais próximo)."""
        path.parent.mkdir(parents=True, exist_ok=True)
        pixels = np.round(image.data * 255.0).astype(np.uint8)
        Image.fromarray(pixels, mode="RGB").save(path, format="PNG")
        logger.debug(f"Imagem salva: '{path}' ({image.height}x{image.width})")


def read_raw_depth(path: Path) -> DepthMap:
    """
    Lê plano float32 little-endian com cabeçalho textual ``WADEPTH h w``.

    Raises:
        ValueError: Se cabeçalho inválido ou tamanho divergente
    """
    payload = path.read_bytes()
    header, sep, body = payload.partition(b"\n")
    parts = header.decode("ascii", errors="replace").split()
    if not sep or len(parts) != 3 or parts[0] != RAW_DEPTH_MAGIC:
        raise ValueError(f"Cabeçalho de profundidade inválido em '{path}'")
    height, width = int(parts[1]), int(parts[2])
    values = np.frombuffer(body, dtype="<f4")
    if values.size != height * width:
        raise ValueError(f"Profundidade '{path}' com {values.size} valores, esperado {height * width}")
    return DepthMap(values.reshape(height, width).astype(np.float64))


def write_raw_depth(depth: DepthMap, path: Path) -> None:
    """Escreve profundidade no formato bruto float32."""
    height, width = depth.data.shape
    header = f"{RAW_DEPTH_MAGIC} {height} {width}\n".encode("ascii")
    path.write_bytes(header + depth.data.astype("<f4").tobytes())


class PillowDepthRepository(DepthRepository):
    """
    Profundidades em PNG de 16 bits em tons de cinza ou plano float32 bruto.

    Para a imagem ``nome.png`` procura ``nome.png`` e depois ``nome.depth``
    no diretório de profundidades.
    """

    def find_for(self, directory: Path, image_stem: str) -> Optional[DepthMap]:
        """Busca a profundidade pareada; None quando ausente."""
        png = directory / f"{image_stem}.png"
        if png.is_file():
            with Image.open(png) as image:
                data = np.asarray(image, dtype=np.float64)
            if data.ndim != 2:
                raise ValueError(f"Profundidade PNG deve ter um canal: '{png}'")
            return DepthMap(data)
        raw = directory / f"{image_stem}{RAW_DEPTH_SUFFIX}"
        if raw.is_file():
            return read_raw_depth(raw)
        logger.debug(f"Profundidade não encontrada para '{image_stem}' em '{directory}'")
        return None

    def save(self, depth: DepthMap, path: Path) -> None:
        """Salva em PNG de 16 bits (valores arredondados) ou bruto, conforme a extensão."""
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.suffix.lower() == ".png":
            values = np.clip(np.round(depth.data), 0, np.iinfo(np.uint16).max).astype(np.uint16)
            Image.fromarray(values).save(path, format="PNG")
        else:
            write_raw_depth(depth, path)
