"""Serviço de síntese de neblina, chuva e baixa luminosidade."""
import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from weather_adapt.domain.exceptions.domain_exceptions import MissingDepthMapException
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.domain.value_objects.raster import DepthMap, ImageRGB
from weather_adapt.domain.value_objects.weather_params import (
    HazeParams,
    NightParams,
    RainParams,
    WeatherParams,
)

logger = logging.getLogger(__name__)

HAZE_BETA_RANGE = (0.6, 1.4)
HAZE_LIGHT_RANGE = (0.7, 1.0)
RAIN_RHO_RANGE = (0.02, 0.06)
RAIN_LENGTH_RANGE = (7.0, 15.0)
RAIN_ANGLE_RANGE = (-15.0, 15.0)
RAIN_KERNEL_SIZES = (7, 9, 11)
RAIN_ALPHA_RANGE = (0.15, 0.35)
NIGHT_GAMMA_RANGE = (1.8, 2.6)
NIGHT_GAIN_RANGE = (0.25, 0.45)


def image_rng(seed: int, index: int) -> np.random.Generator:
    """Fluxo aleatório próprio de uma amostra, derivado de (semente, índice)."""
    return np.random.default_rng([seed, index])


def transmission_from_depth(depth: DepthMap, beta: float) -> np.ndarray:
    """
    Transmissão t = exp(-β·d̂), com d̂ a profundidade normalizada min-max.

    Profundidade constante resulta em d̂ ≡ 0 e t ≡ 1.

    Args:
        depth: Mapa de profundidade
        beta: Coeficiente de atenuação (> 0)

    Returns:
        Mapa (H, W) com valores em (0, 1]

    Raises:
        ValueError: Se beta não positivo
    """
    if not math.isfinite(beta) or beta <= 0.0:
        raise ValueError(f"beta deve ser positivo: {beta}")
    data = depth.data
    low, high = float(data.min()), float(data.max())
    if high - low <= 0.0:
        normalized = np.zeros_like(data)
    else:
        normalized = (data - low) / (high - low)
    return np.exp(-beta * normalized)


def apply_haze(image: ImageRGB, transmission: np.ndarray, light: Sequence[float]) -> ImageRGB:
    """
    Modelo de espalhamento atmosférico H = J·t + A·(1 - t).

    Args:
        image: Imagem limpa J
        transmission: Mapa t (H, W)
        light: Luz atmosférica A por canal

    Returns:
        Imagem com neblina, recortada para [0, 1]

    Raises:
        ValueError: Se dimensões divergirem
    """
    t = np.asarray(transmission, dtype=np.float64)
    if t.ndim != 2 or not image.same_size(t):
        raise ValueError(
            f"Transmissão {t.shape} incompatível com imagem {(image.height, image.width)}"
        )
    a = np.asarray(light, dtype=np.float64).reshape(1, 1, 3)
    t3 = t[:, :, None]
    return ImageRGB(image.data * t3 + a * (1.0 - t3))


def streak_kernel(length: float, angle_degrees: float, size: int) -> np.ndarray:
    """
    Kernel de borrão direcional normalizado.

    Linha de comprimento min(length, size) passando pelo centro, com
    ângulo medido a partir da vertical.

    Raises:
        ValueError: Se size par ou menor que 3
    """
    if size < 3 or size % 2 == 0:
        raise ValueError(f"Tamanho do kernel deve ser ímpar e >= 3: {size}")
    effective = min(length, float(size))
    theta = math.radians(angle_degrees)
    direction = np.array([math.cos(theta), math.sin(theta)])  # (linha, coluna)
    center = size // 2
    rows, cols = np.mgrid[0:size, 0:size]
    rel_r, rel_c = rows - center, cols - center
    along = rel_r * direction[0] + rel_c * direction[1]
    across = -rel_r * direction[1] + rel_c * direction[0]
    kernel = ((np.abs(across) <= 0.5) & (np.abs(along) <= effective / 2.0)).astype(np.float64)
    return kernel / kernel.sum()


def synth_rain(image: ImageRGB, params: RainParams, rng: np.random.Generator) -> ImageRGB:
    """
    Chuva sintética: semeadura de ruído, borrão direcional e mistura.

    Uma fração rho dos pixels de uma camada monocromática recebe 1; a
    camada é borrada pelo kernel direcional e misturada como
    I' = (1 - α)·I + α·rastros, replicada nos três canais.

    Args:
        image: Imagem limpa
        params: Parâmetros de chuva
        rng: Gerador com semente

    Returns:
        Imagem com chuva
    """
    height, width = image.height, image.width
    total = height * width
    count = int(round(params.rho * total))
    noise = np.zeros(total)
    if count > 0:
        noise[rng.choice(total, size=count, replace=False)] = 1.0
    noise = noise.reshape(height, width)

    kernel = streak_kernel(params.L, params.theta, params.k)
    streaks = ndimage.convolve(noise, kernel, mode="constant", cval=0.0)
    blended = (1.0 - params.alpha) * image.data + params.alpha * streaks[:, :, None]
    return ImageRGB(blended)


def apply_night(image: ImageRGB, params: NightParams) -> ImageRGB:
    """Baixa luminosidade paramétrica v' = clamp(ganho·v^γ + desvio_c)."""
    shift = np.asarray(params.blue_shift).reshape(1, 1, 3)
    return ImageRGB(params.gain * np.power(image.data, params.gamma) + shift)


def sample_weather_params(domain: DomainTag, rng: np.random.Generator) -> WeatherParams:
    """
    Sorteia parâmetros de síntese para um domínio alvo.

    A luz atmosférica da neblina é um único valor em HAZE_LIGHT_RANGE por
    imagem, repetido nos três canais (luz cinza); HazeParams aceita A
    por canal para quem quiser luz colorida.

    Raises:
        ValueError: Se o domínio for source
    """
    if domain is DomainTag.TARGET_HAZE:
        beta = float(rng.uniform(*HAZE_BETA_RANGE))
        gray = float(rng.uniform(*HAZE_LIGHT_RANGE))
        return HazeParams(beta=beta, A=(gray, gray, gray))
    if domain is DomainTag.TARGET_RAIN:
        return RainParams(
            rho=float(rng.uniform(*RAIN_RHO_RANGE)),
            L=float(rng.uniform(*RAIN_LENGTH_RANGE)),
            theta=float(rng.uniform(*RAIN_ANGLE_RANGE)),
            k=int(rng.choice(RAIN_KERNEL_SIZES)),
            alpha=float(rng.uniform(*RAIN_ALPHA_RANGE)),
        )
    if domain is DomainTag.TARGET_NIGHT:
        return NightParams(
            gamma=float(rng.uniform(*NIGHT_GAMMA_RANGE)),
            gain=float(rng.uniform(*NIGHT_GAIN_RANGE)),
        )
    raise ValueError("Domínio source não possui parâmetros de síntese")


class WeatherSynthesizer:
    """
    Aplica um único sorteio de parâmetros a todas as vistas de uma amostra.

    Example:
        >>> synthesizer = WeatherSynthesizer(DomainTag.TARGET_RAIN)
        >>> outputs, params = synthesizer.synthesize_sample([image], [None], rng)
    """

    def __init__(self, domain: DomainTag):
        """
        Inicializa sintetizador.

        Raises:
            ValueError: Se o domínio for source
        """
        if not domain.is_target:
            raise ValueError("Síntese exige domínio alvo (night, rain ou haze)")
        self._domain = domain

    @property
    def domain(self) -> DomainTag:
        """Domínio sintetizado."""
        return self._domain

    @property
    def requires_depth(self) -> bool:
        """Neblina exige mapa de profundidade pareado."""
        return self._domain is DomainTag.TARGET_HAZE

    def synthesize_sample(
        self,
        images: Sequence[ImageRGB],
        depths: Sequence[Optional[DepthMap]],
        rng: np.random.Generator,
        names: Optional[Sequence[str]] = None,
    ) -> tuple[list[ImageRGB], WeatherParams]:
        """
        Sintetiza todas as vistas de uma amostra.

        Args:
            images: Vistas da amostra
            depths: Profundidade por vista (None quando ausente)
            rng: Fluxo aleatório da amostra
            names: Nomes das vistas, para mensagens de erro

        Returns:
            (imagens sintetizadas, parâmetros sorteados)

        Raises:
            MissingDepthMapException: Se neblina sem profundidade
            ValueError: Se profundidade com dimensões diferentes da imagem
        """
        labels = list(names) if names is not None else [str(i) for i in range(len(images))]
        if self.requires_depth:
            for name, depth in zip(labels, depths):
                if depth is None:
                    raise MissingDepthMapException(name)

        params = sample_weather_params(self._domain, rng)
        outputs: list[ImageRGB] = []
        for name, image, depth in zip(labels, images, depths):
            if isinstance(params, HazeParams):
                assert depth is not None
                if not image.same_size(depth.data):
                    raise ValueError(f"Profundidade com dimensões diferentes da imagem: {name}")
                t = transmission_from_depth(depth, params.beta)
                outputs.append(apply_haze(image, t, params.A))
            elif isinstance(params, RainParams):
                outputs.append(synth_rain(image, params, rng))
            else:
                outputs.append(apply_night(image, params))
        logger.debug(f"Amostra sintetizada ({self._domain}): {len(outputs)} vistas, {params}")
        return outputs, params
