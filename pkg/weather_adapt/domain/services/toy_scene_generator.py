"""Gerador determinístico de cenas sintéticas multi-domínio."""
import math
from dataclasses import dataclass

import numpy as np

from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.entities.toy_scene import DESCRIPTOR_CHANNELS, ToyScene
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.domain_tag import DomainTag

# Cauda longa: carro, pedestre, ciclista
CATEGORY_FREQUENCIES = (0.70, 0.25, 0.05)
CATEGORY_SIZES = ((1.9, 1.6, 4.5), (0.7, 1.8, 0.8), (0.8, 1.7, 1.8))  # (w, h, l)
MAX_OBJECTS = 5
POSITION_JITTER = 1.0
SIZE_JITTER = 0.1

_DOMAIN_INDEX = {tag: i for i, tag in enumerate(DomainTag)}


@dataclass(frozen=True)
class Corruption:
    """Intensidades da corrupção do descritor por domínio."""

    source_noise: float = 0.05
    night_offset: float = 0.6
    night_noise: float = 0.25
    haze_attenuation: float = 0.6
    haze_airlight: float = 0.8
    rain_spike_rate: float = 0.15
    rain_spike_value: float = 1.5

    @classmethod
    def from_config(cls, config: TrainingConfiguration) -> "Corruption":
        """Extrai as intensidades da configuração."""
        return cls(
            source_noise=config.source_noise,
            night_offset=config.night_offset,
            night_noise=config.night_noise,
            haze_attenuation=config.haze_attenuation,
            haze_airlight=config.haze_airlight,
            rain_spike_rate=config.rain_spike_rate,
            rain_spike_value=config.rain_spike_value,
        )


def cell_centers(grid_size: int, cell_size: float) -> np.ndarray:
    """Centros (x, y) das células; célula q = i·G + j, i ao longo de x."""
    index = np.arange(grid_size)
    ii, jj = np.meshgrid(index, index, indexing="ij")
    return np.stack([(ii.ravel() + 0.5) * cell_size, (jj.ravel() + 0.5) * cell_size], axis=1)


def _sample_objects(
    rng: np.random.Generator, grid_size: int, cell_size: float
) -> tuple[list[LabeledBox], np.ndarray]:
    centers = cell_centers(grid_size, cell_size)
    clean = np.zeros((grid_size * grid_size, DESCRIPTOR_CHANNELS))
    cell_count = grid_size * grid_size
    count = int(rng.integers(1, min(MAX_OBJECTS, cell_count) + 1))
    cells = rng.choice(cell_count, size=count, replace=False)
    objects: list[LabeledBox] = []
    for cell in cells:
        category = int(rng.choice(len(CATEGORY_FREQUENCIES), p=CATEGORY_FREQUENCIES))
        scale = rng.uniform(1.0 - SIZE_JITTER, 1.0 + SIZE_JITTER, size=3)
        w, h, length = (float(v) for v in np.asarray(CATEGORY_SIZES[category]) * scale)
        dx, dy = (float(v) for v in rng.uniform(-POSITION_JITTER, POSITION_JITTER, size=2))
        yaw = float(rng.uniform(-math.pi, math.pi))
        box = Box3D(centers[cell, 0] + dx, centers[cell, 1] + dy, h / 2.0, w, h, length, yaw)
        objects.append(LabeledBox(box=box, category=category))
        clean[cell, category] = 1.0
        clean[cell, 3:] = (dx, dy, w, h, length, math.sin(box.yaw), math.cos(box.yaw))
    return objects, clean


def corrupt_descriptor(
    clean: np.ndarray, domain: DomainTag, rng: np.random.Generator, corruption: Corruption
) -> np.ndarray:
    """
    Aplica o deslocamento de estatísticas do domínio ao descritor limpo.

    Noite soma um deslocamento e ruído; neblina atenua em direção a uma
    luz constante; chuva substitui entradas esparsas por picos.
    """
    noisy = clean + rng.normal(0.0, corruption.source_noise, size=clean.shape)
    if domain is DomainTag.TARGET_NIGHT:
        return noisy + corruption.night_offset + rng.normal(0.0, corruption.night_noise, size=clean.shape)
    if domain is DomainTag.TARGET_HAZE:
        a = corruption.haze_attenuation
        return (1.0 - a) * noisy + a * corruption.haze_airlight
    if domain is DomainTag.TARGET_RAIN:
        spikes = rng.random(clean.shape) < corruption.rain_spike_rate
        return np.where(spikes, corruption.rain_spike_value, noisy)
    return noisy


def make_toy_dataset(
    n_scenes: int,
    domain: DomainTag,
    seed: int,
    config: TrainingConfiguration = TrainingConfiguration(),
    first_id: int = 0,
) -> list[ToyScene]:
    """
    Gera cenas com 1-5 objetos (no máximo um por célula) e descritor
    corrompido pelo domínio.

    A geometria depende de (semente, id da cena); a corrupção também do
    domínio. Mesmos ids em domínios diferentes compartilham a geometria.

    Args:
        n_scenes: Número de cenas (> 0)
        domain: Domínio das cenas
        seed: Semente global
        config: Grade e intensidades de corrupção
        first_id: Primeiro id de cena

    Returns:
        Lista de cenas

    Raises:
        ValueError: Se n_scenes <= 0
    """
    if n_scenes <= 0:
        raise ValueError(f"Número de cenas deve ser positivo: {n_scenes}")
    corruption = Corruption.from_config(config)
    scenes: list[ToyScene] = []
    for scene_id in range(first_id, first_id + n_scenes):
        geometry_rng = np.random.default_rng([seed, scene_id])
        objects, clean = _sample_objects(geometry_rng, config.grid_size, config.cell_size)
        corruption_rng = np.random.default_rng([seed, scene_id, _DOMAIN_INDEX[domain]])
        descriptor = corrupt_descriptor(clean, domain, corruption_rng, corruption)
        scenes.append(ToyScene(scene_id=scene_id, domain=domain, objects=tuple(objects), descriptor=descriptor))
    return scenes


def flip_scene(scene: ToyScene, grid_size: int, cell_size: float) -> ToyScene:
    """
    Espelha a cena no eixo y (y -> extensão - y, yaw -> -yaw).

    Permuta as células e inverte os canais dy e sin do descritor.
    """
    extent = grid_size * cell_size
    order = np.arange(grid_size * grid_size).reshape(grid_size, grid_size)[:, ::-1].ravel()
    descriptor = scene.descriptor[order].copy()
    descriptor[:, 4] *= -1.0
    descriptor[:, 8] *= -1.0
    objects = tuple(
        LabeledBox(
            box=Box3D(o.box.x, extent - o.box.y, o.box.z, o.box.w, o.box.h, o.box.l, -o.box.yaw),
            category=o.category,
            provenance=o.provenance,
        )
        for o in scene.objects
    )
    return ToyScene(scene_id=scene.scene_id, domain=scene.domain, objects=objects, descriptor=descriptor)
