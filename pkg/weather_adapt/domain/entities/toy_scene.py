"""Entidade ToyScene (cena sintética multi-domínio)."""
from dataclasses import dataclass

import numpy as np

from weather_adapt.domain.entities.labeled_frame import LabeledBox, LabeledFrame
from weather_adapt.domain.value_objects.domain_tag import DomainTag

DESCRIPTOR_CHANNELS = 10


@dataclass(frozen=True, eq=False)
class ToyScene:
    """
    Cena sintética com descritor rasterizado em grade.

    O descritor tem uma linha por célula da grade e 10 canais:
    evidência das 3 categorias, deslocamento (dx, dy) do centro em
    relação à célula, dimensões (w, h, l) e (sin, cos) do yaw.

    Attributes:
        scene_id: Identificador da cena
        domain: Domínio da cena
        objects: Objetos verdadeiros
        descriptor: Matriz (células, 10) já corrompida pelo domínio
    """

    scene_id: int
    domain: DomainTag
    objects: tuple[LabeledBox, ...]
    descriptor: np.ndarray

    def __post_init__(self) -> None:
        """Valida descritor."""
        object.__setattr__(self, "objects", tuple(self.objects))
        descriptor = np.array(self.descriptor, dtype=np.float64)
        if descriptor.ndim != 2 or descriptor.shape[1] != DESCRIPTOR_CHANNELS:
            raise ValueError(f"Descritor deve ter forma (células, 10), recebido {descriptor.shape}")
        if not np.all(np.isfinite(descriptor)):
            raise ValueError("Descritor contém valores não finitos")
        descriptor.setflags(write=False)
        object.__setattr__(self, "descriptor", descriptor)

    @property
    def labels(self) -> tuple[LabeledBox, ...]:
        """Rótulos verdadeiros (disponíveis para avaliação em qualquer domínio)."""
        return self.objects

    def to_frame(self, num_classes: int = 3) -> LabeledFrame:
        """Converte a cena em quadro rotulado."""
        return LabeledFrame(
            reference=f"{self.domain}-{self.scene_id:06d}",
            domain=self.domain,
            labels=self.objects,
            num_classes=num_classes,
        )
