"""Entidade ClassCenters (centros de classe por lote)."""
from dataclasses import dataclass, field

import numpy as np

from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.value_objects.domain_tag import DomainTag


@dataclass(frozen=True, eq=False)
class ClassCenters:
    """
    Centros de classe de um domínio em um lote.

    Cada centro é a média das features L2-normalizadas das consultas
    confiantes da categoria; o centro não é renormalizado.

    Attributes:
        centers: Categoria -> nó (1, D) no grafo de gradiente
        counts: Categoria -> número de consultas confiantes n_k
        domain: Domínio de origem
        zero_norm_excluded: Consultas descartadas por feature de norma zero
    """

    centers: dict[int, Node]
    counts: dict[int, int]
    domain: DomainTag
    zero_norm_excluded: int = 0
    feature_dim: int = field(default=0)

    def __post_init__(self) -> None:
        """Valida correspondência entre centros e contagens."""
        if set(self.centers) != {k for k, n in self.counts.items() if n > 0}:
            raise ValueError("Centro deve existir se e somente se n_k > 0")
        if any(n < 0 for n in self.counts.values()):
            raise ValueError("Contagens devem ser não negativas")
        for k, center in self.centers.items():
            if center.shape[:1] != (1,) or len(center.shape) != 2:
                raise ValueError(f"Centro da categoria {k} deve ter forma (1, D)")
        if self.centers and not self.feature_dim:
            first = next(iter(self.centers.values()))
            object.__setattr__(self, "feature_dim", int(first.shape[1]))

    @property
    def categories(self) -> list[int]:
        """Categorias presentes em ordem crescente."""
        return sorted(self.centers)

    @property
    def is_empty(self) -> bool:
        """Indica ausência de centros."""
        return not self.centers

    def center_value(self, category: int) -> np.ndarray:
        """Valor do centro (D,) fora do grafo."""
        return self.centers[category].value.reshape(-1).copy()

    @classmethod
    def empty(cls, domain: DomainTag, zero_norm_excluded: int = 0) -> "ClassCenters":
        """Cria conjunto vazio de centros."""
        return cls(centers={}, counts={}, domain=domain, zero_norm_excluded=zero_norm_excluded)
