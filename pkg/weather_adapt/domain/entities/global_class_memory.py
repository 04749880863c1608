"""Entidade GlobalClassMemory (protótipos globais por categoria)."""
from dataclasses import dataclass
from typing import Mapping

import numpy as np


@dataclass(frozen=True, eq=False)
class GlobalClassMemory:
    """
    Protótipo global e contagem acumulada por categoria.

    Os protótipos ficam fora do grafo de gradiente; são atualizados
    apenas pela regra explícita de média ponderada por contagem.

    Attributes:
        num_classes: Número de categorias K
        feature_dim: Dimensão D
        prototypes: Matriz (K, D); linhas com S_k = 0 são indefinidas (zeros)
        counts: Vetor (K,) de contagens acumuladas S_k
    """

    num_classes: int
    feature_dim: int
    prototypes: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        """Valida formas e contagens."""
        prototypes = np.array(self.prototypes, dtype=np.float64)
        counts = np.array(self.counts, dtype=np.int64)
        if prototypes.shape != (self.num_classes, self.feature_dim):
            raise ValueError(
                f"Protótipos devem ter forma ({self.num_classes}, {self.feature_dim}), "
                f"recebido {prototypes.shape}"
            )
        if counts.shape != (self.num_classes,):
            raise ValueError(f"Contagens devem ter forma ({self.num_classes},)")
        if np.any(counts < 0):
            raise ValueError("Contagens acumuladas não podem ser negativas")
        prototypes.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "prototypes", prototypes)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def empty(cls, num_classes: int, feature_dim: int) -> "GlobalClassMemory":
        """Cria memória sem observações."""
        return cls(
            num_classes=num_classes,
            feature_dim=feature_dim,
            prototypes=np.zeros((num_classes, feature_dim)),
            counts=np.zeros(num_classes, dtype=np.int64),
        )

    def has_prototype(self, category: int) -> bool:
        """Protótipo definido se e somente se S_k > 0."""
        return bool(self.counts[category] > 0)

    def prototype(self, category: int) -> np.ndarray:
        """
        Retorna cópia do protótipo de uma categoria.

        Raises:
            KeyError: Se a categoria ainda não foi observada
        """
        if not self.has_prototype(category):
            raise KeyError(f"Categoria {category} sem protótipo na memória")
        return self.prototypes[category].copy()

    def updated_with(
        self, centers: Mapping[int, np.ndarray], counts: Mapping[int, int]
    ) -> "GlobalClassMemory":
        """
        Nova memória após absorver centros de lote.

        Para cada categoria presente: peso w = n/(n+S),
        c <- (1 - w)·c + w·c_lote e S <- S + n.
        """
        prototypes = self.prototypes.copy()
        totals = self.counts.copy()
        for category, center in centers.items():
            n = int(counts[category])
            if n <= 0:
                continue
            weight = n / (n + int(totals[category]))
            batch_center = np.asarray(center, dtype=np.float64).reshape(-1)
            if weight == 1.0:
                prototypes[category] = batch_center
            else:
                prototypes[category] = (1.0 - weight) * prototypes[category] + weight * batch_center
            totals[category] += n
        return GlobalClassMemory(self.num_classes, self.feature_dim, prototypes, totals)
