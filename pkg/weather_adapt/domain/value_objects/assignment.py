"""Value Objects para matriz de custo e atribuição bipartida."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """
    Custos entre predições (linhas) e alvos (colunas).

    Attributes:
        values: Array (predições, alvos) de custos finitos
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        """Valida matriz."""
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError(f"Matriz de custo deve ser 2D, recebido {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Matriz de custo contém valores não finitos")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> tuple[int, int]:
        """(predições, alvos)."""
        return int(self.values.shape[0]), int(self.values.shape[1])

    @property
    def is_empty(self) -> bool:
        """Indica matriz sem linhas ou sem colunas."""
        return self.values.size == 0


@dataclass(frozen=True)
class Assignment:
    """
    Atribuição injetiva entre predições e alvos.

    Attributes:
        pairs: Pares (predição, alvo) ordenados por predição
        total_cost: Soma dos custos dos pares
    """

    pairs: tuple[tuple[int, int], ...]
    total_cost: float = 0.0

    def __post_init__(self) -> None:
        """Valida injetividade."""
        pairs = tuple(sorted((int(r), int(c)) for r, c in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        rows = [r for r, _ in pairs]
        cols = [c for _, c in pairs]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("Atribuição deve ser injetiva nas duas coordenadas")

    def __len__(self) -> int:
        return len(self.pairs)

    def target_of(self) -> dict[int, int]:
        """Predição -> alvo."""
        return dict(self.pairs)
