"""Value Object para polígonos convexos no plano do solo."""
from dataclasses import dataclass

import numpy as np

AREA_EPSILON = 1e-12


def shoelace_area(vertices: np.ndarray) -> float:
    """Área com sinal pela fórmula do laço (positiva para ordem anti-horária)."""
    if len(vertices) < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True, eq=False)
class BEVPolygon:
    """
    Polígono convexo anti-horário em metros (vista de cima).

    Attributes:
        vertices: Array (N, 2) com N >= 3 vértices em ordem anti-horária
    """

    vertices: np.ndarray

    def __post_init__(self) -> None:
        """Valida orientação e área."""
        vertices = np.array(self.vertices, dtype=np.float64)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or vertices.shape[0] < 3:
            raise ValueError(f"Polígono deve ter forma (N>=3, 2), recebido {vertices.shape}")
        if not np.all(np.isfinite(vertices)):
            raise ValueError("Vértices devem ser finitos")
        if shoelace_area(vertices) <= AREA_EPSILON:
            raise ValueError("Polígono deve ter área positiva e ordem anti-horária")
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @property
    def area(self) -> float:
        """Área em metros quadrados."""
        return shoelace_area(self.vertices)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Máscara booleana dos pontos (M, 2) dentro ou na borda do polígono."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        inside = np.ones(len(pts), dtype=bool)
        for start, end in zip(self.vertices, np.roll(self.vertices, -1, axis=0)):
            edge = end - start
            rel = pts - start
            inside &= edge[0] * rel[:, 1] - edge[1] * rel[:, 0] >= -AREA_EPSILON
        return inside
