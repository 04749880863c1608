"""Value Objects para parâmetros de síntese climática."""
import math
from dataclasses import asdict, dataclass
from typing import Any, Union


@dataclass(frozen=True)
class HazeParams:
    """
    Parâmetros de neblina (lei de Koschmieder).

    Attributes:
        beta: Coeficiente de atenuação (> 0), adimensional após normalizar a profundidade
        A: Luz atmosférica por canal RGB, cada valor em [0, 1]
    """

    beta: float
    A: tuple[float, float, float]

    def __post_init__(self) -> None:
        """Valida parâmetros."""
        object.__setattr__(self, "A", tuple(float(a) for a in self.A))
        if not math.isfinite(self.beta) or self.beta <= 0.0:
            raise ValueError(f"beta deve ser positivo e finito: {self.beta}")
        if len(self.A) != 3:
            raise ValueError("Luz atmosférica deve ter 3 canais")
        if any(not 0.0 <= a <= 1.0 for a in self.A):
            raise ValueError(f"Luz atmosférica deve estar em [0, 1]: {self.A}")

    def to_dict(self) -> dict[str, Any]:
        """Serializa para sidecar JSON."""
        return {"kind": "haze", "beta": self.beta, "A": list(self.A)}


@dataclass(frozen=True)
class RainParams:
    """
    Parâmetros de chuva (ruído → borrão direcional → mistura).

    Attributes:
        rho: Fração de pixels semeados, em [0, 1)
        L: Comprimento do rastro em pixels (>= 1)
        theta: Ângulo do rastro em graus, medido a partir da vertical
        k: Tamanho do kernel de borrão (ímpar, >= 3)
        alpha: Razão de mistura em [0, 1]
    """

    rho: float
    L: float
    theta: float
    k: int
    alpha: float

    def __post_init__(self) -> None:
        """Valida parâmetros."""
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho deve estar em [0, 1): {self.rho}")
        if not math.isfinite(self.L) or self.L < 1.0:
            raise ValueError(f"L deve ser >= 1: {self.L}")
        if not math.isfinite(self.theta):
            raise ValueError("theta deve ser finito")
        if self.k < 3 or self.k % 2 == 0:
            raise ValueError(f"k deve ser ímpar e >= 3: {self.k}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha deve estar em [0, 1]: {self.alpha}")

    @property
    def effective_length(self) -> float:
        """Comprimento do rastro recortado ao kernel: min(L, k)."""
        return min(self.L, float(self.k))

    def to_dict(self) -> dict[str, Any]:
        """Serializa para sidecar JSON."""
        return {"kind": "rain", **asdict(self)}


@dataclass(frozen=True)
class NightParams:
    """
    Parâmetros da transformação paramétrica de baixa luminosidade.

    Attributes:
        gamma: Expoente (>= 1)
        gain: Ganho em (0, 1]
        blue_shift: Viés aditivo por canal RGB
    """

    gamma: float
    gain: float
    blue_shift: tuple[float, float, float] = (0.0, 0.0, 0.03)

    def __post_init__(self) -> None:
        """Valida parâmetros."""
        object.__setattr__(self, "blue_shift", tuple(float(b) for b in self.blue_shift))
        if not math.isfinite(self.gamma) or self.gamma < 1.0:
            raise ValueError(f"gamma deve ser >= 1: {self.gamma}")
        if not 0.0 < self.gain <= 1.0:
            raise ValueError(f"gain deve estar em (0, 1]: {self.gain}")
        if len(self.blue_shift) != 3 or not all(math.isfinite(b) for b in self.blue_shift):
            raise ValueError("blue_shift deve ter 3 canais finitos")

    def to_dict(self) -> dict[str, Any]:
        """Serializa para sidecar JSON."""
        return {
            "kind": "night",
            "gamma": self.gamma,
            "gain": self.gain,
            "blue_shift": list(self.blue_shift),
        }


WeatherParams = Union[HazeParams, RainParams, NightParams]
