"""Value Object para caixas 3D orientadas."""
import math
from dataclasses import dataclass
from typing import Any, Final

TWO_PI: Final[float] = 2.0 * math.pi


def normalize_yaw(angle: float) -> float:
    """
    Normaliza um ângulo para o intervalo semiaberto [-π, π).

    Args:
        angle: Ângulo em radianos

    Returns:
        Ângulo equivalente (mod 2π) em [-π, π)

    Raises:
        ValueError: Se o ângulo não for finito

    Example:
        >>> normalize_yaw(3 * math.pi)
        -3.141592653589793
    """
    if not math.isfinite(angle):
        raise ValueError(f"Ângulo não finito: {angle}")
    if -math.pi <= angle < math.pi:
        return angle
    wrapped = math.fmod(angle + math.pi, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    result = wrapped - math.pi
    # fmod pode devolver exatamente 2π após a soma em ponto flutuante
    if result >= math.pi:
        result -= TWO_PI
    return result


@dataclass(frozen=True)
class Box3D:
    """
    Caixa 3D orientada (centro, dimensões e yaw).

    A caixa ocupa z ± h/2 na vertical; no plano do solo a pegada é um
    retângulo w×l rotacionado por yaw em torno de (x, y). O eixo l é
    alinhado à direção de yaw.

    Attributes:
        x, y, z: Centro em metros
        w, h, l: Largura, altura e comprimento em metros (> 0)
        yaw: Orientação em radianos, normalizada para [-π, π)
    """

    x: float
    y: float
    z: float
    w: float
    h: float
    l: float  # noqa: E741
    yaw: float = 0.0

    def __post_init__(self) -> None:
        """Valida e normaliza campos."""
        self._validate()
        object.__setattr__(self, "yaw", normalize_yaw(float(self.yaw)))

    def _validate(self) -> None:
        """
        Valida invariantes da caixa.

        Raises:
            ValueError: Se algum campo não for finito ou dimensão não positiva
        """
        for name in ("x", "y", "z", "w", "h", "l", "yaw"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"Campo '{name}' da caixa não é finito: {value}")
        for name in ("w", "h", "l"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"Dimensão '{name}' da caixa deve ser positiva")

    @property
    def volume(self) -> float:
        """Volume da caixa em metros cúbicos."""
        return self.w * self.h * self.l

    @property
    def bottom(self) -> float:
        """Cota inferior da caixa."""
        return self.z - self.h / 2.0

    @property
    def top(self) -> float:
        """Cota superior da caixa."""
        return self.z + self.h / 2.0

    def translated(self, dx: float, dy: float, dz: float = 0.0) -> "Box3D":
        """Retorna cópia transladada."""
        return Box3D(self.x + dx, self.y + dy, self.z + dz, self.w, self.h, self.l, self.yaw)

    def rotated_about_origin(self, angle: float) -> "Box3D":
        """Retorna cópia rotacionada em torno do eixo z que passa pela origem."""
        c, s = math.cos(angle), math.sin(angle)
        return Box3D(
            c * self.x - s * self.y,
            s * self.x + c * self.y,
            self.z,
            self.w,
            self.h,
            self.l,
            self.yaw + angle,
        )

    def to_dict(self) -> dict[str, float]:
        """Serializa a caixa para dicionário JSON."""
        return {
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "w": self.w,
            "h": self.h,
            "l": self.l,
            "yaw": self.yaw,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Box3D":
        """
        Cria caixa a partir de dicionário.

        Args:
            data: Dicionário com chaves x, y, z, w, h, l, yaw

        Returns:
            Box3D correspondente

        Raises:
            KeyError: Se faltar algum campo
            ValueError: Se valores inválidos
        """
        return cls(
            x=float(data["x"]),
            y=float(data["y"]),
            z=float(data["z"]),
            w=float(data["w"]),
            h=float(data["h"]),
            l=float(data["l"]),
            yaw=float(data["yaw"]),
        )
