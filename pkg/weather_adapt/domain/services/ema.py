"""Atualização EMA dos parâmetros do teacher."""
from typing import Mapping

import numpy as np

from weather_adapt.domain.exceptions.domain_exceptions import ShapeMismatchException


def ema_update(
    teacher: Mapping[str, np.ndarray], student: Mapping[str, np.ndarray], alpha: float
) -> dict[str, np.ndarray]:
    """
    θ_teacher <- α·θ_teacher + (1 - α)·θ_student, elemento a elemento.

    Args:
        teacher: Parâmetros atuais do teacher
        student: Parâmetros atuais do student
        alpha: Coeficiente de suavização em [0, 1]

    Returns:
        Novos arrays do teacher (sem compartilhar memória com o student)

    Raises:
        ValueError: Se alpha fora de [0, 1] ou nomes divergentes
        ShapeMismatchException: Se formas divergirem

    Example:
        >>> ema_update({"w": np.array(1.0)}, {"w": np.array(0.0)}, 0.99)["w"]
        array(0.99)
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha deve estar em [0, 1]: {alpha}")
    if set(teacher) != set(student):
        raise ValueError("Teacher e student devem ter os mesmos parâmetros")

    updated: dict[str, np.ndarray] = {}
    for name, value in teacher.items():
        other = student[name]
        if value.shape != other.shape:
            raise ShapeMismatchException(f"ema[{name}]", (value.shape, other.shape))
        updated[name] = alpha * value + (1.0 - alpha) * other
    return updated
