"""Cronogramas de rampa dos pesos, aquecimento do EMA e taxa de aprendizado."""
import math
from dataclasses import dataclass
from typing import Optional

from weather_adapt.domain.value_objects.lr_schedule import LrSchedule


@dataclass(frozen=True)
class ScheduleValues:
    """Valores agendados para uma iteração."""

    lambda_dom: float
    lambda_con: float
    alpha: float


def ramp(t: float, total: int, ramp_fraction: float = 0.2) -> float:
    """
    Progresso linear min(1, t / (fração·T)).

    Raises:
        ValueError: Se T <= 0 ou t fora de [0, T]
    """
    if total <= 0:
        raise ValueError(f"Total de iterações deve ser positivo: {total}")
    if not 0.0 <= t <= total:
        raise ValueError(f"Iteração {t} fora de [0, {total}]")
    if not 0.0 < ramp_fraction <= 1.0:
        raise ValueError(f"Fração de rampa deve estar em (0, 1]: {ramp_fraction}")
    return min(1.0, t / (ramp_fraction * total))


def schedules(
    t: float,
    total: int,
    lambda_dom_max: float = 0.1,
    lambda_con_max: float = 0.1,
    alpha_start: float = 0.95,
    alpha_end: float = 0.99,
    ramp_fraction: float = 0.2,
    fixed_alpha: Optional[float] = None,
) -> ScheduleValues:
    """
    Pesos λ em rampa de 0 ao máximo e α de alpha_start a alpha_end na mesma janela.

    Example:
        >>> schedules(0, 100)
        ScheduleValues(lambda_dom=0.0, lambda_con=0.0, alpha=0.95)
    """
    progress = ramp(t, total, ramp_fraction)
    if fixed_alpha is not None:
        alpha = fixed_alpha
    else:
        alpha = (1.0 - progress) * alpha_start + progress * alpha_end
    return ScheduleValues(
        lambda_dom=lambda_dom_max * progress,
        lambda_con=lambda_con_max * progress,
        alpha=alpha,
    )


def learning_rate_at(
    t: int, total: int, base_rate: float, schedule: LrSchedule = LrSchedule.CONSTANT
) -> float:
    """Taxa de aprendizado constante ou com decaimento cosseno até zero em T."""
    if schedule is LrSchedule.COSINE:
        return base_rate * 0.5 * (1.0 + math.cos(math.pi * min(t, total) / total))
    return base_rate
