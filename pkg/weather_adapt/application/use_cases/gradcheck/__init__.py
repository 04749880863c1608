"""Casos de uso de verificação de gradientes."""
from weather_adapt.application.use_cases.gradcheck.run_gradcheck import RunGradCheckUseCase

__all__ = ["RunGradCheckUseCase"]
