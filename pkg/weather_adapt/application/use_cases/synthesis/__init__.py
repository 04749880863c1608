"""Casos de uso de síntese de clima."""
from weather_adapt.application.use_cases.synthesis.synthesize_weather import (
    SynthesizeWeatherUseCase,
)

__all__ = ["SynthesizeWeatherUseCase"]
