"""Casos de uso de avaliação."""
from weather_adapt.application.use_cases.evaluation.evaluate_predictions import (
    EvaluatePredictionsUseCase,
)

__all__ = ["EvaluatePredictionsUseCase"]
