"""Casos de uso de treinamento e ablação."""
from weather_adapt.application.use_cases.training.run_ablation import RunAblationUseCase
from weather_adapt.application.use_cases.training.toy_experiment import ToyExperiment
from weather_adapt.application.use_cases.training.train_detector import TrainDetectorUseCase

__all__ = ["RunAblationUseCase", "ToyExperiment", "TrainDetectorUseCase"]
