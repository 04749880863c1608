"""Experimento sintético multi-domínio (dados, laço de treino e avaliação)."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from weather_adapt.domain.entities.eval_result import EvalResult
from weather_adapt.domain.entities.query_batch import QueryBatch
from weather_adapt.domain.entities.toy_scene import ToyScene
from weather_adapt.domain.entities.trainer_state import TrainerState
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.services.detection_metrics import evaluate
from weather_adapt.domain.services.non_max_suppression import nms
from weather_adapt.domain.services.self_trainer import (
    SelfTrainer,
    StepMetrics,
    initialize_state,
    sample_batch,
)
from weather_adapt.domain.services.toy_scene_generator import make_toy_dataset
from weather_adapt.domain.value_objects.detection import Detection
from weather_adapt.domain.value_objects.domain_tag import DomainTag

logger = logging.getLogger(__name__)

StepCallback = Callable[[StepMetrics], None]


@dataclass(frozen=True)
class ToyDatasets:
    """
    Cenas de treino e validação.

    Treino source, treino alvo e validação usam faixas de ids disjuntas;
    a validação compartilha a geometria entre domínios.
    """

    source: list[ToyScene]
    targets: dict[DomainTag, list[ToyScene]]
    validation: dict[DomainTag, list[ToyScene]]


def build_datasets(config: TrainingConfiguration) -> ToyDatasets:
    """Gera todas as cenas do experimento a partir da semente."""
    seed = config.seed
    source = make_toy_dataset(config.source_scenes, DomainTag.SOURCE, seed, config)
    target_offset = config.source_scenes
    targets = {
        domain: make_toy_dataset(config.target_scenes, domain, seed, config, first_id=target_offset)
        for domain in config.target_domains
    }
    val_offset = config.source_scenes + config.target_scenes
    evaluated = DomainTag.targets() if config.evaluate_all_targets else config.target_domains
    validation = {
        domain: make_toy_dataset(config.val_scenes, domain, seed, config, first_id=val_offset)
        for domain in (DomainTag.SOURCE, *evaluated)
    }
    return ToyDatasets(source=source, targets=targets, validation=validation)


@dataclass
class DomainPredictions:
    """Saídas do modelo avaliado em um domínio."""

    scenes: list[ToyScene]
    batches: list[QueryBatch]
    detections: list[list[Detection]]


@dataclass
class ExperimentOutcome:
    """
    Resultado de um experimento.

    Attributes:
        state: Estado final do treino
        metrics: Métricas por iteração
        evaluations: Domínio -> avaliação final
        predictions: Domínio -> saídas do modelo avaliado
    """

    state: TrainerState
    metrics: list[StepMetrics]
    evaluations: dict[str, EvalResult]
    predictions: dict[DomainTag, DomainPredictions] = field(default_factory=dict)

    @property
    def target_map(self) -> float:
        """Média do mAP sobre os domínios alvo avaliados."""
        values = [r.mean_ap for d, r in self.evaluations.items() if d != str(DomainTag.SOURCE)]
        return float(np.mean(values)) if values else 0.0


class ToyExperiment:
    """
    Treina e avalia o detector de brinquedo sob uma configuração.

    O modelo avaliado é o teacher quando há auto-treino e o student
    caso contrário; as detecções passam pelo NMS antes das métricas.
    """

    def __init__(self, config: TrainingConfiguration):
        """Inicializa experimento e gera as cenas."""
        self._config = config
        self._trainer = SelfTrainer(config)
        self._datasets = build_datasets(config)

    @property
    def datasets(self) -> ToyDatasets:
        """Cenas do experimento."""
        return self._datasets

    def initial_state(self) -> TrainerState:
        """Estado inicial derivado da semente."""
        return initialize_state(self._config)

    def run(
        self, state: Optional[TrainerState] = None, on_step: Optional[StepCallback] = None
    ) -> ExperimentOutcome:
        """
        Executa todas as iterações restantes e avalia.

        Args:
            state: Estado a continuar (novo estado se None)
            on_step: Chamado com as métricas de cada iteração

        Raises:
            NonFiniteLossException: Se a perda total não for finita
        """
        state = state if state is not None else self.initial_state()
        logger.info(
            f"Treino: {state.total_iterations} iterações, auto-treino={self._config.self_training}, "
            f"qddm={self._config.qddm}, alvos={[str(d) for d in self._config.target_domains]}"
        )
        metrics: list[StepMetrics] = []
        while not state.finished:
            batch = sample_batch(state, self._datasets.source, self._datasets.targets)
            step = self._trainer.train_step(state, batch)
            metrics.append(step)
            if on_step is not None:
                on_step(step)

        evaluations, predictions = self.evaluate(state)
        return ExperimentOutcome(
            state=state, metrics=metrics, evaluations=evaluations, predictions=predictions
        )

    def evaluate(
        self, state: TrainerState
    ) -> tuple[dict[str, EvalResult], dict[DomainTag, DomainPredictions]]:
        """Avalia o modelo final nas cenas de validação de cada domínio."""
        parameters = self._trainer.evaluation_parameters(state)
        evaluations: dict[str, EvalResult] = {}
        predictions: dict[DomainTag, DomainPredictions] = {}
        for domain, scenes in self._datasets.validation.items():
            batches = self._trainer.predict(parameters, scenes)
            detections = [nms(b.detections(), self._config.nms_threshold) for b in batches]
            frames = [(dets, scene.objects) for dets, scene in zip(detections, scenes)]
            result = evaluate(frames, self._config.num_classes)
            evaluations[str(domain)] = result
            predictions[domain] = DomainPredictions(scenes=scenes, batches=batches, detections=detections)
            logger.info(
                f"Avaliação '{domain}': mAP={result.mean_ap:.4f} mATE={result.mean_translation_error:.4f} "
                f"({result.num_predictions} predições, {result.num_ground_truths} objetos)"
            )
        return evaluations, predictions
