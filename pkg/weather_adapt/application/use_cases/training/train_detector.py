"""Caso de uso para treinar o detector adaptativo de domínio."""
import logging
import time
from pathlib import Path
from typing import Any

from weather_adapt.application.dto.converters import detection_to_record, labeled_box_to_record
from weather_adapt.application.dto.training_dto import TrainingResultDTO
from weather_adapt.application.interfaces.repositories.checkpoint_repository import (
    CheckpointRepository,
)
from weather_adapt.application.interfaces.repositories.detection_record_repository import (
    DetectionRecordRepository,
)
from weather_adapt.application.interfaces.services.artifact_writer import ArtifactWriter
from weather_adapt.application.interfaces.services.tabular_writer import TabularWriter
from weather_adapt.application.use_cases.training.toy_experiment import (
    ExperimentOutcome,
    ToyExperiment,
)
from weather_adapt.domain.entities.run_manifest import RunManifest
from weather_adapt.domain.entities.trainer_state import TrainerState
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.exceptions.domain_exceptions import NonFiniteLossException
from weather_adapt.domain.services.detection_metrics import export_features
from weather_adapt.domain.services.self_trainer import StepMetrics

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50


def _select(arrays: dict[str, Any], *prefixes: str) -> dict[str, Any]:
    return {name: value for name, value in arrays.items() if name.startswith(prefixes)}


class TrainDetectorUseCase:
    """
    Caso de uso para o experimento teacher-student.

    Responsabilidades:
    - Executar o laço de treino sobre as cenas sintéticas
    - Gravar métricas por iteração (CSV) e checkpoints de student e teacher
    - Avaliar por domínio e exportar features e detecções de validação
    - Gravar o estado completo quando a perda deixa de ser finita
    """

    def __init__(
        self,
        checkpoint_repository: CheckpointRepository,
        tabular_writer: TabularWriter,
        record_repository: DetectionRecordRepository,
        artifact_writer: ArtifactWriter,
    ):
        """
        Inicializa caso de uso.

        Args:
            checkpoint_repository: Persistência de tensores
            tabular_writer: Métricas e features em CSV
            record_repository: Detecções e rótulos em JSON lines
            artifact_writer: Avaliação e manifesto
        """
        self._checkpoint_repository = checkpoint_repository
        self._tabular_writer = tabular_writer
        self._record_repository = record_repository
        self._artifact_writer = artifact_writer

    def execute(self, config: TrainingConfiguration, output_dir: Path) -> TrainingResultDTO:
        """
        Treina, avalia e grava os artefatos.

        Args:
            config: Configuração efetiva
            output_dir: Diretório de saída

        Returns:
            Avaliações por domínio e caminhos dos artefatos

        Raises:
            NonFiniteLossException: Se a perda divergir (estado gravado em state_dump.ckpt)
        """
        started = time.perf_counter()
        output_dir.mkdir(parents=True, exist_ok=True)
        experiment = ToyExperiment(config)
        state = experiment.initial_state()

        def report(step: StepMetrics) -> None:
            if step.iteration % PROGRESS_EVERY == 0:
                logger.info(
                    f"Iteração {step.iteration}/{state.total_iterations}: "
                    f"perda={step.loss_total:.4f} pseudo_rotulos={step.pseudo_labels}"
                )

        try:
            outcome = experiment.run(state, on_step=report)
        except NonFiniteLossException as e:
            dump = output_dir / "state_dump.ckpt"
            self._dump_state(state, dump, e)
            logger.error(f"Treino abortado na iteração {e.iteration}; estado gravado em {dump}")
            raise

        artifacts = self._write_artifacts(outcome, config, output_dir)
        result = TrainingResultDTO(
            evaluations=outcome.evaluations,
            target_map=outcome.target_map,
            iterations=len(outcome.metrics),
            final_metrics=outcome.metrics[-1].to_row(config.num_classes) if outcome.metrics else {},
            artifacts=artifacts,
        )
        self._artifact_writer.write_json(artifacts["eval"], result.summary())

        manifest = RunManifest(
            command="train",
            config=config.snapshot(),
            seed=config.seed,
            outputs={"out": str(output_dir)},
        )
        for path in artifacts.values():
            manifest.artifacts[path.name] = self._artifact_writer.digest(path)
        manifest.wall_clock_seconds = time.perf_counter() - started
        result.manifest_path = self._artifact_writer.write_manifest(manifest, output_dir)
        logger.info(f"Treino concluído: mAP alvo={result.target_map:.4f}")
        return result

    def _dump_state(self, state: TrainerState, path: Path, error: NonFiniteLossException) -> None:
        metadata = state.metadata()
        metadata["error"] = str(error)
        metadata["terms"] = {name: repr(value) for name, value in error.terms.items()}
        self._checkpoint_repository.save(path, state.named_arrays(), metadata)

    def _write_artifacts(
        self, outcome: ExperimentOutcome, config: TrainingConfiguration, output_dir: Path
    ) -> dict[str, Path]:
        state = outcome.state
        arrays = state.named_arrays()
        metadata = state.metadata()
        paths = {
            "metrics": output_dir / "metrics.csv",
            "student": output_dir / "student.ckpt",
            "teacher": output_dir / "teacher.ckpt",
            "features": output_dir / "features.csv",
            "predictions": output_dir / "predictions.jsonl",
            "labels": output_dir / "labels.jsonl",
            "eval": output_dir / "eval.json",
        }

        self._tabular_writer.write_metrics(
            paths["metrics"], [m.to_row(config.num_classes) for m in outcome.metrics]
        )
        student_arrays = _select(arrays, "student/", "discriminator/", "memory/", "state/")
        self._checkpoint_repository.save(paths["student"], student_arrays, metadata)
        self._checkpoint_repository.save(paths["teacher"], _select(arrays, "teacher/"), metadata)

        batches = [b for p in outcome.predictions.values() for b in p.batches]
        self._tabular_writer.write_features(paths["features"], export_features(batches))

        predictions: list[dict[str, Any]] = []
        labels: list[dict[str, Any]] = []
        for domain, domain_predictions in outcome.predictions.items():
            for scene, detections in zip(domain_predictions.scenes, domain_predictions.detections):
                frame = f"{domain}/{scene.scene_id}"
                predictions.extend(detection_to_record(d, frame, domain) for d in detections)
                labels.extend(
                    labeled_box_to_record(label, frame, domain, config.num_classes)
                    for label in scene.objects
                )
        self._record_repository.write(paths["predictions"], predictions)
        self._record_repository.write(paths["labels"], labels)
        return paths
