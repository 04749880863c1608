"""Caso de uso para avaliar arquivos de predições contra rótulos."""
import logging
from pathlib import Path
from typing import Optional

from weather_adapt.application.dto.converters import (
    LABEL_KIND,
    PREDICTION_KIND,
    record_to_detection,
    record_to_labeled_box,
)
from weather_adapt.application.interfaces.repositories.detection_record_repository import (
    DetectionRecordRepository,
)
from weather_adapt.application.interfaces.services.artifact_writer import ArtifactWriter
from weather_adapt.domain.entities.eval_result import EvalResult
from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.services.detection_metrics import evaluate
from weather_adapt.domain.value_objects.detection import Detection

logger = logging.getLogger(__name__)

DEFAULT_NUM_CLASSES = 3


class EvaluatePredictionsUseCase:
    """
    Caso de uso para métricas por distância de centro a partir de arquivos.

    Os registros são agrupados pelo campo ``frame``; K vem do tamanho do
    vetor one-hot dos rótulos.
    """

    def __init__(
        self, record_repository: DetectionRecordRepository, artifact_writer: ArtifactWriter
    ):
        """
        Inicializa caso de uso.

        Args:
            record_repository: Leitura dos arquivos JSON lines
            artifact_writer: Escrita do resultado
        """
        self._record_repository = record_repository
        self._artifact_writer = artifact_writer

    def execute(
        self,
        predictions_path: Path,
        labels_path: Path,
        output_path: Optional[Path] = None,
        num_classes: Optional[int] = None,
    ) -> EvalResult:
        """
        Avalia predições.

        Args:
            predictions_path: Arquivo de predições
            labels_path: Arquivo de rótulos
            output_path: Destino do JSON de resultado (opcional)
            num_classes: K explícito (inferido dos rótulos se None)

        Returns:
            Resultado da avaliação

        Raises:
            SchemaMismatchException: Se algum arquivo tiver o tipo de registro errado
        """
        logger.info(f"Avaliando {predictions_path} contra {labels_path}")
        prediction_records = self._record_repository.read(predictions_path, PREDICTION_KIND)
        label_records = self._record_repository.read(labels_path, LABEL_KIND)

        if num_classes is None:
            num_classes = max((len(r["probs"]) for r in label_records), default=DEFAULT_NUM_CLASSES)

        predictions: dict[str, list[Detection]] = {}
        for record in prediction_records:
            predictions.setdefault(str(record["frame"]), []).append(record_to_detection(record))
        labels: dict[str, list[LabeledBox]] = {}
        for record in label_records:
            labels.setdefault(str(record["frame"]), []).append(record_to_labeled_box(record))

        frame_ids = sorted(set(predictions) | set(labels))
        frames = [(predictions.get(f, []), labels.get(f, [])) for f in frame_ids]
        result = evaluate(frames, num_classes)
        logger.info(
            f"Avaliação concluída: {len(frame_ids)} quadros, mAP={result.mean_ap:.4f}, "
            f"mATE={result.mean_translation_error:.4f}"
        )
        if output_path is not None:
            self._artifact_writer.write_json(output_path, result.to_dict())
        return result
