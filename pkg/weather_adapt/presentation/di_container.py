"""
Container de Injeção de Dependências.

Centraliza a criação dos adaptadores e casos de uso da linha de comando.
"""
from weather_adapt.application.use_cases.evaluation import EvaluatePredictionsUseCase
from weather_adapt.application.use_cases.gradcheck import RunGradCheckUseCase
from weather_adapt.application.use_cases.synthesis import SynthesizeWeatherUseCase
from weather_adapt.application.use_cases.training import RunAblationUseCase, TrainDetectorUseCase
from weather_adapt.infrastructure.checkpoints.binary_checkpoint_repository import (
    BinaryCheckpointRepository,
)
from weather_adapt.infrastructure.config.file_config_loader import FileConfigLoader
from weather_adapt.infrastructure.excel.openpyxl_report_service import OpenpyxlReportService
from weather_adapt.infrastructure.imaging.pillow_image_repository import (
    PillowDepthRepository,
    PillowImageRepository,
)
from weather_adapt.infrastructure.manifest.json_artifact_writer import JsonArtifactWriter
from weather_adapt.infrastructure.metrics.csv_tabular_writer import CsvTabularWriter
from weather_adapt.infrastructure.records.jsonl_record_repository import JsonlRecordRepository


class DIContainer:
    """Container de injeção de dependências."""

    def __init__(self) -> None:
        """Inicializa o container."""
        self._create_repositories()
        self._create_services()
        self._create_use_cases()

    def _create_repositories(self) -> None:
        """Cria repositories."""
        self.image_repository = PillowImageRepository()
        self.depth_repository = PillowDepthRepository()
        self.checkpoint_repository = BinaryCheckpointRepository()
        self.record_repository = JsonlRecordRepository()

    def _create_services(self) -> None:
        """Cria serviços de arquivo."""
        self.config_loader = FileConfigLoader()
        self.tabular_writer = CsvTabularWriter()
        self.report_service = OpenpyxlReportService()
        self.artifact_writer = JsonArtifactWriter()

    def _create_use_cases(self) -> None:
        """Cria use cases."""
        self.synthesize_weather_use_case = SynthesizeWeatherUseCase(
            self.image_repository, self.depth_repository, self.artifact_writer
        )
        self.train_detector_use_case = TrainDetectorUseCase(
            self.checkpoint_repository,
            self.tabular_writer,
            self.record_repository,
            self.artifact_writer,
        )
        self.run_ablation_use_case = RunAblationUseCase(self.report_service, self.artifact_writer)
        self.evaluate_predictions_use_case = EvaluatePredictionsUseCase(
            self.record_repository, self.artifact_writer
        )
        self.run_gradcheck_use_case = RunGradCheckUseCase()
