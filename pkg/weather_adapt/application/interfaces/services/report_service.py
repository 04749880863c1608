"""Interface do serviço de relatório de ablações."""
from abc import ABC, abstractmethod
from pathlib import Path

from weather_adapt.application.dto.ablation_dto import AblationReportDTO


class ReportService(ABC):
    """
    Interface (Port) para exportação de estudos de ablação.

    Define o contrato para gerar uma planilha com uma aba por estudo.
    """

    @abstractmethod
    def export_ablation(self, filepath: Path, report: AblationReportDTO) -> None:
        """
        Exporta relatório de ablação.

        Args:
            filepath: Caminho do arquivo de destino
            report: Estudos e resultados

        Raises:
            PermissionError: Se sem permissão de escrita
        """
        pass
