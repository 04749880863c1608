"""Implementação do Report Service usando openpyxl."""
import logging
from pathlib import Path
from typing import Any

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet

from weather_adapt.application.dto.ablation_dto import AblationReportDTO, AblationStudyDTO
from weather_adapt.application.interfaces.services.report_service import ReportService

logger = logging.getLogger(__name__)

HEADER_COLOR = "366092"
MAX_COLUMN_WIDTH = 50


class OpenpyxlReportService(ReportService):
    """
    Implementação do serviço de relatório usando openpyxl.

    Responsabilidades:
    - Uma aba por estudo com configuração, sementes e mAP por domínio
    - Aba "ordenacao" com a verificação da grade de componentes
    - Cabeçalho formatado, largura automática e bordas
    """

    def export_ablation(self, filepath: Path, report: AblationReportDTO) -> None:
        """
        Exporta estudos de ablação para arquivo Excel.

        Args:
            filepath: Caminho do arquivo .xlsx a criar
            report: Estudos e resultados
        """
        logger.info(f"Iniciando exportação de {len(report.studies)} estudos para Excel: '{filepath}'")
        try:
            workbook = Workbook()
            workbook.remove(workbook.active)
            for study in report.studies:
                self._write_study(workbook.create_sheet(title=study.name[:31]), study)
            if report.ordering is not None:
                sheet = workbook.create_sheet(title="ordenacao")
                rows = [[key, value] for key, value in report.ordering.to_dict().items()]
                self._write_table(sheet, ["Verificação", "Valor"], rows)
            if not workbook.sheetnames:
                workbook.create_sheet(title="vazio")
            workbook.save(filepath)
            logger.info(f"Exportação concluída com sucesso: '{filepath}'")
        except Exception as e:
            logger.error(f"Erro ao exportar ablação para Excel '{filepath}': {e}", exc_info=True)
            raise

    def _write_study(self, sheet: Worksheet, study: AblationStudyDTO) -> None:
        domains = sorted({d for row in study.rows for d in row.domain_maps})
        header = ["Configuração", "Sementes", "mAP alvo (mediana)", "mAP alvo por semente"]
        header.extend(f"mAP {d}" for d in domains)
        rows: list[list[Any]] = []
        for row in study.rows:
            values: list[Any] = [
                row.setting,
                ", ".join(str(s) for s in row.seeds),
                round(row.median_target_map, 6),
                ", ".join(f"{v:.4f}" for v in row.target_maps),
            ]
            values.extend(round(row.domain_maps.get(d, 0.0), 6) for d in domains)
            rows.append(values)
        self._write_table(sheet, header, rows)

    def _write_table(self, sheet: Worksheet, header: list[str], rows: list[list[Any]]) -> None:
        for col_num, column_name in enumerate(header, start=1):
            cell = sheet.cell(row=1, column=col_num)
            cell.value = column_name
            cell.fill = PatternFill(start_color=HEADER_COLOR, end_color=HEADER_COLOR, fill_type="solid")
            cell.font = Font(color="FFFFFF", bold=True)
            cell.alignment = Alignment(horizontal="center", vertical="center")

        for row_num, values in enumerate(rows, start=2):
            for col_num, value in enumerate(values, start=1):
                sheet.cell(row=row_num, column=col_num).value = value

        for col_num in range(1, len(header) + 1):
            column_letter = get_column_letter(col_num)
            max_length = max((len(str(c.value)) for c in sheet[column_letter] if c.value is not None), default=0)
            sheet.column_dimensions[column_letter].width = min(max_length + 2, MAX_COLUMN_WIDTH)

        thin_border = Border(
            left=Side(style="thin"), right=Side(style="thin"), top=Side(style="thin"), bottom=Side(style="thin")
        )
        for sheet_row in sheet.iter_rows(min_row=1, max_row=len(rows) + 1, max_col=len(header)):
            for cell in sheet_row:
                cell.border = thin_border
