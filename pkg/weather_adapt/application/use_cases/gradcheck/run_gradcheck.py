"""Caso de uso para a suíte de verificação de gradientes."""
import logging
from typing import Optional, Sequence

import numpy as np

from weather_adapt.application.dto.gradcheck_dto import GradCheckEntryDTO, GradCheckReportDTO
from weather_adapt.application.use_cases.gradcheck.check_catalog import GradCheckCase, default_cases
from weather_adapt.domain.exceptions.domain_exceptions import DomainException

logger = logging.getLogger(__name__)


class RunGradCheckUseCase:
    """
    Caso de uso para comparar adjuntos analíticos com diferenças centrais.

    Cada verificação roda sobre ``instances`` entradas aleatórias com um
    fluxo derivado de (semente, índice da verificação); o relatório
    guarda o pior erro e a tolerância aplicada.
    """

    def __init__(self, cases: Optional[Sequence[GradCheckCase]] = None):
        """
        Inicializa caso de uso.

        Args:
            cases: Verificações (padrão: suíte completa)
        """
        self._cases = list(cases) if cases is not None else default_cases()

    def execute(self, instances: int = 50, seed: int = 42) -> GradCheckReportDTO:
        """
        Executa todas as verificações.

        Args:
            instances: Instâncias aleatórias por verificação
            seed: Semente global

        Returns:
            Relatório com erro máximo por verificação

        Raises:
            ValueError: Se instances < 1
        """
        if instances < 1:
            raise ValueError(f"Número de instâncias deve ser >= 1: {instances}")
        logger.info(f"Verificando gradientes: {len(self._cases)} verificações x {instances} instâncias")

        report = GradCheckReportDTO()
        for index, case in enumerate(self._cases):
            rng = np.random.default_rng([seed, index])
            worst = 0.0
            error = ""
            try:
                for _ in range(instances):
                    worst = max(worst, case.measure(rng))
            except (DomainException, ValueError) as e:
                error = str(e)
            entry = GradCheckEntryDTO(
                name=case.name,
                tolerance=case.tolerance,
                max_error=worst,
                instances=instances,
                error=error,
            )
            report.entries.append(entry)
            if entry.passed:
                logger.debug(f"{case.name}: erro máximo {worst:.3e} (tolerância {case.tolerance:.0e})")
            else:
                logger.error(
                    f"{case.name}: REPROVADO, erro máximo {worst:.3e} "
                    f"(tolerância {case.tolerance:.0e}) {error}"
                )

        logger.info(f"Verificação de gradientes concluída: {len(report.failures)} reprovações")
        return report
