"""Caso de uso para estudos de ablação no experimento sintético."""
import logging
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from weather_adapt.application.dto.ablation_dto import (
    AblationReportDTO,
    AblationRowDTO,
    AblationStudyDTO,
    ComponentOrdering,
)
from weather_adapt.application.interfaces.services.artifact_writer import ArtifactWriter
from weather_adapt.application.interfaces.services.report_service import ReportService
from weather_adapt.application.use_cases.training.toy_experiment import (
    ExperimentOutcome,
    ToyExperiment,
)
from weather_adapt.domain.entities.run_manifest import RunManifest
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.value_objects.domain_tag import DomainTag

logger = logging.getLogger(__name__)

COMPONENT_STUDY = "componentes"
TARGET_DOMAIN_STUDY = "dominios_alvo"
MIN_MARGIN_POINTS = 5.0

ExperimentRunner = Callable[[TrainingConfiguration], ExperimentOutcome]


@dataclass(frozen=True)
class StudyPlan:
    """Estudo: nome, configurações (rótulo, sobrescritas) e se usa todas as sementes."""

    name: str
    settings: tuple[tuple[str, dict[str, Any]], ...]
    all_seeds: bool = False


STUDIES: tuple[StudyPlan, ...] = (
    StudyPlan(
        COMPONENT_STUDY,
        (
            ("base", {"self_training": False, "qddm": False}),
            ("+auto-treino", {"self_training": True, "qddm": False}),
            ("+QDDM", {"self_training": False, "qddm": True}),
            ("+ambos", {"self_training": True, "qddm": True}),
        ),
        all_seeds=True,
    ),
    StudyPlan(
        "alpha_ema",
        tuple((f"alpha={a}", {"fixed_alpha": a}) for a in (0.9, 0.99, 0.999)),
    ),
    StudyPlan("beta", tuple((f"beta={b}", {"beta": b}) for b in (0.5, 0.7, 0.9))),
    StudyPlan(
        "lambda_dom", tuple((f"lambda_dom={v}", {"lambda_dom": v}) for v in (0.0, 0.05, 0.1, 0.2))
    ),
    StudyPlan(
        "lambda_con", tuple((f"lambda_con={v}", {"lambda_con": v}) for v in (0.0, 0.05, 0.1, 0.2))
    ),
    StudyPlan(
        TARGET_DOMAIN_STUDY,
        (
            *(
                (str(tag), {"target_domains": (tag,), "evaluate_all_targets": True})
                for tag in DomainTag.targets()
            ),
            ("unificado", {"target_domains": DomainTag.targets(), "evaluate_all_targets": True}),
        ),
    ),
)


def component_ordering(
    rows: Sequence[AblationRowDTO], min_margin_points: float = MIN_MARGIN_POINTS
) -> ComponentOrdering:
    """
    Verifica base < individuais <= ambos com margem mínima em pontos de mAP.

    Args:
        rows: Linhas base, +auto-treino, +QDDM e +ambos, nesta ordem

    Raises:
        ValueError: Se não houver exatamente quatro linhas
    """
    if len(rows) != 4:
        raise ValueError(f"Grade de componentes exige 4 linhas, recebido {len(rows)}")
    base, self_training, qddm, both = (row.median_target_map for row in rows)
    margin = (both - base) * 100.0
    return ComponentOrdering(
        self_training_improves=self_training > base,
        qddm_improves=qddm > base,
        both_at_least_singles=both >= max(self_training, qddm),
        margin=margin,
        margin_ok=margin >= min_margin_points,
    )


def _run_experiment(config: TrainingConfiguration) -> ExperimentOutcome:
    return ToyExperiment(config).run()


class RunAblationUseCase:
    """
    Caso de uso para a grade de componentes e as varreduras de hiperparâmetros.

    A grade de componentes roda todas as sementes e reporta a mediana do
    mAP alvo; as varreduras rodam a semente base com ambos os componentes.
    O estudo de domínios alvo treina em cada condição isolada e nas três
    juntas, sempre validando nas três.
    """

    def __init__(
        self,
        report_service: ReportService,
        artifact_writer: ArtifactWriter,
        runner: Optional[ExperimentRunner] = None,
    ):
        """
        Inicializa caso de uso.

        Args:
            report_service: Exportação da planilha
            artifact_writer: JSON e manifesto
            runner: Executor de experimentos (padrão: ToyExperiment)
        """
        self._report_service = report_service
        self._artifact_writer = artifact_writer
        self._runner = runner or _run_experiment

    def execute(
        self,
        config: TrainingConfiguration,
        output_dir: Path,
        seeds: int = 5,
        studies: Optional[Sequence[str]] = None,
    ) -> AblationReportDTO:
        """
        Executa os estudos e grava ablation.json e ablation.xlsx.

        Args:
            config: Configuração base
            output_dir: Diretório de saída
            seeds: Sementes da grade de componentes (config.seed, config.seed+1, ...)
            studies: Nomes dos estudos (todos se None)

        Raises:
            ValueError: Se seeds < 1 ou estudo desconhecido
        """
        if seeds < 1:
            raise ValueError(f"Número de sementes deve ser >= 1: {seeds}")
        known = {plan.name: plan for plan in STUDIES}
        selected = list(studies) if studies is not None else list(known)
        unknown = [name for name in selected if name not in known]
        if unknown:
            raise ValueError(f"Estudos desconhecidos: {unknown}")

        started = time.perf_counter()
        output_dir.mkdir(parents=True, exist_ok=True)
        results: list[AblationStudyDTO] = []
        for name in selected:
            plan = known[name]
            seed_list = [config.seed + i for i in range(seeds)] if plan.all_seeds else [config.seed]
            base = config if plan.all_seeds else config.with_overrides(self_training=True, qddm=True)
            rows = [
                self._run_setting(base, label, overrides, seed_list)
                for label, overrides in plan.settings
            ]
            results.append(AblationStudyDTO(name=name, rows=rows))

        ordering = None
        for study in results:
            if study.name == COMPONENT_STUDY:
                ordering = component_ordering(study.rows)
                logger.info(f"Ordenação da grade de componentes: {ordering.to_dict()}")

        report = AblationReportDTO(studies=results, ordering=ordering)
        json_path = output_dir / "ablation.json"
        xlsx_path = output_dir / "ablation.xlsx"
        self._artifact_writer.write_json(json_path, report.to_dict())
        self._report_service.export_ablation(xlsx_path, report)

        manifest = RunManifest(
            command="ablate",
            config={**config.snapshot(), "seeds": seeds, "studies": selected},
            seed=config.seed,
            outputs={"out": str(output_dir)},
        )
        manifest.artifacts[json_path.name] = self._artifact_writer.digest(json_path)
        manifest.wall_clock_seconds = time.perf_counter() - started
        self._artifact_writer.write_manifest(manifest, output_dir)
        return report

    def _run_setting(
        self,
        base: TrainingConfiguration,
        label: str,
        overrides: dict[str, Any],
        seeds: Sequence[int],
    ) -> AblationRowDTO:
        target_maps: list[float] = []
        per_domain: dict[str, list[float]] = {}
        for seed in seeds:
            outcome = self._runner(base.with_overrides(seed=seed, **overrides))
            target_maps.append(outcome.target_map)
            for domain, result in outcome.evaluations.items():
                per_domain.setdefault(domain, []).append(result.mean_ap)
            logger.info(f"Ablação '{label}' semente {seed}: mAP alvo={outcome.target_map:.4f}")
        return AblationRowDTO(
            setting=label,
            overrides=overrides,
            seeds=list(seeds),
            target_maps=target_maps,
            median_target_map=float(statistics.median(target_maps)),
            domain_maps={d: float(statistics.median(v)) for d, v in per_domain.items()},
        )
