"""Interface de linha de comando (argparse)."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, TextIO

from weather_adapt.application.use_cases.training.run_ablation import STUDIES
from weather_adapt.domain.exceptions.domain_exceptions import (
    DomainException,
    InvalidConfigKeyException,
    SchemaMismatchException,
)
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.presentation.di_container import DIContainer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
DEFAULT_SEED = 42
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def parse_overrides(items: Optional[Sequence[str]]) -> dict[str, str]:
    """
    Converte ``--set chave=valor`` em dicionário.

    Raises:
        ValueError: Se item sem ``=`` ou chave vazia
    """
    overrides: dict[str, str] = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"Sobrescrita inválida '{item}': use chave=valor")
        overrides[key.strip()] = value.strip()
    return overrides


def build_parser() -> argparse.ArgumentParser:
    """Cria parser com os subcomandos."""
    parser = argparse.ArgumentParser(
        prog="weather-adapt",
        description="Adaptação de detecção 3D para clima adverso (síntese, treino, avaliação).",
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None, help="Nível de log")
    subparsers = parser.add_subparsers(dest="command", required=True)

    synth = subparsers.add_parser("synth", help="Sintetiza imagens noturnas, chuvosas ou com névoa")
    synth.add_argument("--input", type=Path, required=True, help="Diretório de imagens claras")
    synth.add_argument("--depth", type=Path, default=None, help="Diretório de profundidades")
    synth.add_argument(
        "--domain", required=True, choices=[str(tag) for tag in DomainTag.targets()]
    )
    synth.add_argument("--out", type=Path, required=True, help="Diretório de saída")
    synth.add_argument("--seed", type=int, default=DEFAULT_SEED)
    synth.add_argument("--workers", type=int, default=1, help="Amostras em paralelo")

    train = subparsers.add_parser("train", help="Treino teacher-student no experimento de brinquedo")
    _add_config_arguments(train)

    ablate = subparsers.add_parser("ablate", help="Grade de componentes e varreduras de hiperparâmetros")
    _add_config_arguments(ablate)
    ablate.add_argument("--seeds", type=int, default=5, help="Sementes da grade de componentes")
    ablate.add_argument(
        "--studies", nargs="+", default=None, choices=[plan.name for plan in STUDIES]
    )

    evaluate = subparsers.add_parser("eval", help="Avalia predições contra rótulos")
    evaluate.add_argument("--predictions", type=Path, required=True)
    evaluate.add_argument("--labels", type=Path, required=True)
    evaluate.add_argument("--out", type=Path, default=None, help="Arquivo JSON do resultado")
    evaluate.add_argument("--num-classes", type=int, default=None)

    gradcheck = subparsers.add_parser("gradcheck", help="Verifica gradientes por diferenças finitas")
    gradcheck.add_argument("--instances", type=int, default=50)
    gradcheck.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gradcheck.add_argument("--out", type=Path, default=None, help="Arquivo JSON do relatório")
    return parser


def _add_config_arguments(subparser: argparse.ArgumentParser) -> None:
    subparser.add_argument("--config", type=Path, default=None, help="Arquivo chave = valor")
    subparser.add_argument("--out", type=Path, required=True, help="Diretório de saída")
    subparser.add_argument("--seed", type=int, default=None, help="Sobrescreve a semente do arquivo")
    subparser.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="CHAVE=VALOR"
    )


def _load_config(args: argparse.Namespace, container: DIContainer) -> Any:
    overrides = parse_overrides(args.overrides)
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    return container.config_loader.load(args.config, overrides)


def _emit(payload: Any, stream: TextIO) -> None:
    stream.write(json.dumps(payload, sort_keys=True, indent=2, default=str))
    stream.write("\n")


def _run_synth(args: argparse.Namespace, container: DIContainer, stream: TextIO) -> int:
    result = container.synthesize_weather_use_case.execute(
        input_dir=args.input,
        output_dir=args.out,
        domain=DomainTag.from_string(args.domain),
        seed=args.seed,
        depth_dir=args.depth,
        workers=args.workers,
    )
    _emit(
        {
            "written": len(result.outputs),
            "failures": result.failures,
            "manifest": str(result.manifest_path),
        },
        stream,
    )
    return EXIT_OK if result.succeeded else EXIT_RUNTIME


def _run_train(args: argparse.Namespace, container: DIContainer, stream: TextIO) -> int:
    result = container.train_detector_use_case.execute(_load_config(args, container), args.out)
    _emit(result.summary(), stream)
    return EXIT_OK


def _run_ablate(args: argparse.Namespace, container: DIContainer, stream: TextIO) -> int:
    report = container.run_ablation_use_case.execute(
        _load_config(args, container), args.out, seeds=args.seeds, studies=args.studies
    )
    _emit(report.to_dict(), stream)
    return EXIT_OK


def _run_eval(args: argparse.Namespace, container: DIContainer, stream: TextIO) -> int:
    result = container.evaluate_predictions_use_case.execute(
        args.predictions, args.labels, output_path=args.out, num_classes=args.num_classes
    )
    _emit(result.to_dict(), stream)
    return EXIT_OK


def _run_gradcheck(args: argparse.Namespace, container: DIContainer, stream: TextIO) -> int:
    report = container.run_gradcheck_use_case.execute(instances=args.instances, seed=args.seed)
    for entry in report.entries:
        status = "ok" if entry.passed else "FALHA"
        detail = f" ({entry.error})" if entry.error else ""
        stream.write(
            f"{status:5} {entry.name:28} max_err={entry.max_error:.3e} tol={entry.tolerance:.0e}{detail}\n"
        )
    if args.out is not None:
        container.artifact_writer.write_json(args.out, report.to_dict())
    return EXIT_OK if report.passed else EXIT_RUNTIME


COMMANDS: dict[str, Callable[[argparse.Namespace, DIContainer, TextIO], int]] = {
    "synth": _run_synth,
    "train": _run_train,
    "ablate": _run_ablate,
    "eval": _run_eval,
    "gradcheck": _run_gradcheck,
}


def dispatch(
    args: argparse.Namespace, container: DIContainer, stream: Optional[TextIO] = None
) -> int:
    """
    Executa o subcomando e traduz erros em códigos de saída.

    Returns:
        0 sucesso, 1 erro de validação, 2 falha em tempo de execução
    """
    stream = stream or sys.stdout
    try:
        return COMMANDS[args.command](args, container, stream)
    except (InvalidConfigKeyException, SchemaMismatchException, ValueError) as e:
        logger.error(f"Erro de validação em '{args.command}': {e}")
        sys.stderr.write(f"erro: {e}\n")
        return EXIT_VALIDATION
    except (DomainException, OSError) as e:
        logger.error(f"Falha em '{args.command}': {type(e).__name__}: {e}", exc_info=True)
        sys.stderr.write(f"falha: {e}\n")
        return EXIT_RUNTIME
