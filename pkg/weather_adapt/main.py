"""
Ponto de entrada da linha de comando weather-adapt.

Configura logging, instala o hook global de exceções e despacha o subcomando.
"""
import logging
import logging.handlers
import os
import sys
import traceback
from types import TracebackType
from typing import Optional, Sequence

from weather_adapt.presentation.cli import EXIT_OK, EXIT_VALIDATION, build_parser, dispatch
from weather_adapt.presentation.di_container import DIContainer

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s"
_HANDLER_FLAG = "_weather_adapt_handler"


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None) -> None:
    """
    Configura sistema de logging da aplicação.

    Args:
        log_level: Nível de logging (DEBUG, INFO, WARNING, ERROR). Default: INFO
        log_file: Caminho para arquivo de log (opcional). Se fornecido, usa RotatingFileHandler
                  com 10MB max size e 5 backups.

    Environment Variables:
        WEATHER_ADAPT_LOG_LEVEL: Define nível de log (DEBUG, INFO, WARNING, ERROR)
        WEATHER_ADAPT_LOG_FILE: Define caminho para arquivo de log (opcional)

    Examples:
        export WEATHER_ADAPT_LOG_LEVEL=DEBUG
        export WEATHER_ADAPT_LOG_FILE=logs/weather_adapt.log
        weather-adapt train --config config/default.cfg --out runs/base
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, log_level.upper()))

    # Reconfiguração remove apenas os handlers instalados aqui
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_FLAG, False):
            root_logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

    # stdout fica reservado para os resultados dos subcomandos
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    setattr(console_handler, _HANDLER_FLAG, True)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        setattr(file_handler, _HANDLER_FLAG, True)
        root_logger.addHandler(file_handler)

    logging.getLogger("PIL").setLevel(logging.WARNING)


def exception_hook(
    exctype: type[BaseException], value: BaseException, tb: Optional[TracebackType]
) -> None:
    """
    Hook global para capturar exceções não tratadas.

    Args:
        exctype: Tipo da exceção
        value: Valor da exceção
        tb: Traceback
    """
    logger.critical("=" * 60)
    logger.critical("EXCEÇÃO NÃO TRATADA CAPTURADA PELO HOOK GLOBAL!")
    logger.critical("=" * 60)
    logger.critical(f"Tipo: {exctype.__name__}")
    logger.critical(f"Mensagem: {value}")
    logger.critical("Stack trace completo:")
    for line in traceback.format_exception(exctype, value, tb):
        logger.critical(line.rstrip())
    logger.critical("=" * 60)
    sys.__excepthook__(exctype, value, tb)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Função principal da linha de comando.

    Returns:
        Código de saída (0 sucesso, 1 validação, 2 execução)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_VALIDATION

    log_level = args.log_level or os.getenv("WEATHER_ADAPT_LOG_LEVEL", "INFO")
    log_file = os.getenv("WEATHER_ADAPT_LOG_FILE")
    setup_logging(log_level=log_level, log_file=log_file)
    sys.excepthook = exception_hook

    logger.info(f"Iniciando weather-adapt '{args.command}' (log level: {log_level})")
    container = DIContainer()
    exit_code = dispatch(args, container)
    logger.info(f"'{args.command}' finalizado com código {exit_code}")
    return exit_code


def run() -> None:
    """Entry point do console script."""
    sys.exit(main())


if __name__ == "__main__":
    run()
