"""Carregador de configuração ``chave = valor``."""
import configparser
import logging
import types
import typing
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from weather_adapt.application.interfaces.services.config_loader import ConfigLoader
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.exceptions.domain_exceptions import InvalidConfigKeyException
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.domain.value_objects.lr_schedule import LrSchedule

logger = logging.getLogger(__name__)

IMPLICIT_SECTION = "experiment"
TRUE_VALUES = frozenset({"true", "on", "yes", "1"})
FALSE_VALUES = frozenset({"false", "off", "no", "0"})
NONE_VALUES = frozenset({"none", "null", ""})


def parse_bool(raw: str) -> bool:
    """Converte true/false, on/off, yes/no ou 1/0."""
    value = raw.strip().lower()
    if value in TRUE_VALUES:
        return True
    if value in FALSE_VALUES:
        return False
    raise ValueError(f"Valor booleano inválido: '{raw}'")


def coerce(hint: Any, raw: str) -> Any:
    """Converte o texto para o tipo anotado do campo."""
    origin = typing.get_origin(hint)
    if origin in (Union, types.UnionType):
        inner = [arg for arg in typing.get_args(hint) if arg is not type(None)]
        if raw.strip().lower() in NONE_VALUES:
            return None
        return coerce(inner[0], raw)
    if origin is tuple:
        item_type = typing.get_args(hint)[0]
        return tuple(coerce(item_type, part) for part in raw.split(",") if part.strip())
    if hint is bool:
        return parse_bool(raw)
    if hint is int:
        return int(raw.strip())
    if hint is float:
        return float(raw.strip())
    if hint is DomainTag:
        return DomainTag.from_string(raw)
    if hint is LrSchedule:
        return LrSchedule.from_string(raw)
    return raw.strip()


class FileConfigLoader(ConfigLoader):
    """
    Lê arquivos sem cabeçalho de seção via configparser.

    Comentários com ``#`` ou ``;``; listas separadas por vírgula; ``none``
    desativa campos opcionais.
    """

    def __init__(self, defaults: Optional[TrainingConfiguration] = None):
        """
        Inicializa carregador.

        Args:
            defaults: Configuração base (padrões do método se None)
        """
        self._defaults = defaults or TrainingConfiguration()
        self._hints = typing.get_type_hints(TrainingConfiguration)

    def load(
        self, path: Optional[Path], overrides: Optional[Mapping[str, str]] = None
    ) -> TrainingConfiguration:
        """Carrega arquivo e aplica sobrescritas."""
        values: dict[str, str] = {}
        if path is not None:
            values.update(self._read(path))
        for key, raw in (overrides or {}).items():
            values[key.strip().lower()] = raw

        typed: dict[str, Any] = {}
        for key, raw in values.items():
            if key not in self._hints:
                raise InvalidConfigKeyException(key)
            try:
                typed[key] = coerce(self._hints[key], raw)
            except ValueError as e:
                raise ValueError(f"Valor inválido para '{key}': {e}") from e

        config = self._defaults.with_overrides(**typed)
        logger.info(
            f"Configuração carregada ({'padrões' if path is None else path}, "
            f"{len(overrides or {})} sobrescritas)"
        )
        return config

    def _read(self, path: Path) -> dict[str, str]:
        parser = configparser.ConfigParser(
            interpolation=None, inline_comment_prefixes=("#", ";"), delimiters=("=",)
        )
        text = path.read_text(encoding="utf-8")
        try:
            parser.read_string(f"[{IMPLICIT_SECTION}]\n{text}", source=str(path))
        except configparser.Error as e:
            raise ValueError(f"Arquivo de configuração inválido '{path}': {e}") from e
        return dict(parser.items(IMPLICIT_SECTION))
