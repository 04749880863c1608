"""Caso de uso para sintetizar versões adversas de imagens claras."""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Optional

from weather_adapt.application.dto.synthesis_dto import SynthesisResultDTO
from weather_adapt.application.interfaces.repositories.image_repository import (
    DepthRepository,
    ImageRepository,
)
from weather_adapt.application.interfaces.services.artifact_writer import ArtifactWriter
from weather_adapt.domain.entities.run_manifest import RunManifest
from weather_adapt.domain.exceptions.domain_exceptions import MissingDepthMapException
from weather_adapt.domain.services.weather_synthesizer import WeatherSynthesizer, image_rng
from weather_adapt.domain.value_objects.domain_tag import DomainTag

logger = logging.getLogger(__name__)

VIEW_SEPARATOR = "__"


def sample_key(path: Path) -> str:
    """Amostra de uma vista: prefixo do nome antes de ``__`` (ou o nome inteiro)."""
    return path.stem.split(VIEW_SEPARATOR, 1)[0]


@dataclass
class _SampleOutcome:
    written: list[Path]
    failures: dict[str, str]


class SynthesizeWeatherUseCase:
    """
    Caso de uso para síntese de clima adverso em lote.

    Responsabilidades:
    - Agrupar vistas por amostra e sortear um conjunto de parâmetros por amostra
    - Derivar o fluxo aleatório de (semente, índice da amostra)
    - Escrever imagem e sidecar JSON por vista
    - Continuar após falhas por arquivo e registrá-las no manifesto
    """

    def __init__(
        self,
        image_repository: ImageRepository,
        depth_repository: DepthRepository,
        artifact_writer: ArtifactWriter,
    ):
        """
        Inicializa caso de uso.

        Args:
            image_repository: Leitura e escrita de imagens
            depth_repository: Mapas de profundidade pareados
            artifact_writer: Sidecars e manifesto
        """
        self._image_repository = image_repository
        self._depth_repository = depth_repository
        self._artifact_writer = artifact_writer

    def execute(
        self,
        input_dir: Path,
        output_dir: Path,
        domain: DomainTag,
        seed: int = 42,
        depth_dir: Optional[Path] = None,
        workers: int = 1,
    ) -> SynthesisResultDTO:
        """
        Sintetiza uma saída por imagem de entrada.

        Args:
            input_dir: Diretório de imagens claras
            output_dir: Diretório de saída
            domain: Condição alvo (night, rain ou haze)
            seed: Semente global
            depth_dir: Diretório de profundidades (obrigatório para haze)
            workers: Amostras processadas em paralelo

        Returns:
            Saídas escritas, falhas por arquivo e manifesto

        Raises:
            ValueError: Se domínio source ou workers < 1
        """
        if workers < 1:
            raise ValueError(f"workers deve ser >= 1: {workers}")
        synthesizer = WeatherSynthesizer(domain)
        started = time.perf_counter()
        output_dir.mkdir(parents=True, exist_ok=True)

        paths = self._image_repository.list_images(input_dir)
        ordered = sorted(paths, key=lambda p: (sample_key(p), p.name))
        samples = [list(group) for _, group in groupby(ordered, key=sample_key)]
        logger.info(
            f"Iniciando síntese '{domain}': {len(paths)} imagens em {len(samples)} amostras "
            f"(semente {seed}, {workers} workers)"
        )

        def run(indexed: tuple[int, list[Path]]) -> _SampleOutcome:
            index, views = indexed
            return self._synthesize(synthesizer, index, views, output_dir, seed, depth_dir)

        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(run, enumerate(samples)))

        written = [path for outcome in outcomes for path in outcome.written]
        failures = {name: reason for outcome in outcomes for name, reason in outcome.failures.items()}

        manifest = RunManifest(
            command="synth",
            config={"domain": str(domain), "workers": workers},
            seed=seed,
            inputs={"input": str(input_dir), "depth": str(depth_dir) if depth_dir else ""},
            outputs={"out": str(output_dir)},
        )
        for path in written:
            manifest.artifacts[path.name] = self._artifact_writer.digest(path)
            sidecar = path.with_suffix(".json")
            manifest.artifacts[sidecar.name] = self._artifact_writer.digest(sidecar)
        for name, reason in sorted(failures.items()):
            manifest.add_failure(name, reason)
        manifest.wall_clock_seconds = time.perf_counter() - started
        manifest_path = self._artifact_writer.write_manifest(manifest, output_dir)

        if failures:
            logger.warning(f"Síntese concluída com {len(failures)} falhas de {len(paths)} arquivos")
        else:
            logger.info(f"Síntese concluída: {len(written)} imagens escritas")
        return SynthesisResultDTO(
            outputs=written, failures=failures, manifest=manifest, manifest_path=manifest_path
        )

    def _synthesize(
        self,
        synthesizer: WeatherSynthesizer,
        index: int,
        views: list[Path],
        output_dir: Path,
        seed: int,
        depth_dir: Optional[Path],
    ) -> _SampleOutcome:
        """Processa todas as vistas de uma amostra com um único sorteio."""
        names = [path.name for path in views]
        depths = [
            self._depth_repository.find_for(depth_dir, path.stem) if depth_dir is not None else None
            for path in views
        ]
        if synthesizer.requires_depth and any(depth is None for depth in depths):
            failures = {}
            for name, depth in zip(names, depths):
                reason = "mapa de profundidade ausente" if depth is None else "amostra com vista sem profundidade"
                logger.warning(f"Falha na síntese de '{name}': {reason}")
                failures[name] = reason
            return _SampleOutcome(written=[], failures=failures)

        try:
            images = [self._image_repository.load(path) for path in views]
            outputs, params = synthesizer.synthesize_sample(images, depths, image_rng(seed, index), names)
        except (MissingDepthMapException, ValueError, OSError) as e:
            logger.warning(f"Falha na síntese da amostra {index} ({names}): {e}")
            return _SampleOutcome(written=[], failures={name: str(e) for name in names})

        written: list[Path] = []
        for path, output in zip(views, outputs):
            target = output_dir / f"{path.stem}.png"
            self._image_repository.save(output, target)
            self._artifact_writer.write_json(
                target.with_suffix(".json"),
                {
                    "source": path.name,
                    "domain": str(synthesizer.domain),
                    "seed": seed,
                    "sample_index": index,
                    "sample": sample_key(path),
                    "params": params.to_dict(),
                },
            )
            written.append(target)
        return _SampleOutcome(written=written, failures={})
