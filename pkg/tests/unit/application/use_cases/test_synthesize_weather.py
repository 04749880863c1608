"""Testes unitários para SynthesizeWeatherUseCase."""
from pathlib import Path
from unittest.mock import Mock

import numpy as np
import pytest

from weather_adapt.application.use_cases.synthesis.synthesize_weather import (
    SynthesizeWeatherUseCase,
    sample_key,
)
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.domain.value_objects.raster import DepthMap, ImageRGB


def _image(value: float = 0.5) -> ImageRGB:
    rng = np.random.default_rng(int(value * 100))
    return ImageRGB(np.clip(value + 0.1 * rng.normal(size=(6, 5, 3)), 0.0, 1.0))


def _ports(names: list[str], depth: DepthMap | None = None) -> tuple[Mock, Mock, Mock]:
    image_repo = Mock()
    image_repo.list_images.return_value = [Path("in") / name for name in names]
    image_repo.load.side_effect = lambda path: _image(0.4 if "b" in path.name else 0.6)
    depth_repo = Mock()
    depth_repo.find_for.return_value = depth
    writer = Mock()
    writer.digest.return_value = "sha"
    writer.write_manifest.side_effect = lambda manifest, directory: directory / "manifest.json"
    return image_repo, depth_repo, writer


def _saved(image_repo: Mock) -> dict[str, np.ndarray]:
    return {c.args[1].name: c.args[0].data for c in image_repo.save.call_args_list}


def _sidecars(writer: Mock) -> dict[str, dict]:
    return {c.args[0].name: c.args[1] for c in writer.write_json.call_args_list}


class TestSampleKey:
    """Testes para o agrupamento de vistas."""

    def test_prefix_before_separator(self) -> None:
        """Deve usar o prefixo antes de '__' como amostra."""
        assert sample_key(Path("scene1__front.png")) == "scene1"
        assert sample_key(Path("scene1__back__left.png")) == "scene1"

    def test_name_without_separator(self) -> None:
        """Deve usar o nome inteiro sem separador."""
        assert sample_key(Path("scene_2.png")) == "scene_2"


class TestSynthesizeWeatherUseCase:
    """Testes para SynthesizeWeatherUseCase."""

    def test_night_writes_image_and_sidecar_per_view(self, tmp_path: Path) -> None:
        """Deve escrever uma imagem e um sidecar por entrada."""
        # Arrange
        image_repo, depth_repo, writer = _ports(["a__front.jpg", "a__back.jpg", "b.jpg"])
        use_case = SynthesizeWeatherUseCase(image_repo, depth_repo, writer)

        # Act
        result = use_case.execute(Path("in"), tmp_path, DomainTag.TARGET_NIGHT, seed=3)

        # Assert
        assert [p.name for p in result.outputs] == ["a__back.png", "a__front.png", "b.png"]
        assert result.succeeded
        sidecars = _sidecars(writer)
        assert set(sidecars) == {"a__back.json", "a__front.json", "b.json"}
        assert sidecars["b.json"]["source"] == "b.jpg"
        assert sidecars["b.json"]["domain"] == "night"
        assert sidecars["b.json"]["seed"] == 3

    def test_views_of_a_sample_share_parameters(self, tmp_path: Path) -> None:
        """Deve aplicar um único sorteio a todas as vistas da amostra."""
        image_repo, depth_repo, writer = _ports(["a__front.png", "a__back.png", "b.png"])

        SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_RAIN, seed=11
        )

        sidecars = _sidecars(writer)
        assert sidecars["a__front.json"]["params"] == sidecars["a__back.json"]["params"]
        assert sidecars["a__front.json"]["sample_index"] == 0
        assert sidecars["b.json"]["sample_index"] == 1
        assert sidecars["a__front.json"]["sample"] == "a"

    def test_deterministic_for_same_seed(self, tmp_path: Path) -> None:
        """Deve produzir saídas idênticas para a mesma semente."""
        first_repo, depth_repo, writer = _ports(["a.png", "b.png"])
        second_repo, _, _ = _ports(["a.png", "b.png"])

        SynthesizeWeatherUseCase(first_repo, depth_repo, writer).execute(
            Path("in"), tmp_path / "1", DomainTag.TARGET_RAIN, seed=5
        )
        SynthesizeWeatherUseCase(second_repo, depth_repo, writer).execute(
            Path("in"), tmp_path / "2", DomainTag.TARGET_RAIN, seed=5
        )

        first, second = _saved(first_repo), _saved(second_repo)
        for name in first:
            np.testing.assert_array_equal(first[name], second[name])

    def test_workers_do_not_change_outputs(self, tmp_path: Path) -> None:
        """Deve produzir as mesmas saídas com um ou vários workers."""
        names = [f"s{i}.png" for i in range(6)]
        serial_repo, depth_repo, writer = _ports(names)
        parallel_repo, _, _ = _ports(names)

        SynthesizeWeatherUseCase(serial_repo, depth_repo, writer).execute(
            Path("in"), tmp_path / "1", DomainTag.TARGET_RAIN, seed=9, workers=1
        )
        SynthesizeWeatherUseCase(parallel_repo, depth_repo, writer).execute(
            Path("in"), tmp_path / "2", DomainTag.TARGET_RAIN, seed=9, workers=3
        )

        serial, parallel = _saved(serial_repo), _saved(parallel_repo)
        assert set(serial) == set(parallel)
        for name in serial:
            np.testing.assert_array_equal(serial[name], parallel[name])

    def test_haze_without_depth_dir_records_failures(self, tmp_path: Path) -> None:
        """Deve registrar falha por arquivo e continuar quando faltar profundidade."""
        image_repo, depth_repo, writer = _ports(["a.png", "b.png"])

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_HAZE
        )

        assert result.outputs == []
        assert result.failures == {
            "a.png": "mapa de profundidade ausente",
            "b.png": "mapa de profundidade ausente",
        }
        assert not result.manifest.succeeded
        assert [f["item"] for f in result.manifest.failures] == ["a.png", "b.png"]
        image_repo.save.assert_not_called()

    def test_haze_with_partial_depth_fails_whole_sample(self, tmp_path: Path) -> None:
        """Deve falhar todas as vistas de uma amostra com alguma vista sem profundidade."""
        image_repo, depth_repo, writer = _ports(["a__front.png", "a__back.png"])
        depth = DepthMap(np.full((6, 5), 10.0))
        depth_repo.find_for.side_effect = lambda directory, stem: depth if stem.endswith("front") else None

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_HAZE, depth_dir=Path("depth")
        )

        assert result.failures == {
            "a__back.png": "mapa de profundidade ausente",
            "a__front.png": "amostra com vista sem profundidade",
        }

    def test_haze_with_depth_succeeds(self, tmp_path: Path) -> None:
        """Deve sintetizar neblina quando houver profundidade pareada."""
        image_repo, depth_repo, writer = _ports(["a.png"], depth=DepthMap(np.full((6, 5), 10.0)))

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_HAZE, depth_dir=Path("depth")
        )

        assert result.succeeded
        assert _sidecars(writer)["a.json"]["params"]["beta"] > 0.0
        depth_repo.find_for.assert_called_once_with(Path("depth"), "a")

    def test_depth_size_mismatch_is_a_failure(self, tmp_path: Path) -> None:
        """Deve registrar falha quando a profundidade tiver outra dimensão."""
        image_repo, depth_repo, writer = _ports(["a.png"], depth=DepthMap(np.ones((2, 2))))

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_HAZE, depth_dir=Path("depth")
        )

        assert "dimensões diferentes" in result.failures["a.png"]

    def test_unreadable_image_does_not_abort_batch(self, tmp_path: Path) -> None:
        """Deve continuar após erro de leitura de um arquivo."""
        image_repo, depth_repo, writer = _ports(["a.png", "b.png"])

        def load(path: Path) -> ImageRGB:
            if path.name == "a.png":
                raise OSError("arquivo corrompido")
            return _image()

        image_repo.load.side_effect = load

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_NIGHT
        )

        assert result.failures == {"a.png": "arquivo corrompido"}
        assert [p.name for p in result.outputs] == ["b.png"]

    def test_manifest_lists_artifacts(self, tmp_path: Path) -> None:
        """Deve registrar hash de imagens e sidecars no manifesto."""
        image_repo, depth_repo, writer = _ports(["a.png"])

        result = SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
            Path("in"), tmp_path, DomainTag.TARGET_NIGHT, seed=7, workers=2
        )

        assert result.manifest.command == "synth"
        assert result.manifest.seed == 7
        assert result.manifest.config == {"domain": "night", "workers": 2}
        assert result.manifest.artifacts == {"a.png": "sha", "a.json": "sha"}
        assert result.manifest_path == tmp_path / "manifest.json"
        writer.write_manifest.assert_called_once()

    def test_reject_source_domain(self, tmp_path: Path) -> None:
        """Deve rejeitar síntese para o domínio source."""
        image_repo, depth_repo, writer = _ports(["a.png"])

        with pytest.raises(ValueError, match="domínio alvo"):
            SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
                Path("in"), tmp_path, DomainTag.SOURCE
            )

    def test_reject_invalid_workers(self, tmp_path: Path) -> None:
        """Deve rejeitar workers < 1."""
        image_repo, depth_repo, writer = _ports(["a.png"])

        with pytest.raises(ValueError, match="workers deve ser >= 1"):
            SynthesizeWeatherUseCase(image_repo, depth_repo, writer).execute(
                Path("in"), tmp_path, DomainTag.TARGET_NIGHT, workers=0
            )
