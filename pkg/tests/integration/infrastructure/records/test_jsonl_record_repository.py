"""Testes de integração para JsonlRecordRepository."""
import pytest

from weather_adapt.application.dto.converters import (
    LABEL_KIND,
    PREDICTION_KIND,
    detection_to_record,
    labeled_box_to_record,
)
from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.exceptions.domain_exceptions import SchemaMismatchException
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection
from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.infrastructure.records.jsonl_record_repository import JsonlRecordRepository

BOX = Box3D(x=1.0, y=2.0, z=0.0, w=1.6, h=1.5, l=4.0, yaw=0.0)


@pytest.fixture
def repository():
    return JsonlRecordRepository()


@pytest.fixture
def files(repository, tmp_path):
    """Arquivos de predições e rótulos com um registro cada."""
    predictions = tmp_path / "predictions.jsonl"
    labels = tmp_path / "labels.jsonl"
    repository.write(
        predictions,
        [detection_to_record(Detection.from_probs(BOX, [0.6, 0.3, 0.1]), "f0", DomainTag.SOURCE)],
    )
    repository.write(
        labels, [labeled_box_to_record(LabeledBox(BOX, 0), "f0", DomainTag.SOURCE, num_classes=3)]
    )
    return predictions, labels


def test_write_and_read(repository, files):
    """Deve reler os registros escritos."""
    predictions, labels = files

    prediction_records = repository.read(predictions, PREDICTION_KIND)
    label_records = repository.read(labels, LABEL_KIND)

    assert prediction_records[0]["probs"] == [0.6, 0.3, 0.1]
    assert label_records[0]["category"] == 0


def test_swapped_files_raise_schema_mismatch(repository, files):
    """Deve rejeitar rótulos lidos como predições e vice-versa."""
    predictions, labels = files

    with pytest.raises(SchemaMismatchException, match="esperado 'prediction', encontrado 'label'"):
        repository.read(labels, PREDICTION_KIND)
    with pytest.raises(SchemaMismatchException, match="esperado 'label', encontrado 'prediction'"):
        repository.read(predictions, LABEL_KIND)


def test_blank_lines_ignored(repository, files):
    """Deve ignorar linhas vazias."""
    predictions, _ = files
    predictions.write_text("\n" + predictions.read_text(encoding="utf-8") + "\n\n", encoding="utf-8")

    assert len(repository.read(predictions, PREDICTION_KIND)) == 1


def test_invalid_json_names_the_line(repository, tmp_path):
    """Deve indicar arquivo e linha do JSON inválido."""
    path = tmp_path / "broken.jsonl"
    path.write_text('{"kind": "label"\n', encoding="utf-8")

    with pytest.raises(SchemaMismatchException, match="broken.jsonl:1"):
        repository.read(path, LABEL_KIND)


def test_non_object_record(repository, tmp_path):
    """Deve rejeitar linhas que não são objetos JSON."""
    path = tmp_path / "list.jsonl"
    path.write_text("[1, 2]\n", encoding="utf-8")

    with pytest.raises(SchemaMismatchException, match="list"):
        repository.read(path, LABEL_KIND)


def test_missing_fields(repository, tmp_path):
    """Deve rejeitar registro sem campos obrigatórios."""
    path = tmp_path / "partial.jsonl"
    path.write_text('{"kind": "label", "frame": "f0", "x": 1.0}\n', encoding="utf-8")

    with pytest.raises(SchemaMismatchException, match="faltando"):
        repository.read(path, LABEL_KIND)
