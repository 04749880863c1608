"""Conversores entre objetos de domínio e registros JSON lines."""
from typing import Any

import numpy as np

from weather_adapt.domain.entities.labeled_frame import LabeledBox, PseudoLabelProvenance
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection
from weather_adapt.domain.value_objects.domain_tag import DomainTag

PREDICTION_KIND = "prediction"
LABEL_KIND = "label"


def detection_to_record(detection: Detection, frame: str, domain: DomainTag) -> dict[str, Any]:
    """
    Converte Detection para registro de predição.

    Args:
        detection: Detecção
        frame: Identificador do quadro
        domain: Domínio do quadro

    Returns:
        Registro {frame, x..yaw, probs, domain, kind}
    """
    record: dict[str, Any] = {"frame": frame}
    record.update(detection.to_dict())
    record["domain"] = str(domain)
    record["kind"] = PREDICTION_KIND
    return record


def record_to_detection(record: dict[str, Any]) -> Detection:
    """
    Converte registro de predição para Detection.

    Raises:
        KeyError: Se faltar campo obrigatório
        ValueError: Se valores inválidos
    """
    return Detection.from_probs(Box3D.from_dict(record), record["probs"])


def labeled_box_to_record(
    label: LabeledBox, frame: str, domain: DomainTag, num_classes: int
) -> dict[str, Any]:
    """
    Converte LabeledBox para registro de rótulo.

    O vetor ``probs`` de um rótulo é one-hot sobre K categorias; pseudo
    rótulos levam também o campo ``provenance``.
    """
    probs = [0.0] * num_classes
    probs[label.category] = 1.0
    record: dict[str, Any] = {"frame": frame}
    record.update(label.box.to_dict())
    record["probs"] = probs
    record["category"] = label.category
    record["domain"] = str(domain)
    record["kind"] = LABEL_KIND
    if label.provenance is not None:
        record["provenance"] = label.provenance.to_dict()
    return record


def record_to_labeled_box(record: dict[str, Any]) -> LabeledBox:
    """
    Converte registro de rótulo para LabeledBox.

    Sem campo ``category``, usa o argmax de ``probs``.

    Raises:
        KeyError: Se faltar campo obrigatório
        ValueError: Se valores inválidos
    """
    provenance = None
    if record.get("provenance"):
        data = record["provenance"]
        provenance = PseudoLabelProvenance(
            teacher_iteration=int(data["teacher_iteration"]), beta=float(data["beta"])
        )
    return LabeledBox(
        box=Box3D.from_dict(record),
        category=int(record["category"]) if "category" in record else int(np.argmax(record["probs"])),
        provenance=provenance,
    )
