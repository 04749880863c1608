"""Serviço de filtragem de pseudo rótulos do teacher."""
import logging
from typing import Optional, Sequence

from weather_adapt.domain.entities.labeled_frame import LabeledBox, PseudoLabelProvenance
from weather_adapt.domain.services.non_max_suppression import nms
from weather_adapt.domain.value_objects.detection import Detection

logger = logging.getLogger(__name__)


def filter_pseudo_labels(
    teacher_detections: Sequence[Detection],
    beta: float = 0.9,
    nms_threshold: float = 0.2,
    teacher_iteration: Optional[int] = None,
) -> list[LabeledBox]:
    """
    Promove predições confiáveis do teacher a pseudo rótulos.

    Aplica NMS por categoria e depois descarta confiança < beta; cada
    sobrevivente vira (caixa, categoria argmax).

    Args:
        teacher_detections: Detecções do teacher em um quadro alvo
        beta: Limiar de confiança em [0, 1]
        nms_threshold: Limiar de IoU do NMS
        teacher_iteration: Iteração registrada na proveniência

    Returns:
        Pseudo rótulos (lista vazia é válida)

    Raises:
        ValueError: Se beta fora de [0, 1]
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta deve estar em [0, 1]: {beta}")

    provenance = (
        PseudoLabelProvenance(teacher_iteration=teacher_iteration, beta=beta)
        if teacher_iteration is not None
        else None
    )
    survivors = nms(teacher_detections, nms_threshold)
    labels = [
        LabeledBox(box=det.box, category=det.category, provenance=provenance)
        for det in survivors
        if det.confidence >= beta
    ]
    logger.debug(
        f"Pseudo rótulos: {len(teacher_detections)} detecções -> "
        f"{len(survivors)} após NMS -> {len(labels)} com confiança >= {beta}"
    )
    return labels
