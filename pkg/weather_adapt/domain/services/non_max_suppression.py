"""Serviço de supressão de não máximos por categoria."""
from typing import Callable, Sequence

from weather_adapt.domain.services.box_geometry import iou_3d
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection

IouFunction = Callable[[Box3D, Box3D], float]


def nms(
    detections: Sequence[Detection], iou_threshold: float, iou: IouFunction = iou_3d
) -> list[Detection]:
    """
    NMS guloso por categoria.

    Ordena por confiança decrescente (empates pela ordem de entrada) e
    mantém uma detecção se e somente se seu IoU com toda detecção já
    mantida da mesma categoria for <= limiar.

    Args:
        detections: Detecções candidatas
        iou_threshold: Limiar em [0, 1]
        iou: Função de IoU (3D por padrão)

    Returns:
        Subconjunto mantido, em ordem de confiança decrescente

    Raises:
        ValueError: Se limiar fora de [0, 1]
    """
    if not 0.0 <= iou_threshold <= 1.0:
        raise ValueError(f"Limiar de NMS deve estar em [0, 1]: {iou_threshold}")

    order = sorted(range(len(detections)), key=lambda i: -detections[i].confidence)
    kept: list[Detection] = []
    kept_by_category: dict[int, list[Box3D]] = {}
    for index in order:
        det = detections[index]
        same_category = kept_by_category.setdefault(det.category, [])
        if all(iou(det.box, other) <= iou_threshold for other in same_category):
            kept.append(det)
            same_category.append(det.box)
    return kept
