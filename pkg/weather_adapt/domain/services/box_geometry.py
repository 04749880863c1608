"""Serviço de geometria de caixas 3D rotacionadas."""
import math
from typing import Optional

import numpy as np

from weather_adapt.domain.value_objects.bev_polygon import BEVPolygon, shoelace_area
from weather_adapt.domain.value_objects.box3d import Box3D

_EDGE_TOLERANCE = 1e-12


def bev_corners(box: Box3D) -> BEVPolygon:
    """
    Cantos da pegada da caixa no plano do solo.

    O eixo l segue a direção de yaw e o eixo w é perpendicular a ele.

    Args:
        box: Caixa válida

    Returns:
        Polígono de 4 vértices em ordem anti-horária

    Example:
        >>> bev_corners(Box3D(0, 0, 0, 1, 1, 1)).vertices[0]
        array([0.5, 0.5])
    """
    half_l, half_w = box.l / 2.0, box.w / 2.0
    local = np.array(
        [[half_l, half_w], [-half_l, half_w], [-half_l, -half_w], [half_l, -half_w]]
    )
    c, s = math.cos(box.yaw), math.sin(box.yaw)
    rotation = np.array([[c, -s], [s, c]])
    return BEVPolygon(local @ rotation.T + np.array([box.x, box.y]))


def _is_inside(point: np.ndarray, edge_start: np.ndarray, edge_end: np.ndarray) -> bool:
    edge = edge_end - edge_start
    return bool(
        edge[0] * (point[1] - edge_start[1]) - edge[1] * (point[0] - edge_start[0])
        >= -_EDGE_TOLERANCE
    )


def _intersection(
    s: np.ndarray, e: np.ndarray, cp1: np.ndarray, cp2: np.ndarray
) -> np.ndarray:
    dc = cp1 - cp2
    dp = s - e
    n1 = cp1[0] * cp2[1] - cp1[1] * cp2[0]
    n2 = s[0] * e[1] - s[1] * e[0]
    n3 = 1.0 / (dc[0] * dp[1] - dc[1] * dp[0])
    return np.array([(n1 * dp[0] - n2 * dc[0]) * n3, (n1 * dp[1] - n2 * dc[1]) * n3])


def clip_polygon(subject: np.ndarray, clip: np.ndarray) -> Optional[np.ndarray]:
    """
    Recorta um polígono por outro convexo (Sutherland-Hodgman).

    Args:
        subject: Vértices (N, 2) anti-horários
        clip: Vértices (M, 2) anti-horários de um polígono convexo

    Returns:
        Vértices da interseção, ou None se vazia
    """
    output = [np.asarray(v, dtype=np.float64) for v in subject]
    cp1 = clip[-1]
    for cp2 in clip:
        if not output:
            return None
        candidates = output
        output = []
        s = candidates[-1]
        for e in candidates:
            if _is_inside(e, cp1, cp2):
                if not _is_inside(s, cp1, cp2):
                    output.append(_intersection(s, e, cp1, cp2))
                output.append(e)
            elif _is_inside(s, cp1, cp2):
                output.append(_intersection(s, e, cp1, cp2))
            s = e
        cp1 = cp2
    if len(output) < 3:
        return None
    return np.vstack(output)


def convex_intersection_area(a: BEVPolygon, b: BEVPolygon) -> float:
    """
    Área da interseção de dois polígonos convexos.

    Returns:
        Área em metros quadrados (0 quando disjuntos)
    """
    clipped = clip_polygon(a.vertices, b.vertices)
    if clipped is None:
        return 0.0
    area = max(0.0, shoelace_area(clipped))
    return min(area, a.area, b.area)


def bev_iou(a: Box3D, b: Box3D) -> float:
    """IoU das pegadas no plano do solo."""
    pa, pb = bev_corners(a), bev_corners(b)
    inter = convex_intersection_area(pa, pb)
    union = pa.area + pb.area - inter
    return float(np.clip(inter / union, 0.0, 1.0)) if union > 0.0 else 0.0


def height_overlap(a: Box3D, b: Box3D) -> float:
    """Sobreposição vertical max(0, min(topo) - max(base))."""
    return max(0.0, min(a.top, b.top) - max(a.bottom, b.bottom))


def iou_3d(a: Box3D, b: Box3D) -> float:
    """
    IoU volumétrico de duas caixas orientadas por yaw.

    Returns:
        Interseção / união em [0, 1]

    Example:
        >>> iou_3d(Box3D(0, 0, 0, 1, 1, 1), Box3D(0.5, 0, 0, 1, 1, 1))
        0.3333333333333333
    """
    dz = height_overlap(a, b)
    if dz <= 0.0:
        return 0.0
    inter = convex_intersection_area(bev_corners(a), bev_corners(b)) * dz
    union = a.volume + b.volume - inter
    if union <= 0.0:
        return 0.0
    return float(np.clip(inter / union, 0.0, 1.0))


def points_in_box(box: Box3D, points: np.ndarray) -> np.ndarray:
    """Máscara dos pontos (M, 3) dentro da caixa."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    c, s = math.cos(box.yaw), math.sin(box.yaw)
    dx, dy = pts[:, 0] - box.x, pts[:, 1] - box.y
    along = c * dx + s * dy
    across = -s * dx + c * dy
    return (
        (np.abs(along) <= box.l / 2.0)
        & (np.abs(across) <= box.w / 2.0)
        & (pts[:, 2] >= box.bottom)
        & (pts[:, 2] <= box.top)
    )
