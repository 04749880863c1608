"""Métricas de detecção por distância de centro (mAP e mATE)."""
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from weather_adapt.domain.entities.eval_result import DISTANCE_THRESHOLDS, EvalResult
from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.entities.query_batch import QueryBatch
from weather_adapt.domain.value_objects.detection import Detection

logger = logging.getLogger(__name__)

RECALL_POINTS = 101
TRANSLATION_THRESHOLD = 2.0


@dataclass(frozen=True)
class MatchOutcome:
    """
    Resultado de uma predição no casamento guloso.

    Attributes:
        confidence: Confiança da predição
        category: Categoria prevista
        true_positive: Se casou com um ground truth
        distance: Distância no plano (m) quando casada
        gt_index: Índice do ground truth casado
    """

    confidence: float
    category: int
    true_positive: bool
    distance: float = math.inf
    gt_index: int = -1


def center_distance(a: Detection | LabeledBox, b: Detection | LabeledBox) -> float:
    """Distância euclidiana dos centros no plano (x, y)."""
    return math.hypot(a.box.x - b.box.x, a.box.y - b.box.y)


def match_by_center_distance(
    predictions: Sequence[Detection], ground_truths: Sequence[LabeledBox], threshold: float
) -> list[MatchOutcome]:
    """
    Casamento guloso por confiança decrescente.

    Cada predição casa com o ground truth não casado mais próximo da
    mesma categoria dentro do limiar.

    Args:
        predictions: Predições de um quadro
        ground_truths: Rótulos do mesmo quadro
        threshold: Distância máxima em metros (> 0)

    Returns:
        Um resultado por predição, em ordem de confiança decrescente

    Raises:
        ValueError: Se limiar não positivo
    """
    if threshold <= 0.0:
        raise ValueError(f"Limiar de distância deve ser positivo: {threshold}")
    order = sorted(range(len(predictions)), key=lambda i: -predictions[i].confidence)
    taken = [False] * len(ground_truths)
    outcomes: list[MatchOutcome] = []
    for index in order:
        pred = predictions[index]
        best, best_distance = -1, math.inf
        for j, gt in enumerate(ground_truths):
            if taken[j] or gt.category != pred.category:
                continue
            distance = center_distance(pred, gt)
            if distance <= threshold and distance < best_distance:
                best, best_distance = j, distance
        if best >= 0:
            taken[best] = True
            outcomes.append(MatchOutcome(pred.confidence, pred.category, True, best_distance, best))
        else:
            outcomes.append(MatchOutcome(pred.confidence, pred.category, False))
    return outcomes


def average_precision(outcomes: Sequence[MatchOutcome], num_ground_truths: int) -> float:
    """
    AP com interpolação de 101 pontos de revocação.

    Predições ordenadas por confiança decrescente (estável); a precisão
    interpolada em r é a máxima precisão com revocação >= r.

    Raises:
        ValueError: Se não houver ground truth (AP indefinido)

    Example:
        >>> outcomes = [MatchOutcome(0.9, 0, True), MatchOutcome(0.8, 0, False)]
        >>> average_precision(outcomes, 1)
        1.0
    """
    if num_ground_truths <= 0:
        raise ValueError("AP indefinido sem ground truth")
    ranked = sorted(outcomes, key=lambda o: -o.confidence)
    if not ranked:
        return 0.0
    hits = np.array([o.true_positive for o in ranked], dtype=np.float64)
    tp = np.cumsum(hits)
    precision = tp / np.arange(1, len(ranked) + 1)
    recall = tp / num_ground_truths
    total = 0.0
    for r in np.linspace(0.0, 1.0, RECALL_POINTS):
        reachable = precision[recall >= r - 1e-12]
        total += float(reachable.max()) if reachable.size else 0.0
    return float(min(1.0, total / RECALL_POINTS))


def evaluate(
    frames: Sequence[tuple[Sequence[Detection], Sequence[LabeledBox]]],
    num_classes: int,
    thresholds: Sequence[float] = DISTANCE_THRESHOLDS,
) -> EvalResult:
    """
    Avalia predições sobre um conjunto de quadros.

    Args:
        frames: Pares (predições, rótulos) por quadro
        num_classes: Número de categorias K
        thresholds: Limiares de distância em metros

    Returns:
        AP por categoria e limiar, mAP e mATE (limiar de 2 m)
    """
    gt_counts = [0] * num_classes
    for _, labels in frames:
        for label in labels:
            if 0 <= label.category < num_classes:
                gt_counts[label.category] += 1

    ap: dict[int, dict[float, float]] = {}
    excluded = tuple(k for k in range(num_classes) if gt_counts[k] == 0)
    if excluded:
        logger.info(f"Categorias sem ground truth excluídas do mAP: {list(excluded)}")

    outcomes_by_threshold = {
        threshold: [
            outcome
            for predictions, labels in frames
            for outcome in match_by_center_distance(predictions, labels, threshold)
        ]
        for threshold in thresholds
    }

    for category in range(num_classes):
        if gt_counts[category] == 0:
            continue
        ap[category] = {}
        for threshold in thresholds:
            outcomes = [o for o in outcomes_by_threshold[threshold] if o.category == category]
            ap[category][threshold] = average_precision(outcomes, gt_counts[category])

    values = [v for per_threshold in ap.values() for v in per_threshold.values()]
    mean_ap = float(np.mean(values)) if values else 0.0

    translation_outcomes = outcomes_by_threshold.get(TRANSLATION_THRESHOLD)
    if translation_outcomes is None:
        translation_outcomes = [
            outcome
            for predictions, labels in frames
            for outcome in match_by_center_distance(predictions, labels, TRANSLATION_THRESHOLD)
        ]
    distances = [o.distance for o in translation_outcomes if o.true_positive]
    mean_ate = float(np.mean(distances)) if distances else 0.0

    return EvalResult(
        ap=ap,
        mean_ap=mean_ap,
        mean_translation_error=mean_ate,
        excluded_categories=excluded,
        num_predictions=sum(len(p) for p, _ in frames),
        num_ground_truths=sum(gt_counts),
        num_true_positives=len(distances),
    )


@dataclass(frozen=True)
class FeatureRow:
    """Linha da exportação de features."""

    domain: str
    predicted_class: int
    confidence: float
    features: tuple[float, ...]


def export_features(batches: Sequence[QueryBatch]) -> list[FeatureRow]:
    """
    Uma linha por consulta: domínio, classe prevista, confiança e features.

    Raises:
        ValueError: Se a lista for vazia
    """
    if not batches:
        raise ValueError("Nenhum QueryBatch para exportar")
    rows: list[FeatureRow] = []
    for batch in batches:
        probs = batch.probabilities()
        for prob_row, feature_row in zip(probs, batch.features.value):
            rows.append(
                FeatureRow(
                    domain=str(batch.domain),
                    predicted_class=int(np.argmax(prob_row)),
                    confidence=float(prob_row.max()),
                    features=tuple(float(v) for v in feature_row),
                )
            )
    return rows
