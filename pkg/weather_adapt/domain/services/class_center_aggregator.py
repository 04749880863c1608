"""Serviço de agregação de features de consultas em centros de classe."""
import logging

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.class_centers import ClassCenters
from weather_adapt.domain.entities.query_batch import QueryBatch

logger = logging.getLogger(__name__)


def class_centers(queries: QueryBatch, gamma: float = 0.5) -> ClassCenters:
    """
    Centros de classe a partir de consultas confiantes.

    Para cada categoria k: média das features L2-normalizadas das
    consultas com argmax k e confiança >= gamma. Consultas cujo argmax
    é o fundo ficam de fora; features de norma zero são descartadas e
    contadas.

    Args:
        queries: Saídas do detector de um domínio
        gamma: Limiar de confiança em [0, 1]

    Returns:
        Centros no grafo de gradiente das features

    Raises:
        ValueError: Se gamma fora de [0, 1]

    Example:
        >>> centers = class_centers(batch, gamma=0.5)
        >>> centers.counts
        {0: 2}
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma deve estar em [0, 1]: {gamma}")

    probs = queries.probabilities()
    predicted = np.argmax(probs, axis=1)
    confidence = probs.max(axis=1)
    norms = np.linalg.norm(queries.features.value, axis=1)

    members: dict[int, list[int]] = {}
    zero_norm = 0
    for index in range(queries.num_queries):
        category = int(predicted[index])
        if category == queries.background or confidence[index] < gamma:
            continue
        if norms[index] == 0.0:
            zero_norm += 1
            continue
        members.setdefault(category, []).append(index)

    if zero_norm:
        logger.warning(f"{zero_norm} consultas com feature de norma zero descartadas ({queries.domain})")

    centers: dict[int, Node] = {}
    counts: dict[int, int] = {}
    for category in sorted(members):
        rows = members[category]
        unit = ops.l2_normalize(ops.take_rows(queries.features, rows))
        centers[category] = ops.scale(ops.sum(unit, axis=0, keepdims=True), 1.0 / len(rows))
        counts[category] = len(rows)

    return ClassCenters(
        centers=centers,
        counts=counts,
        domain=queries.domain,
        zero_norm_excluded=zero_norm,
        feature_dim=queries.feature_dim,
    )
