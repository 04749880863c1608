"""Memória global de classes e perda contrastiva centro-protótipo."""
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.class_centers import ClassCenters
from weather_adapt.domain.entities.global_class_memory import GlobalClassMemory
from weather_adapt.domain.value_objects.domain_tag import DomainTag


def memory_update(memory: GlobalClassMemory, centers: ClassCenters) -> GlobalClassMemory:
    """
    Atualização ponderada por contagem da memória global.

    Para cada categoria presente: c <- (1 - n/(n+S))·c + (n/(n+S))·c_lote
    e S <- S + n. A primeira observação copia o centro do lote.
    """
    values = {k: centers.center_value(k) for k in centers.categories}
    return memory.updated_with(values, centers.counts)


@dataclass(frozen=True, eq=False)
class ContrastiveLoss:
    """
    Perda contrastiva e termos pulados.

    Attributes:
        loss: Nó escalar (zero quando não há termos)
        terms: Número de termos somados
        skipped: (domínio, categoria) sem protótipo na memória
    """

    loss: Node
    terms: int
    skipped: list[tuple[DomainTag, int]] = field(default_factory=list)


def contrastive_loss(
    centers: Sequence[ClassCenters], memory: GlobalClassMemory, tau: float = 0.07
) -> ContrastiveLoss:
    """
    Entropia cruzada das similaridades centro-protótipo com temperatura.

    Para cada domínio e categoria k presente: -log softmax_k' de
    cos(c_k, c_k'^global)/τ sobre os protótipos definidos.

    Args:
        centers: Centros por domínio
        memory: Memória global (fora do grafo)
        tau: Temperatura (> 0)

    Returns:
        Perda somada e categorias puladas

    Raises:
        ValueError: Se tau <= 0
    """
    if tau <= 0.0:
        raise ValueError(f"Temperatura deve ser positiva: {tau}")

    prototype_categories = [
        k
        for k in range(memory.num_classes)
        if memory.has_prototype(k) and np.linalg.norm(memory.prototypes[k]) > 0.0
    ]
    prototypes = ops.constant(memory.prototypes[prototype_categories]) if prototype_categories else None
    position = {k: i for i, k in enumerate(prototype_categories)}

    terms: list[Node] = []
    skipped: list[tuple[DomainTag, int]] = []
    for domain_centers in centers:
        for category in domain_centers.categories:
            center = domain_centers.centers[category]
            if prototypes is None or category not in position or not np.any(center.value):
                skipped.append((domain_centers.domain, category))
                continue
            sims = ops.cosine_similarity(center, prototypes)
            log_probs = ops.log_softmax(ops.scale(sims, 1.0 / tau))
            j = position[category]
            terms.append(ops.neg(ops.sum(ops.slice_cols(log_probs, j, j + 1))))

    if not terms:
        return ContrastiveLoss(loss=ops.constant(0.0), terms=0, skipped=skipped)
    loss = terms[0]
    for term in terms[1:]:
        loss = ops.add(loss, term)
    return ContrastiveLoss(loss=loss, terms=len(terms), skipped=skipped)
