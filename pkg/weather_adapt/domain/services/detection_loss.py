"""Perda de detecção com casamento húngaro (classe + L1 + IoU)."""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.entities.query_batch import QueryBatch, box_to_params
from weather_adapt.domain.services.box_geometry import iou_3d
from weather_adapt.domain.services.hungarian_matcher import cost_matrix, hungarian
from weather_adapt.domain.value_objects.assignment import Assignment
from weather_adapt.domain.value_objects.detection import Detection


@dataclass(frozen=True, eq=False)
class DetectionLoss:
    """
    Perda de detecção de um quadro.

    Attributes:
        loss: Nó escalar (classificação + L1 + (1 - IoU))
        classification: Valor da entropia cruzada
        box_l1: Valor do termo L1
        box_iou: Valor do termo (1 - IoU), sem gradiente
        assignment: Pares (consulta, rótulo)
    """

    loss: Node
    classification: float
    box_l1: float
    box_iou: float
    assignment: Assignment


def query_detections(preds: QueryBatch) -> list[Detection]:
    """Todas as consultas como detecções (inclusive fundo), para o custo."""
    probs = preds.probabilities()
    return [Detection.from_probs(box, row) for box, row in zip(preds.boxes, probs)]


def detection_loss(
    preds: QueryBatch,
    labels: Sequence[LabeledBox],
    lambda_box: float = 2.0,
    use_bev_iou: bool = False,
    assignment: Optional[Assignment] = None,
) -> DetectionLoss:
    """
    Perda de conjunto com atribuição ótima.

    Consultas casadas recebem entropia cruzada para a classe do rótulo,
    L1 em (x, y, z, w, h, l, sin, cos) e (1 - IoU 3D); as demais recebem
    entropia cruzada para o fundo (categoria K). Termos somados sobre
    consultas.

    Args:
        preds: Saídas do detector para um quadro
        labels: Rótulos (pode ser vazio)
        lambda_box: Peso do termo de caixa no custo de casamento
        use_bev_iou: Usa IoU de pegada no custo
        assignment: Atribuição fixa (verificação de gradiente)

    Returns:
        Perda e seus termos
    """
    if assignment is None:
        if labels:
            costs = cost_matrix(query_detections(preds), labels, lambda_box, use_bev_iou)
            assignment = hungarian(costs)
        else:
            assignment = Assignment(pairs=())

    targets = np.full(preds.num_queries, preds.background, dtype=np.int64)
    for query, label_index in assignment.pairs:
        targets[query] = labels[label_index].category
    one_hot = np.zeros(preds.logits.shape)
    one_hot[np.arange(preds.num_queries), targets] = 1.0
    classification = ops.neg(ops.sum(ops.mul(ops.log_softmax(preds.logits), one_hot)))

    terms: list[Node] = [classification]
    l1_value = 0.0
    iou_value = 0.0
    if assignment.pairs:
        rows = [q for q, _ in assignment.pairs]
        target_params = np.vstack([box_to_params(labels[j].box) for _, j in assignment.pairs])
        l1 = ops.sum(ops.abs(ops.sub(ops.take_rows(preds.box_params, rows), target_params)))
        terms.append(l1)
        l1_value = float(l1.value)

        boxes = preds.boxes
        iou_value = float(sum(1.0 - iou_3d(boxes[q], labels[j].box) for q, j in assignment.pairs))
        terms.append(ops.constant(iou_value))

    loss = terms[0]
    for term in terms[1:]:
        loss = ops.add(loss, term)
    return DetectionLoss(
        loss=loss,
        classification=float(classification.value),
        box_l1=l1_value,
        box_iou=iou_value,
        assignment=assignment,
    )
