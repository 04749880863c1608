"""Serviço de casamento bipartido entre predições e alvos."""
import math
from typing import Callable, Sequence

import numpy as np

from weather_adapt.domain.entities.labeled_frame import LabeledBox
from weather_adapt.domain.services.box_geometry import bev_iou, iou_3d
from weather_adapt.domain.value_objects.assignment import Assignment, CostMatrix
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection

PROBABILITY_FLOOR = 1e-7

IouFunction = Callable[[Box3D, Box3D], float]


def pair_cost(probability: float, iou: float, lambda_box: float) -> float:
    """C = -log(max(p, 1e-7)) + λ_box·(1 - IoU)."""
    return -math.log(max(probability, PROBABILITY_FLOOR)) + lambda_box * (1.0 - iou)


def cost_matrix(
    predictions: Sequence[Detection],
    targets: Sequence[LabeledBox],
    lambda_box: float = 2.0,
    use_bev_iou: bool = False,
) -> CostMatrix:
    """
    Matriz de custo de casamento.

    p_ij é a probabilidade da predição i para a categoria do alvo j.

    Args:
        predictions: Detecções previstas
        targets: Rótulos (verdadeiros ou pseudo)
        lambda_box: Peso do termo de caixa (>= 0)
        use_bev_iou: Usa IoU de pegada em vez de IoU 3D

    Returns:
        Matriz (predições, alvos); vazia se alguma lista for vazia

    Raises:
        ValueError: Se lambda_box negativo
    """
    if lambda_box < 0.0:
        raise ValueError(f"lambda_box não pode ser negativo: {lambda_box}")
    iou: IouFunction = bev_iou if use_bev_iou else iou_3d
    values = np.zeros((len(predictions), len(targets)))
    for i, pred in enumerate(predictions):
        for j, target in enumerate(targets):
            values[i, j] = pair_cost(pred.probs[target.category], iou(pred.box, target.box), lambda_box)
    return CostMatrix(values)


def _solve_square(cost: np.ndarray) -> np.ndarray:
    """
    Kuhn-Munkres com potenciais e caminhos aumentantes mínimos.

    Returns:
        Vetor coluna-por-linha de uma atribuição de custo mínimo
    """
    n = cost.shape[0]
    # Índices 1-based; coluna 0 é a raiz fictícia de cada busca
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    for row in range(1, n + 1):
        owner[0] = row
        col0 = 0
        min_slack = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[col0] = True
            row0 = owner[col0]
            delta = np.inf
            col1 = 0
            for col in range(1, n + 1):
                if used[col]:
                    continue
                current = cost[row0 - 1, col - 1] - u[row0] - v[col]
                if current < min_slack[col]:
                    min_slack[col] = current
                    way[col] = col0
                if min_slack[col] < delta:
                    delta = min_slack[col]
                    col1 = col
            for col in range(n + 1):
                if used[col]:
                    u[owner[col]] += delta
                    v[col] -= delta
                else:
                    min_slack[col] -= delta
            col0 = col1
            if owner[col0] == 0:
                break
        while col0 != 0:
            col1 = way[col0]
            owner[col0] = owner[col1]
            col0 = col1

    assignment = np.zeros(n, dtype=np.int64)
    for col in range(1, n + 1):
        assignment[owner[col] - 1] = col - 1
    return assignment


def hungarian(cost: CostMatrix) -> Assignment:
    """
    Atribuição de custo total mínimo.

    Matrizes retangulares são completadas com zeros até ficarem
    quadradas; pares envolvendo linhas ou colunas fictícias são
    descartados, restando min(m, n) pares.

    Os testes usam scipy.optimize.linear_sum_assignment como referência.

    Args:
        cost: Matriz de custo finita

    Returns:
        Atribuição ótima entre todas as injetivas de tamanho min(m, n)

    Example:
        >>> hungarian(CostMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]))).pairs
        ((0, 1), (1, 0))
    """
    rows, cols = cost.shape
    if cost.is_empty:
        return Assignment(pairs=(), total_cost=0.0)
    size = max(rows, cols)
    padded = np.zeros((size, size))
    padded[:rows, :cols] = cost.values
    column_of = _solve_square(padded)
    pairs = tuple((r, int(c)) for r, c in enumerate(column_of) if r < rows and c < cols)
    total = float(sum(cost.values[r, c] for r, c in pairs))
    return Assignment(pairs=pairs, total_cost=total)
