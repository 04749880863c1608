"""Interface funcional sobre as primitivas diferenciáveis."""
from typing import Optional, Sequence

import numpy as np

from weather_adapt.domain.autograd import functions as F
from weather_adapt.domain.autograd.node import Node, Operand


def constant(value: Operand) -> Node:
    """Cria nó constante (sem gradiente)."""
    return Node(value.value if isinstance(value, Node) else value)


def parameter(value: Operand, name: Optional[str] = None) -> Node:
    """Cria nó folha treinável."""
    raw = value.value if isinstance(value, Node) else value
    return Node(np.array(raw, dtype=np.float64), requires_grad=True, name=name)


def add(a: Operand, b: Operand) -> Node:
    return F.Add.apply(a, b)


def sub(a: Operand, b: Operand) -> Node:
    return F.Sub.apply(a, b)


def mul(a: Operand, b: Operand) -> Node:
    return F.Mul.apply(a, b)


def neg(a: Operand) -> Node:
    return F.Neg.apply(a)


def scale(a: Operand, factor: float) -> Node:
    return F.Scale.apply(a, factor=factor)


def matmul(a: Operand, b: Operand) -> Node:
    return F.MatMul.apply(a, b)


def transpose(a: Operand) -> Node:
    return F.Transpose.apply(a)


def relu(a: Operand) -> Node:
    return F.Relu.apply(a)


def exp(a: Operand) -> Node:
    return F.Exp.apply(a)


def log(a: Operand) -> Node:
    return F.Log.apply(a)


def sigmoid(a: Operand) -> Node:
    return F.Sigmoid.apply(a)


def softmax(a: Operand) -> Node:
    """Softmax por linha."""
    return F.Softmax.apply(a)


def log_softmax(a: Operand) -> Node:
    """Log-softmax por linha."""
    return F.LogSoftmax.apply(a)


def l2_normalize(a: Operand) -> Node:
    """Normaliza cada linha para norma L2 unitária."""
    return F.L2Normalize.apply(a)


def cosine_similarity(a: Operand, b: Operand) -> Node:
    """Matriz de similaridades de cosseno entre linhas de a e linhas de b."""
    return F.CosineSimilarity.apply(a, b)


def concat(nodes: Sequence[Operand], axis: int = 0) -> Node:
    return F.Concat.apply(*nodes, axis=axis)


def take_rows(a: Operand, indices: Sequence[int]) -> Node:
    return F.TakeRows.apply(a, indices=tuple(int(i) for i in indices))


def slice_cols(a: Operand, start: int, stop: int) -> Node:
    return F.SliceCols.apply(a, start=start, stop=stop)


def reshape(a: Operand, shape: tuple[int, ...]) -> Node:
    return F.Reshape.apply(a, shape=shape)


def sum(a: Operand, axis: Optional[int] = None, keepdims: bool = False) -> Node:  # noqa: A001
    return F.Sum.apply(a, axis=axis, keepdims=keepdims)


def mean(a: Operand, axis: Optional[int] = None) -> Node:
    node = a if isinstance(a, Node) else constant(a)
    count = node.value.size if axis is None else node.value.shape[axis]
    return scale(sum(node, axis=axis), 1.0 / max(count, 1))


def abs(a: Operand) -> Node:  # noqa: A001
    return F.Abs.apply(a)


def clip(a: Operand, low: float, high: float) -> Node:
    return F.Clip.apply(a, low=low, high=high)


def grl(a: Operand) -> Node:
    """Camada de reversão de gradiente."""
    return F.GradientReversal.apply(a)


def binary_cross_entropy(prob: Node, label: int) -> Node:
    """
    Entropia cruzada binária de uma probabilidade escalar.

    Args:
        prob: Probabilidade prevista em (0, 1)
        label: Rótulo 0 ou 1

    Returns:
        -log(p) para rótulo 1, -log(1 - p) para rótulo 0
    """
    if label == 1:
        return neg(log(prob))
    return neg(log(sub(1.0, prob)))
