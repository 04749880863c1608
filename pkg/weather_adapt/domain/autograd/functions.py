"""Primitivas diferenciáveis com adjuntos analíticos."""
import threading
from contextlib import contextmanager
from typing import Any, ClassVar, Iterator, Optional, Sequence

import numpy as np

from weather_adapt.domain.autograd.node import MAX_RANK, Node, Operand, as_node
from weather_adapt.domain.autograd.tape import active_tape
from weather_adapt.domain.exceptions.domain_exceptions import ShapeMismatchException

Grads = tuple[Optional[np.ndarray], ...]


class Context:
    """Armazena tensores e metadados do forward para uso no backward."""

    def __init__(self) -> None:
        self.saved: dict[str, Any] = {}
        self.input_shapes: tuple[tuple[int, ...], ...] = ()

    def save(self, **values: Any) -> None:
        """Guarda valores nomeados."""
        self.saved.update(values)

    def __getitem__(self, key: str) -> Any:
        return self.saved[key]


class Function:
    """
    Primitiva diferenciável.

    Subclasses implementam ``forward`` (sobre arrays) e ``backward``
    (adjunto analítico, um gradiente por entrada). ``apply`` conecta a
    primitiva ao grafo e à fita ativa.
    """

    name: ClassVar[str] = "function"

    @staticmethod
    def forward(ctx: Context, *values: np.ndarray, **params: Any) -> np.ndarray:
        raise NotImplementedError

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        raise NotImplementedError

    @classmethod
    def apply(cls, *inputs: Operand, **params: Any) -> Node:
        """
        Executa o forward e grava o nó resultante na fita ativa.

        Args:
            inputs: Operandos (nós ou valores constantes)
            params: Parâmetros não diferenciáveis da primitiva

        Returns:
            Nó de saída

        Raises:
            ShapeMismatchException: Se formas incompatíveis ou posto > 2
        """
        parents = tuple(as_node(x) for x in inputs)
        ctx = Context()
        ctx.input_shapes = tuple(p.shape for p in parents)
        value = np.asarray(cls.forward(ctx, *(p.value for p in parents), **params), dtype=np.float64)
        if value.ndim > MAX_RANK:
            raise ShapeMismatchException(cls.name, (value.shape,))

        tape = active_tape()
        if tape is None or not any(p.requires_grad for p in parents):
            return Node(value)

        node = Node(value, requires_grad=True, parents=parents, function=cls, ctx=ctx)
        tape.record(node)
        return node


def _check_broadcast(name: str, a: np.ndarray, b: np.ndarray) -> None:
    """Aceita formas iguais, escalar ou vetor-linha difundido sobre as linhas."""
    if a.shape == b.shape:
        return
    for small, big in ((a, b), (b, a)):
        if small.size == 1 and small.ndim <= big.ndim:
            return
        if big.ndim == 2 and small.shape in ((big.shape[1],), (1, big.shape[1])):
            return
    raise ShapeMismatchException(name, (a.shape, b.shape))


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Reduz o gradiente de volta à forma original do operando difundido."""
    if grad.shape == shape:
        return grad
    if int(np.prod(shape)) == 1:
        return np.asarray(grad.sum()).reshape(shape)
    return grad.sum(axis=0).reshape(shape)


def _as_rows(value: np.ndarray) -> np.ndarray:
    return value.reshape(1, -1) if value.ndim == 1 else value


class Add(Function):
    name = "add"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        _check_broadcast(Add.name, a, b)
        return a + b

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        shape_a, shape_b = ctx.input_shapes
        return _unbroadcast(grad, shape_a), _unbroadcast(grad, shape_b)


class Sub(Function):
    name = "sub"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        _check_broadcast(Sub.name, a, b)
        return a - b

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        shape_a, shape_b = ctx.input_shapes
        return _unbroadcast(grad, shape_a), _unbroadcast(-grad, shape_b)


class Mul(Function):
    name = "multiply"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        _check_broadcast(Mul.name, a, b)
        ctx.save(a=a, b=b)
        return a * b

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        shape_a, shape_b = ctx.input_shapes
        return (
            _unbroadcast(grad * ctx["b"], shape_a),
            _unbroadcast(grad * ctx["a"], shape_b),
        )


class Neg(Function):
    name = "neg"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        return -a

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (-grad,)


class Scale(Function):
    name = "scale"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, factor: float = 1.0) -> np.ndarray:
        ctx.save(factor=float(factor))
        return a * float(factor)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad * ctx["factor"],)


class MatMul(Function):
    name = "matmul"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
            raise ShapeMismatchException(MatMul.name, (a.shape, b.shape))
        ctx.save(a=a, b=b)
        return a @ b

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return grad @ ctx["b"].T, ctx["a"].T @ grad


class Transpose(Function):
    name = "transpose"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        if a.ndim != 2:
            raise ShapeMismatchException(Transpose.name, (a.shape,))
        return a.T.copy()

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad.T,)


class Relu(Function):
    name = "relu"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        mask = a > 0.0
        ctx.save(mask=mask)
        return np.where(mask, a, 0.0)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad * ctx["mask"],)


class Exp(Function):
    name = "exponential"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        out = np.exp(a)
        ctx.save(out=out)
        return out

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad * ctx["out"],)


class Log(Function):
    name = "logarithm"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        ctx.save(a=a)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(a)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad / ctx["a"],)


class Sigmoid(Function):
    name = "sigmoid"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        out = 0.5 * (1.0 + np.tanh(0.5 * a))
        ctx.save(out=out)
        return out

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        out = ctx["out"]
        return (grad * out * (1.0 - out),)


class Softmax(Function):
    name = "softmax"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        rows = _as_rows(a)
        shifted = np.exp(rows - rows.max(axis=1, keepdims=True))
        out = shifted / shifted.sum(axis=1, keepdims=True)
        ctx.save(out=out)
        return out.reshape(a.shape)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        out = ctx["out"]
        g = _as_rows(grad)
        result = out * (g - (g * out).sum(axis=1, keepdims=True))
        return (result.reshape(ctx.input_shapes[0]),)


class LogSoftmax(Function):
    name = "log_softmax"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        rows = _as_rows(a)
        shifted = rows - rows.max(axis=1, keepdims=True)
        log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        out = shifted - log_norm
        ctx.save(probs=np.exp(out))
        return out.reshape(a.shape)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        g = _as_rows(grad)
        result = g - ctx["probs"] * g.sum(axis=1, keepdims=True)
        return (result.reshape(ctx.input_shapes[0]),)


class L2Normalize(Function):
    name = "l2_normalize"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        rows = _as_rows(a)
        norms = np.linalg.norm(rows, axis=1, keepdims=True)
        if np.any(norms == 0.0):
            raise ValueError("l2_normalize não admite linhas de norma zero")
        out = rows / norms
        ctx.save(out=out, norms=norms)
        return out.reshape(a.shape)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        out, norms = ctx["out"], ctx["norms"]
        g = _as_rows(grad)
        result = (g - out * (g * out).sum(axis=1, keepdims=True)) / norms
        return (result.reshape(ctx.input_shapes[0]),)


class CosineSimilarity(Function):
    """Similaridade de cosseno par a par entre linhas: (N, D) × (M, D) → (N, M)."""

    name = "cosine_similarity"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a_rows, b_rows = _as_rows(a), _as_rows(b)
        if a_rows.shape[1] != b_rows.shape[1]:
            raise ShapeMismatchException(CosineSimilarity.name, (a.shape, b.shape))
        a_norm = np.linalg.norm(a_rows, axis=1, keepdims=True)
        b_norm = np.linalg.norm(b_rows, axis=1, keepdims=True)
        if np.any(a_norm == 0.0) or np.any(b_norm == 0.0):
            raise ValueError("cosine_similarity não admite vetores de norma zero")
        a_unit, b_unit = a_rows / a_norm, b_rows / b_norm
        sims = a_unit @ b_unit.T
        ctx.save(a_unit=a_unit, b_unit=b_unit, a_norm=a_norm, b_norm=b_norm, sims=sims)
        return sims

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        a_unit, b_unit = ctx["a_unit"], ctx["b_unit"]
        sims = ctx["sims"]
        grad_a = (grad @ b_unit - (grad * sims).sum(axis=1, keepdims=True) * a_unit) / ctx["a_norm"]
        grad_b = (grad.T @ a_unit - (grad * sims).sum(axis=0)[:, None] * b_unit) / ctx["b_norm"]
        shape_a, shape_b = ctx.input_shapes
        return grad_a.reshape(shape_a), grad_b.reshape(shape_b)


class Concat(Function):
    name = "concat"

    @staticmethod
    def forward(ctx: Context, *values: np.ndarray, axis: int = 0) -> np.ndarray:
        if not values:
            raise ShapeMismatchException(Concat.name, ())
        rows = [_as_rows(v) for v in values]
        other_axis = 1 - axis
        if len({r.shape[other_axis] for r in rows}) != 1:
            raise ShapeMismatchException(Concat.name, tuple(v.shape for v in values))
        ctx.save(axis=axis, sizes=[r.shape[axis] for r in rows])
        return np.concatenate(rows, axis=axis)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        splits = np.cumsum(ctx["sizes"])[:-1]
        pieces = np.split(grad, splits, axis=ctx["axis"])
        return tuple(p.reshape(shape) for p, shape in zip(pieces, ctx.input_shapes))


class TakeRows(Function):
    name = "take_rows"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, indices: Sequence[int] = ()) -> np.ndarray:
        if a.ndim != 2:
            raise ShapeMismatchException(TakeRows.name, (a.shape,))
        idx = np.asarray(indices, dtype=np.int64)
        ctx.save(indices=idx)
        return a[idx]

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        result = np.zeros(ctx.input_shapes[0])
        np.add.at(result, ctx["indices"], grad)
        return (result,)


class SliceCols(Function):
    name = "slice_cols"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, start: int = 0, stop: int = 0) -> np.ndarray:
        if a.ndim != 2 or not 0 <= start < stop <= a.shape[1]:
            raise ShapeMismatchException(SliceCols.name, (a.shape,))
        ctx.save(start=start, stop=stop)
        return a[:, start:stop]

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        result = np.zeros(ctx.input_shapes[0])
        result[:, ctx["start"] : ctx["stop"]] = grad
        return (result,)


class Reshape(Function):
    name = "reshape"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, shape: tuple[int, ...] = ()) -> np.ndarray:
        return a.reshape(shape)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad.reshape(ctx.input_shapes[0]),)


class Sum(Function):
    name = "sum"

    @staticmethod
    def forward(
        ctx: Context, a: np.ndarray, axis: Optional[int] = None, keepdims: bool = False
    ) -> np.ndarray:
        ctx.save(axis=axis, keepdims=keepdims)
        return np.asarray(a.sum(axis=axis, keepdims=keepdims))

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        shape = ctx.input_shapes[0]
        axis = ctx["axis"]
        if axis is not None and not ctx["keepdims"]:
            grad = np.expand_dims(grad, axis)
        return (np.broadcast_to(grad, shape).copy(),)


class Abs(Function):
    name = "abs"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        ctx.save(sign=np.sign(a))
        return np.abs(a)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad * ctx["sign"],)


class Clip(Function):
    name = "clip"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        ctx.save(mask=(a >= low) & (a <= high))
        return np.clip(a, low, high)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (grad * ctx["mask"],)


_reversal = threading.local()


class ReversalAnchors:
    """
    Entradas das GRLs no ponto base, na ordem de chamada.

    Sob ``anchored_reversal``, grl(v) vale 2·v0 - v: o mesmo valor no
    ponto base com derivada -1, o que torna a reversão visível às
    diferenças finitas. A primeira avaliação grava v0; ``replay`` devolve
    um cursor sobre os valores gravados.
    """

    def __init__(self) -> None:
        self.values: list[np.ndarray] = []
        self._cursor: Optional[int] = None

    def replay(self) -> "ReversalAnchors":
        """Cursor de leitura sobre os valores gravados."""
        replay = ReversalAnchors()
        replay.values = self.values
        replay._cursor = 0
        return replay

    def surrogate(self, a: np.ndarray) -> np.ndarray:
        """Valor da GRL sob ancoragem."""
        if self._cursor is None:
            self.values.append(a.copy())
            return a.copy()
        if self._cursor >= len(self.values):
            raise ValueError("Grafo com mais GRLs do que no ponto base")
        anchor = self.values[self._cursor]
        self._cursor += 1
        return 2.0 * anchor - a


@contextmanager
def anchored_reversal(anchors: ReversalAnchors) -> Iterator[ReversalAnchors]:
    """Ativa a ancoragem das GRLs na thread atual."""
    previous = getattr(_reversal, "anchors", None)
    _reversal.anchors = anchors
    try:
        yield anchors
    finally:
        _reversal.anchors = previous


class GradientReversal(Function):
    """Identidade no forward; negação do gradiente no backward (coeficiente 1)."""

    name = "grl"

    @staticmethod
    def forward(ctx: Context, a: np.ndarray) -> np.ndarray:
        anchors: Optional[ReversalAnchors] = getattr(_reversal, "anchors", None)
        return a.copy() if anchors is None else anchors.surrogate(a)

    @staticmethod
    def backward(ctx: Context, grad: np.ndarray) -> Grads:
        return (-grad,)


PRIMITIVES: tuple[type[Function], ...] = (
    Add,
    Sub,
    Mul,
    Neg,
    Scale,
    MatMul,
    Transpose,
    Relu,
    Exp,
    Log,
    Sigmoid,
    Softmax,
    LogSoftmax,
    L2Normalize,
    CosineSimilarity,
    Concat,
    TakeRows,
    SliceCols,
    Reshape,
    Sum,
    Abs,
    Clip,
    GradientReversal,
)
