"""Nó do grafo de diferenciação reversa."""
from typing import TYPE_CHECKING, Any, Optional, Union

import numpy as np

from weather_adapt.domain.exceptions.domain_exceptions import ShapeMismatchException

if TYPE_CHECKING:
    from weather_adapt.domain.autograd.functions import Context, Function

MAX_RANK = 2

Operand = Union["Node", float, int, np.ndarray]


class Node:
    """
    Tensor denso (posto <= 2) com slot de gradiente e proveniência.

    Folhas (parâmetros e constantes) não têm função; nós intermediários
    guardam a primitiva que os produziu, os pais e o contexto salvo no
    forward.

    Attributes:
        value: Valor do tensor (float64)
        grad: Gradiente acumulado, mesma forma de value (None até o backward)
        requires_grad: Se o nó participa do backward
        name: Nome opcional (parâmetros)
    """

    __slots__ = ("value", "grad", "requires_grad", "name", "parents", "function", "ctx")

    def __init__(
        self,
        value: Any,
        requires_grad: bool = False,
        name: Optional[str] = None,
        parents: tuple["Node", ...] = (),
        function: Optional[type["Function"]] = None,
        ctx: Optional["Context"] = None,
    ) -> None:
        """
        Inicializa nó.

        Args:
            value: Valor numérico (escalar, vetor ou matriz)
            requires_grad: Se gradientes devem ser acumulados neste nó
            name: Nome para relatórios e checkpoints
            parents: Nós de entrada da primitiva (vazio para folhas)
            function: Primitiva que produziu o nó
            ctx: Contexto salvo pelo forward

        Raises:
            ShapeMismatchException: Se o posto for maior que 2
        """
        array = np.array(value, dtype=np.float64)
        if array.ndim > MAX_RANK:
            raise ShapeMismatchException("node", (array.shape,))
        self.value = array
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self.name = name
        self.parents = parents
        self.function = function
        self.ctx = ctx

    @property
    def shape(self) -> tuple[int, ...]:
        """Forma do valor."""
        return tuple(self.value.shape)

    @property
    def is_leaf(self) -> bool:
        """Indica se o nó não foi produzido por uma primitiva."""
        return self.function is None

    def item(self) -> float:
        """Retorna o valor escalar."""
        return float(self.value.reshape(-1)[0]) if self.value.size == 1 else float("nan")

    def zero_grad(self) -> None:
        """Descarta o gradiente acumulado."""
        self.grad = None

    def detach(self) -> "Node":
        """Retorna uma constante com cópia do valor, fora do grafo."""
        return Node(self.value.copy())

    def __repr__(self) -> str:
        """Representação para debug."""
        origin = self.function.name if self.function is not None else "leaf"
        label = f" '{self.name}'" if self.name else ""
        return f"Node{label}(shape={self.shape}, op={origin}, requires_grad={self.requires_grad})"

    # Operadores delegam às primitivas; importação tardia evita ciclo.

    def __add__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.add(self, other)

    def __radd__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.add(other, self)

    def __sub__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.sub(self, other)

    def __rsub__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.sub(other, self)

    def __mul__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.mul(self, other)

    def __rmul__(self, other: Operand) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.mul(other, self)

    def __truediv__(self, other: float) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.scale(self, 1.0 / float(other))

    def __neg__(self) -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.neg(self)

    def __matmul__(self, other: "Node") -> "Node":
        from weather_adapt.domain.autograd import ops

        return ops.matmul(self, other)


def as_node(value: Operand) -> Node:
    """Converte operandos em nós (constantes quando necessário)."""
    if isinstance(value, Node):
        return value
    return Node(value)
