"""Fita de gravação de operações para o backward."""
import logging
import threading
from typing import Optional

import numpy as np

from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.exceptions.domain_exceptions import (
    ShapeMismatchException,
    TapeConsumedException,
)

logger = logging.getLogger(__name__)

_state = threading.local()


def active_tape() -> Optional["Tape"]:
    """Retorna a fita ativa na thread atual, se houver."""
    stack: list[Tape] = getattr(_state, "stack", [])
    return stack[-1] if stack else None


class Tape:
    """
    Registro topologicamente ordenado das primitivas de um forward.

    Operações executadas dentro de ``with Tape() as tape:`` com algum
    operando que exige gradiente são gravadas; fora de uma fita os
    valores são calculados sem gravação (equivalente a no_grad).

    Uma fita só admite um backward: um segundo backward sem novo forward
    é rejeitado com TapeConsumedException.

    Example:
        >>> x = Node(3.0, requires_grad=True)
        >>> with Tape() as tape:
        ...     y = x * x
        >>> tape.backward(y)
        >>> float(x.grad)
        6.0
    """

    def __init__(self) -> None:
        """Inicializa fita vazia."""
        self._records: list[Node] = []
        self._consumed = False

    def __enter__(self) -> "Tape":
        if not hasattr(_state, "stack"):
            _state.stack = []
        _state.stack.append(self)
        return self

    def __exit__(self, *exc_info: object) -> None:
        _state.stack.pop()

    def __len__(self) -> int:
        return len(self._records)

    @property
    def consumed(self) -> bool:
        """Indica se o backward já foi executado."""
        return self._consumed

    def record(self, node: Node) -> None:
        """
        Grava um nó produzido por primitiva.

        Raises:
            TapeConsumedException: Se a fita já foi consumida
        """
        if self._consumed:
            raise TapeConsumedException()
        self._records.append(node)

    def backward(self, root: Node, seed: Optional[np.ndarray] = None) -> None:
        """
        Propaga adjuntos do nó raiz para todos os nós gravados.

        Cada nó é visitado uma única vez, em ordem reversa de criação,
        portanto depois de todos os seus consumidores.

        Args:
            root: Nó de saída (escalar, a menos que seed seja fornecido)
            seed: Gradiente inicial (padrão: 1 para raiz escalar)

        Raises:
            TapeConsumedException: Se backward já foi executado nesta fita
            ValueError: Se raiz não escalar sem seed
        """
        if self._consumed:
            raise TapeConsumedException()
        if seed is None:
            if root.value.size != 1:
                raise ValueError("Backward de raiz não escalar exige seed explícito")
            seed = np.ones_like(root.value)
        root.grad = np.array(seed, dtype=np.float64).reshape(root.value.shape)

        for node in reversed(self._records):
            if node.grad is None or node.function is None or node.ctx is None:
                continue
            parent_grads = node.function.backward(node.ctx, node.grad)
            for parent, grad in zip(node.parents, parent_grads):
                if grad is None or not parent.requires_grad:
                    continue
                grad = np.asarray(grad, dtype=np.float64)
                if grad.shape != parent.value.shape:
                    raise ShapeMismatchException(
                        f"{node.function.name}.backward", (grad.shape, parent.value.shape)
                    )
                parent.grad = grad.copy() if parent.grad is None else parent.grad + grad

        self._consumed = True
        logger.debug(f"Backward concluído sobre {len(self._records)} nós")
        self._records.clear()
