"""Verificação de gradientes por diferenças centrais."""
import logging
from typing import Callable

import numpy as np

from weather_adapt.domain.autograd.functions import ReversalAnchors, anchored_reversal
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.autograd.tape import Tape
from weather_adapt.domain.exceptions.domain_exceptions import NonFiniteValueException

logger = logging.getLogger(__name__)

GraphBuilder = Callable[[Node], Node]

DEFAULT_STEP = 1e-5


def _evaluate(f: GraphBuilder, x: np.ndarray) -> float:
    value = f(Node(x)).value
    if value.size != 1:
        raise ValueError(f"Função de grad_check deve ser escalar, forma {value.shape}")
    result = float(value.reshape(-1)[0])
    if not np.isfinite(result):
        raise NonFiniteValueException("grad_check (diferenças finitas)")
    return result


def analytic_gradient(f: GraphBuilder, x: np.ndarray) -> np.ndarray:
    """
    Gradiente reverso de f no ponto x.

    Raises:
        NonFiniteValueException: Se a saída ou o gradiente não forem finitos
    """
    leaf = Node(np.array(x, dtype=np.float64), requires_grad=True)
    with Tape() as tape:
        out = f(leaf)
    if out.value.size != 1:
        raise ValueError(f"Função de grad_check deve ser escalar, forma {out.shape}")
    if not np.all(np.isfinite(out.value)):
        raise NonFiniteValueException("grad_check (forward)")
    tape.backward(out)
    grad = np.zeros_like(leaf.value) if leaf.grad is None else leaf.grad
    if not np.all(np.isfinite(grad)):
        raise NonFiniteValueException("grad_check (backward)")
    return grad


def numeric_gradient(f: GraphBuilder, x: np.ndarray, step: float = DEFAULT_STEP) -> np.ndarray:
    """
    Gradiente por diferenças centrais coordenada a coordenada.

    As GRLs ficam ancoradas nas entradas do ponto base (grl(v) = 2·v0 - v),
    de modo que a referência numérica inclui a reversão do gradiente.
    """
    base = np.array(x, dtype=np.float64)
    anchors = ReversalAnchors()
    with anchored_reversal(anchors):
        _evaluate(f, base)

    def shifted(delta: np.ndarray) -> float:
        with anchored_reversal(anchors.replay()):
            return _evaluate(f, base + delta)

    grad = np.zeros_like(base)
    flat = grad.reshape(-1)
    for i in range(base.size):
        delta = np.zeros(base.size)
        delta[i] = step
        delta = delta.reshape(base.shape)
        flat[i] = (shifted(delta) - shifted(-delta)) / (2.0 * step)
    return grad


def grad_check(f: GraphBuilder, x: np.ndarray, step: float = DEFAULT_STEP) -> float:
    """
    Compara o gradiente reverso com diferenças centrais.

    Args:
        f: Construtor de grafo escalar a partir do nó de entrada
        x: Ponto de avaliação
        step: Passo das diferenças centrais

    Returns:
        max_i |g_ad - g_fd| / max(1, |g_ad|, |g_fd|)

    Raises:
        NonFiniteValueException: Se algum valor intermediário não for finito
    """
    if step <= 0.0:
        raise ValueError(f"Passo deve ser positivo: {step}")
    g_ad = analytic_gradient(f, x)
    g_fd = numeric_gradient(f, x, step)
    denom = np.maximum(1.0, np.maximum(np.abs(g_ad), np.abs(g_fd)))
    error = float(np.max(np.abs(g_ad - g_fd) / denom)) if g_ad.size else 0.0
    logger.debug(f"grad_check: erro relativo máximo {error:.3e} em {g_ad.size} coordenadas")
    return error
