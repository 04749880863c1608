"""Otimizador SGD com momento e recorte de norma global."""
import math
from typing import Mapping, MutableMapping

import numpy as np

from weather_adapt.domain.autograd.node import Node


class SGDMomentum:
    """
    SGD com momento: v <- μ·v + g; θ <- θ - lr·v.

    Gradientes são recortados pela norma global antes do passo quando
    clip_norm > 0. Cada passo substitui os arrays dos parâmetros.
    """

    def __init__(self, momentum: float = 0.9, clip_norm: float = 0.0):
        """
        Inicializa otimizador.

        Raises:
            ValueError: Se momento fora de [0, 1] ou clip_norm negativo
        """
        if not 0.0 <= momentum <= 1.0:
            raise ValueError(f"Momento deve estar em [0, 1]: {momentum}")
        if clip_norm < 0.0:
            raise ValueError("Norma de recorte não pode ser negativa")
        self.momentum = momentum
        self.clip_norm = clip_norm

    @staticmethod
    def global_norm(parameters: Mapping[str, Node]) -> float:
        """Norma L2 de todos os gradientes."""
        total = sum(float(np.sum(p.grad**2)) for p in parameters.values() if p.grad is not None)
        return math.sqrt(total)

    def step(
        self,
        parameters: Mapping[str, Node],
        velocity: MutableMapping[str, np.ndarray],
        learning_rate: float,
    ) -> float:
        """
        Aplica um passo e zera os gradientes.

        Args:
            parameters: Nome -> parâmetro com gradiente acumulado
            velocity: Buffers de momento (criados sob demanda)
            learning_rate: Taxa deste passo

        Returns:
            Norma global do gradiente antes do recorte
        """
        norm = self.global_norm(parameters)
        factor = 1.0
        if self.clip_norm > 0.0 and norm > self.clip_norm:
            factor = self.clip_norm / norm
        for name, param in parameters.items():
            grad = np.zeros_like(param.value) if param.grad is None else param.grad * factor
            buffer = velocity.get(name)
            buffer = grad if buffer is None else self.momentum * buffer + grad
            velocity[name] = buffer
            param.value = param.value - learning_rate * buffer
            param.zero_grad()
        return norm
