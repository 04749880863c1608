"""Entidade TrainerState (estado completo do treino teacher-student)."""
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.global_class_memory import GlobalClassMemory
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration


@dataclass
class TrainerState:
    """
    Estado mutável do treino.

    O student e o discriminador são folhas treináveis; o teacher guarda
    apenas arrays e só muda via EMA.

    Attributes:
        student: Parâmetros do student (nome -> nó treinável)
        teacher: Parâmetros do teacher (nome -> array), cópia independente
        discriminator: Parâmetros do discriminador de domínio
        memory: Memória global de classes
        iteration: Iteração atual t
        total_iterations: Total de iterações T
        rng: Gerador do sorteio de lotes
        velocity: Buffers de momento do otimizador
        config: Hiperparâmetros
    """

    student: dict[str, Node]
    teacher: dict[str, np.ndarray]
    discriminator: dict[str, Node]
    memory: GlobalClassMemory
    config: TrainingConfiguration
    rng: np.random.Generator
    iteration: int = 0
    total_iterations: int = 1
    velocity: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Valida estado."""
        self._validate()

    def _validate(self) -> None:
        """
        Valida invariantes.

        Raises:
            ValueError: Se teacher e student divergirem em estrutura ou t > T
        """
        if self.total_iterations <= 0:
            raise ValueError("Total de iterações deve ser positivo")
        if not 0 <= self.iteration <= self.total_iterations:
            raise ValueError(
                f"Iteração {self.iteration} fora de [0, {self.total_iterations}]"
            )
        if set(self.student) != set(self.teacher):
            raise ValueError("Teacher e student devem ter os mesmos parâmetros")
        for name, node in self.student.items():
            if node.shape != self.teacher[name].shape:
                raise ValueError(f"Forma divergente no parâmetro '{name}'")
            if self.teacher[name] is node.value:
                raise ValueError(f"Teacher compartilha memória com o student em '{name}'")

    @property
    def finished(self) -> bool:
        """Indica se todas as iterações foram executadas."""
        return self.iteration >= self.total_iterations

    def trainable(self) -> dict[str, Node]:
        """Todos os parâmetros atualizados por gradiente."""
        params = {f"student/{k}": v for k, v in self.student.items()}
        params.update({f"discriminator/{k}": v for k, v in self.discriminator.items()})
        return params

    def teacher_snapshot(self) -> dict[str, bytes]:
        """Impressão bit a bit dos parâmetros do teacher."""
        return {name: value.tobytes() for name, value in self.teacher.items()}

    def named_arrays(self) -> dict[str, np.ndarray]:
        """Todos os tensores do estado para checkpoint."""
        arrays: dict[str, np.ndarray] = {}
        for name, node in self.student.items():
            arrays[f"student/{name}"] = node.value
        for name, value in self.teacher.items():
            arrays[f"teacher/{name}"] = value
        for name, node in self.discriminator.items():
            arrays[f"discriminator/{name}"] = node.value
        for name, value in self.velocity.items():
            arrays[f"velocity/{name}"] = value
        arrays["memory/prototypes"] = self.memory.prototypes
        arrays["memory/counts"] = self.memory.counts.astype(np.float64)
        arrays["state/iteration"] = np.array([float(self.iteration), float(self.total_iterations)])
        return arrays

    def metadata(self) -> dict[str, Any]:
        """Metadados serializáveis (configuração e estado do RNG)."""
        return {
            "iteration": self.iteration,
            "total_iterations": self.total_iterations,
            "config": self.config.snapshot(),
            "rng_state": self.rng.bit_generator.state,
        }
