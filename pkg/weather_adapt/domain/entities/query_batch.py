"""Entidade QueryBatch (saídas por consulta do detector)."""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection, softmax
from weather_adapt.domain.value_objects.domain_tag import DomainTag

BOX_PARAMS = 8


def box_from_params(params: np.ndarray) -> Box3D:
    """Converte (x, y, z, w, h, l, sin, cos) em Box3D."""
    x, y, z, w, h, length, s, c = (float(v) for v in params)
    return Box3D(x, y, z, w, h, length, math.atan2(s, c))


def box_to_params(box: Box3D) -> np.ndarray:
    """Converte Box3D em (x, y, z, w, h, l, sin, cos)."""
    return np.array(
        [box.x, box.y, box.z, box.w, box.h, box.l, math.sin(box.yaw), math.cos(box.yaw)]
    )


@dataclass(frozen=True, eq=False)
class QueryBatch:
    """
    Saídas por consulta de um detector para um ou mais quadros.

    Attributes:
        features: Nó (N_Q, D) com as features das consultas
        logits: Nó (N_Q, K+1), fundo na última coluna
        box_params: Nó (N_Q, 8) com (x, y, z, w, h, l, sin yaw, cos yaw)
        domain: Domínio dos quadros
    """

    features: Node
    logits: Node
    box_params: Node
    domain: DomainTag

    def __post_init__(self) -> None:
        """Valida formas."""
        n = self.features.shape[0] if len(self.features.shape) == 2 else -1
        if n < 0 or self.logits.shape[:1] != (n,) or self.box_params.shape != (n, BOX_PARAMS):
            raise ValueError(
                "QueryBatch com formas inconsistentes: "
                f"features={self.features.shape}, logits={self.logits.shape}, "
                f"boxes={self.box_params.shape}"
            )
        if len(self.logits.shape) != 2 or self.logits.shape[1] < 2:
            raise ValueError("Logits devem ter ao menos uma categoria e o fundo")

    @property
    def num_queries(self) -> int:
        """Número de consultas N_Q."""
        return int(self.features.shape[0])

    @property
    def feature_dim(self) -> int:
        """Dimensão D das features."""
        return int(self.features.shape[1])

    @property
    def num_classes(self) -> int:
        """Número de categorias de objeto K (sem o fundo)."""
        return int(self.logits.shape[1]) - 1

    @property
    def background(self) -> int:
        """Índice da classe de fundo."""
        return self.num_classes

    def probabilities(self) -> np.ndarray:
        """Softmax por linha dos logits (valores, fora do grafo)."""
        return np.vstack([softmax(row) for row in self.logits.value])

    @property
    def boxes(self) -> tuple[Box3D, ...]:
        """Caixas decodificadas de cada consulta."""
        return tuple(box_from_params(row) for row in self.box_params.value)

    def detections(self) -> list[Detection]:
        """
        Converte consultas em detecções.

        Consultas cujo argmax é o fundo não geram detecção; as demais
        carregam a distribuição completa sobre K+1 classes.
        """
        probs = self.probabilities()
        result: list[Detection] = []
        for row, params in zip(probs, self.box_params.value):
            if int(np.argmax(row)) == self.background:
                continue
            result.append(Detection.from_probs(box_from_params(params), row))
        return result

    @staticmethod
    def stack(batches: Sequence["QueryBatch"]) -> "QueryBatch":
        """
        Empilha lotes do mesmo domínio preservando o grafo.

        Raises:
            ValueError: Se lista vazia ou domínios diferentes
        """
        if not batches:
            raise ValueError("Nenhum QueryBatch para empilhar")
        domains = {b.domain for b in batches}
        if len(domains) != 1:
            raise ValueError(f"Lotes de domínios diferentes: {sorted(str(d) for d in domains)}")
        if len(batches) == 1:
            return batches[0]
        return QueryBatch(
            features=ops.concat([b.features for b in batches], axis=0),
            logits=ops.concat([b.logits for b in batches], axis=0),
            box_params=ops.concat([b.box_params for b in batches], axis=0),
            domain=batches[0].domain,
        )
