"""Detector de consultas de brinquedo sobre cenas rasterizadas."""
from typing import Mapping

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.query_batch import BOX_PARAMS, QueryBatch
from weather_adapt.domain.entities.toy_scene import DESCRIPTOR_CHANNELS, ToyScene
from weather_adapt.domain.entities.training_configuration import TrainingConfiguration
from weather_adapt.domain.services.toy_scene_generator import cell_centers

PARAMETER_NAMES = (
    "w_global",
    "b_global",
    "query_embed",
    "w_hidden",
    "b_hidden",
    "w_cls",
    "b_cls",
    "w_box",
    "b_box",
)

SIZE_PRIOR = (1.5, 1.7, 2.5)


class ToyDetector:
    """
    Detector com uma consulta por célula da grade.

    Cada consulta combina os canais da sua célula, uma codificação MLP
    global da cena e um embedding aprendido; a feature da consulta
    alimenta as cabeças de classe (K + fundo) e de caixa.

    A saída de caixa é (x, y, z, w, h, l, sin, cos): posição relativa ao
    centro da célula e dimensões pela exponencial.
    """

    def __init__(self, config: TrainingConfiguration):
        """Inicializa arquitetura a partir da configuração."""
        self.num_queries = config.num_queries
        self.num_classes = config.num_classes
        self.feature_dim = config.feature_dim
        self.hidden_dim = config.hidden_dim
        self.embedding_dim = config.query_embedding_dim
        centers = cell_centers(config.grid_size, config.cell_size)
        self._reference = np.hstack([centers, np.zeros((self.num_queries, 1))])

    def init_parameters(self, rng: np.random.Generator) -> dict[str, np.ndarray]:
        """Inicialização He das camadas e viés de fundo positivo."""
        descriptor_size = self.num_queries * DESCRIPTOR_CHANNELS
        query_input = DESCRIPTOR_CHANNELS + self.hidden_dim + self.embedding_dim
        b_cls = np.zeros((1, self.num_classes + 1))
        b_cls[0, -1] = 1.0
        b_box = np.zeros((1, BOX_PARAMS))
        b_box[0, 3:6] = np.log(SIZE_PRIOR)
        b_box[0, 7] = 1.0
        return {
            "w_global": rng.normal(0.0, np.sqrt(2.0 / descriptor_size), (descriptor_size, self.hidden_dim)),
            "b_global": np.zeros((1, self.hidden_dim)),
            "query_embed": rng.normal(0.0, 0.1, (self.num_queries, self.embedding_dim)),
            "w_hidden": rng.normal(0.0, np.sqrt(2.0 / query_input), (query_input, self.feature_dim)),
            "b_hidden": np.full((1, self.feature_dim), 0.01),
            "w_cls": rng.normal(0.0, np.sqrt(1.0 / self.feature_dim), (self.feature_dim, self.num_classes + 1)),
            "b_cls": b_cls,
            "w_box": rng.normal(0.0, 0.1 / np.sqrt(self.feature_dim), (self.feature_dim, BOX_PARAMS)),
            "b_box": b_box,
        }

    def forward(self, parameters: Mapping[str, Node], scene: ToyScene) -> QueryBatch:
        """
        Executa o detector sobre uma cena.

        Args:
            parameters: Nome -> nó (treinável no student, constante no teacher)
            scene: Cena com descritor (N_Q, 10)

        Returns:
            Saídas por consulta no domínio da cena

        Raises:
            ValueError: Se o descritor não corresponder à grade
        """
        if scene.descriptor.shape[0] != self.num_queries:
            raise ValueError(
                f"Cena com {scene.descriptor.shape[0]} células; detector espera {self.num_queries}"
            )
        p = parameters
        cells = ops.constant(scene.descriptor)
        flat = ops.constant(scene.descriptor.reshape(1, -1))

        scene_code = ops.relu(ops.add(ops.matmul(flat, p["w_global"]), p["b_global"]))
        per_query = ops.take_rows(scene_code, [0] * self.num_queries)
        inputs = ops.concat([cells, per_query, p["query_embed"]], axis=1)
        features = ops.relu(ops.add(ops.matmul(inputs, p["w_hidden"]), p["b_hidden"]))

        logits = ops.add(ops.matmul(features, p["w_cls"]), p["b_cls"])
        raw = ops.add(ops.matmul(features, p["w_box"]), p["b_box"])
        position = ops.add(ops.slice_cols(raw, 0, 3), self._reference)
        extents = ops.exp(ops.slice_cols(raw, 3, 6))
        angle = ops.slice_cols(raw, 6, 8)
        box_params = ops.concat([position, extents, angle], axis=1)
        return QueryBatch(features=features, logits=logits, box_params=box_params, domain=scene.domain)


def as_constants(arrays: Mapping[str, np.ndarray]) -> dict[str, Node]:
    """Parâmetros como constantes (forward sem gradiente)."""
    return {name: Node(value) for name, value in arrays.items()}


def as_trainable(arrays: Mapping[str, np.ndarray], prefix: str = "") -> dict[str, Node]:
    """Parâmetros como folhas treináveis (cópias)."""
    return {
        name: Node(np.array(value, dtype=np.float64), requires_grad=True, name=f"{prefix}{name}")
        for name, value in arrays.items()
    }
