"""Discriminador de domínio e perda adversarial sobre centros de classe."""
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from weather_adapt.domain.autograd import ops
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.entities.class_centers import ClassCenters

Discriminate = Callable[[Node], Node]


class DomainDiscriminator:
    """
    MLP D -> H (relu) -> 1 (sigmoid).

    Attributes:
        parameters: Nome -> nó treinável (w1, b1, w2, b2)
    """

    def __init__(self, parameters: Mapping[str, Node]):
        """
        Inicializa com parâmetros existentes.

        Raises:
            ValueError: Se faltar algum parâmetro ou formas incompatíveis
        """
        missing = {"w1", "b1", "w2", "b2"} - set(parameters)
        if missing:
            raise ValueError(f"Parâmetros ausentes no discriminador: {sorted(missing)}")
        self.parameters = dict(parameters)
        d, h = self.parameters["w1"].shape
        if self.parameters["b1"].shape != (1, h) or self.parameters["w2"].shape != (h, 1):
            raise ValueError("Formas inconsistentes no discriminador")

    @property
    def input_dim(self) -> int:
        """Dimensão D de entrada."""
        return int(self.parameters["w1"].shape[0])

    @staticmethod
    def init_parameters(
        input_dim: int, hidden: int, rng: np.random.Generator
    ) -> dict[str, np.ndarray]:
        """Inicialização He para a camada oculta e Xavier para a saída."""
        return {
            "w1": rng.normal(0.0, np.sqrt(2.0 / input_dim), size=(input_dim, hidden)),
            "b1": np.zeros((1, hidden)),
            "w2": rng.normal(0.0, np.sqrt(1.0 / hidden), size=(hidden, 1)),
            "b2": np.zeros((1, 1)),
        }

    def __call__(self, x: Node) -> Node:
        """Probabilidade de domínio alvo por linha, (N, 1) em (0, 1)."""
        p = self.parameters
        hidden = ops.relu(ops.add(ops.matmul(x, p["w1"]), p["b1"]))
        return ops.sigmoid(ops.add(ops.matmul(hidden, p["w2"]), p["b2"]))


@dataclass(frozen=True, eq=False)
class AdversarialLoss:
    """
    Perda adversarial de domínio.

    Attributes:
        loss: Nó escalar
        empty: Nenhum centro em nenhum domínio (perda zero)
        source_terms / target_terms: Número de termos por domínio
    """

    loss: Node
    empty: bool
    source_terms: int = 0
    target_terms: int = 0


def domain_adversarial_loss(
    source: ClassCenters, target: ClassCenters, discriminator: Discriminate
) -> AdversarialLoss:
    """
    BCE do discriminador sobre centros que passam pela reversão de gradiente.

    Cada centro presente entra com o rótulo do seu domínio (0 source,
    1 alvo); categorias ausentes em um domínio não geram termo.

    Args:
        source: Centros do domínio source
        target: Centros do domínio alvo
        discriminator: Mapeia (N, D) em probabilidades (N, 1)

    Returns:
        Perda somada e metadados
    """
    src_nodes = [source.centers[k] for k in source.categories]
    tgt_nodes = [target.centers[k] for k in target.categories]
    if not src_nodes and not tgt_nodes:
        return AdversarialLoss(loss=ops.constant(0.0), empty=True)

    stacked = ops.concat(src_nodes + tgt_nodes, axis=0)
    probs = discriminator(ops.grl(stacked))
    n_src = len(src_nodes)
    terms: list[Node] = []
    if src_nodes:
        p_src = ops.take_rows(probs, range(n_src))
        terms.append(ops.neg(ops.sum(ops.log(ops.sub(1.0, p_src)))))
    if tgt_nodes:
        p_tgt = ops.take_rows(probs, range(n_src, n_src + len(tgt_nodes)))
        terms.append(ops.neg(ops.sum(ops.log(p_tgt))))
    loss = terms[0] if len(terms) == 1 else ops.add(terms[0], terms[1])
    return AdversarialLoss(
        loss=loss, empty=False, source_terms=n_src, target_terms=len(tgt_nodes)
    )
