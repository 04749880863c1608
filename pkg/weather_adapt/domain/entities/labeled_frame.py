"""Entidades de rótulos e quadros rotulados."""
from dataclasses import dataclass, field
from typing import Any, Optional

from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.domain_tag import DomainTag


@dataclass(frozen=True)
class PseudoLabelProvenance:
    """
    Origem de um pseudo rótulo para auditoria.

    Attributes:
        teacher_iteration: Iteração do teacher que produziu a predição
        beta: Limiar de confiança usado no filtro
    """

    teacher_iteration: int
    beta: float

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON."""
        return {"teacher_iteration": self.teacher_iteration, "beta": self.beta}


@dataclass(frozen=True)
class LabeledBox:
    """
    Caixa com categoria (rótulo verdadeiro ou pseudo rótulo).

    Attributes:
        box: Caixa 3D
        category: Índice da categoria em [0, K)
        provenance: Presente apenas em pseudo rótulos
    """

    box: Box3D
    category: int
    provenance: Optional[PseudoLabelProvenance] = None

    def __post_init__(self) -> None:
        """Valida categoria."""
        if self.category < 0:
            raise ValueError(f"Categoria deve ser não negativa: {self.category}")

    @property
    def is_pseudo(self) -> bool:
        """Indica se o rótulo veio do teacher."""
        return self.provenance is not None


@dataclass(frozen=True)
class LabeledFrame:
    """
    Quadro de treino ou avaliação.

    Quadros source carregam rótulos; quadros alvo podem não ter nenhum.

    Attributes:
        reference: Caminho da imagem ou identificador da cena sintética
        domain: Domínio do quadro
        labels: Lista de caixas rotuladas
        num_classes: Número de categorias K
    """

    reference: str
    domain: DomainTag
    labels: tuple[LabeledBox, ...] = field(default_factory=tuple)
    num_classes: int = 3

    def __post_init__(self) -> None:
        """Valida categorias."""
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.reference:
            raise ValueError("Referência do quadro não pode ser vazia")
        if self.num_classes <= 0:
            raise ValueError("Número de categorias deve ser positivo")
        for label in self.labels:
            if label.category >= self.num_classes:
                raise ValueError(
                    f"Categoria {label.category} fora de [0, {self.num_classes}) "
                    f"no quadro {self.reference}"
                )

    @property
    def is_labeled(self) -> bool:
        """Indica se o quadro possui rótulos."""
        return len(self.labels) > 0
