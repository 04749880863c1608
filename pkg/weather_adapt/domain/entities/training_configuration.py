"""Entidade TrainingConfiguration (hiperparâmetros de um experimento)."""
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Optional

from weather_adapt.domain.value_objects.domain_tag import DomainTag
from weather_adapt.domain.value_objects.lr_schedule import LrSchedule


@dataclass(frozen=True)
class TrainingConfiguration:
    """
    Hiperparâmetros do treino teacher-student com QDDM.

    Os valores padrão seguem o método; AdamW fica registrado mas não é
    usado (o detector de brinquedo treina com SGD com momento).

    Attributes:
        alpha_start / alpha_end: Extremos do aquecimento do coeficiente EMA
        fixed_alpha: Se definido, substitui o aquecimento por α constante
        beta: Limiar de confiança dos pseudo rótulos
        gamma: Limiar de confiança das consultas nos centros de classe
        lambda_dom / lambda_con: Pesos máximos das perdas de domínio e contrastiva
        lambda_box: Peso do termo de caixa no custo de casamento
        tau: Temperatura da perda contrastiva
        ramp_fraction: Fração inicial das iterações com rampa linear
        nms_threshold: Limiar de IoU do NMS dos pseudo rótulos
        target_domains: Condições alvo sorteadas por lote (treino unificado)
        evaluate_all_targets: Valida nas três condições alvo, não só nas de treino
    """

    seed: int = 42
    iterations: int = 300
    batch_size: int = 2
    num_classes: int = 3
    grid_size: int = 3
    cell_size: float = 4.0
    feature_dim: int = 16
    hidden_dim: int = 32
    query_embedding_dim: int = 8
    discriminator_hidden: int = 64
    alpha_start: float = 0.95
    alpha_end: float = 0.99
    fixed_alpha: Optional[float] = None
    beta: float = 0.9
    gamma: float = 0.5
    lambda_dom: float = 0.1
    lambda_con: float = 0.1
    lambda_box: float = 2.0
    tau: float = 0.07
    ramp_fraction: float = 0.2
    nms_threshold: float = 0.2
    learning_rate: float = 0.01
    momentum: float = 0.9
    lr_schedule: LrSchedule = LrSchedule.CONSTANT
    grad_clip_norm: float = 5.0
    adamw_learning_rate: float = 2e-4
    adamw_weight_decay: float = 0.01
    self_training: bool = True
    qddm: bool = True
    use_bev_iou: bool = False
    supervise_empty_pseudo: bool = True
    flip_augmentation: bool = True
    target_domains: tuple[DomainTag, ...] = (DomainTag.TARGET_NIGHT,)
    evaluate_all_targets: bool = False
    source_scenes: int = 96
    target_scenes: int = 96
    val_scenes: int = 48
    source_noise: float = 0.05
    night_offset: float = 0.6
    night_noise: float = 0.25
    haze_attenuation: float = 0.6
    haze_airlight: float = 0.8
    rain_spike_rate: float = 0.15
    rain_spike_value: float = 1.5

    def __post_init__(self) -> None:
        """Valida configuração."""
        object.__setattr__(self, "target_domains", tuple(self.target_domains))
        self._validate()

    def _validate(self) -> None:
        """
        Valida valores de configuração.

        Raises:
            ValueError: Se valores inválidos
        """
        for name in (
            "iterations",
            "batch_size",
            "num_classes",
            "grid_size",
            "feature_dim",
            "hidden_dim",
            "query_embedding_dim",
            "discriminator_hidden",
            "source_scenes",
            "target_scenes",
            "val_scenes",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"'{name}' deve ser maior que zero")

        if self.grid_size < 2:
            raise ValueError("Grade deve ter ao menos 2 células por lado")

        for name in ("alpha_start", "alpha_end", "beta", "gamma", "nms_threshold", "momentum"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"'{name}' deve estar em [0, 1]: {value}")

        if self.fixed_alpha is not None and not 0.0 <= self.fixed_alpha <= 1.0:
            raise ValueError(f"'fixed_alpha' deve estar em [0, 1]: {self.fixed_alpha}")

        if not 0.0 < self.ramp_fraction <= 1.0:
            raise ValueError(f"'ramp_fraction' deve estar em (0, 1]: {self.ramp_fraction}")

        if self.tau <= 0.0:
            raise ValueError(f"Temperatura deve ser positiva: {self.tau}")

        for name in ("lambda_dom", "lambda_con", "lambda_box", "grad_clip_norm", "cell_size"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"'{name}' não pode ser negativo")

        if self.learning_rate <= 0.0:
            raise ValueError("Taxa de aprendizado deve ser positiva")

        if not self.target_domains:
            raise ValueError("Informe ao menos um domínio alvo")
        if any(not tag.is_target for tag in self.target_domains):
            raise ValueError("target_domains aceita apenas night, rain e haze")

        for name in ("source_noise", "night_noise", "rain_spike_value", "night_offset"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"'{name}' não pode ser negativo")
        for name in ("haze_attenuation", "haze_airlight", "rain_spike_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"'{name}' deve estar em [0, 1]")

    @property
    def num_queries(self) -> int:
        """Número de consultas N_Q (uma por célula da grade)."""
        return self.grid_size * self.grid_size

    @classmethod
    def field_names(cls) -> list[str]:
        """Nomes de todas as chaves aceitas."""
        return [f.name for f in fields(cls)]

    def with_overrides(self, **overrides: Any) -> "TrainingConfiguration":
        """Retorna cópia com campos substituídos (revalidada)."""
        return replace(self, **overrides)

    def snapshot(self) -> dict[str, Any]:
        """Retorna dicionário serializável em JSON."""
        data = asdict(self)
        data["lr_schedule"] = str(self.lr_schedule)
        data["target_domains"] = [str(tag) for tag in self.target_domains]
        return data
