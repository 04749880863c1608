"""Entidade RunManifest (registro reprodutível de uma execução)."""
from dataclasses import dataclass, field
from typing import Any


@dataclass
class RunManifest:
    """
    Manifesto de uma execução da linha de comando.

    Attributes:
        command: Subcomando executado
        config: Instantâneo da configuração efetiva
        seed: Semente global
        inputs: Caminhos de entrada
        outputs: Caminhos de saída
        artifacts: Caminho relativo -> sha256 dos artefatos primários
        wall_clock_seconds: Duração da execução
        failures: Falhas por item (execução continua)
    """

    command: str
    config: dict[str, Any]
    seed: int
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    artifacts: dict[str, str] = field(default_factory=dict)
    wall_clock_seconds: float = 0.0
    failures: list[dict[str, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Valida manifesto."""
        if not self.command.strip():
            raise ValueError("Comando do manifesto não pode ser vazio")

    @property
    def succeeded(self) -> bool:
        """Indica execução sem falhas por item."""
        return not self.failures

    def add_failure(self, item: str, reason: str) -> None:
        """Registra falha de um item."""
        self.failures.append({"item": item, "reason": reason})

    def to_dict(self) -> dict[str, Any]:
        """Serializa para JSON com chaves estáveis."""
        return {
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "artifacts": dict(sorted(self.artifacts.items())),
            "wall_clock_seconds": self.wall_clock_seconds,
            "failures": self.failures,
            "succeeded": self.succeeded,
        }
