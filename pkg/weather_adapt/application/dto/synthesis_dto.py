"""DTO para resultado da síntese de clima."""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from weather_adapt.domain.entities.run_manifest import RunManifest


@dataclass
class SynthesisResultDTO:
    """
    Resultado de uma execução de síntese.

    Attributes:
        outputs: Imagens escritas, na ordem das entradas
        failures: Arquivo -> motivo da falha
        manifest: Manifesto da execução
        manifest_path: Onde o manifesto foi escrito
    """

    outputs: list[Path]
    failures: dict[str, str] = field(default_factory=dict)
    manifest: Optional[RunManifest] = None
    manifest_path: Optional[Path] = None

    @property
    def succeeded(self) -> bool:
        """Indica execução sem falhas por arquivo."""
        return not self.failures
