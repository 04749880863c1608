"""Weather Adapt - Treinamento adaptativo de domínio para detecção 3D sob clima adverso."""

__version__ = "1.0.0"
