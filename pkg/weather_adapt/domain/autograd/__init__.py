"""Motor mínimo de diferenciação reversa (posto <= 2) com reversão de gradiente."""
from weather_adapt.domain.autograd.gradcheck import grad_check
from weather_adapt.domain.autograd.node import Node
from weather_adapt.domain.autograd.tape import Tape

__all__ = ["Node", "Tape", "grad_check"]
