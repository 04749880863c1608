"""Permite ``python -m weather_adapt``."""
from weather_adapt.main import run

run()
