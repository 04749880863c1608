"""Atalho para executar a linha de comando a partir da raiz do repositório."""
from weather_adapt.main import run

if __name__ == "__main__":
    run()
