"""Camada de apresentação: linha de comando e container de dependências."""
