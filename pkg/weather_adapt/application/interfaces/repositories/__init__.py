"""Interfaces de repositórios (portas de arquivos)."""
