"""Adaptadores de infraestrutura (arquivos, imagens, relatórios)."""
