"""Leitura e escrita de imagens."""
