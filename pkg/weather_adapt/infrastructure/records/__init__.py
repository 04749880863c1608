"""Arquivos de predições e rótulos."""
