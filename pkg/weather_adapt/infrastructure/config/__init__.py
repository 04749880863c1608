"""Leitura de configuração."""
