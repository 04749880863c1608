"""Testes de integração dos registros JSON lines."""
