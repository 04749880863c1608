"""Testes unitários de domínio."""
