"""Testes da camada de aplicação."""
