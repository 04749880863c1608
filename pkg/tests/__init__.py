"""Testes do projeto."""
