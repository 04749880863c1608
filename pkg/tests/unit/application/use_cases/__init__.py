"""Testes de casos de uso."""
