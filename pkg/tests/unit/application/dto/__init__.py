"""Testes de DTOs."""
