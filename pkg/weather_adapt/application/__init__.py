"""Camada de aplicação - Casos de uso e portas."""
