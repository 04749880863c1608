"""Interfaces (ports) da camada de aplicação."""
