"""Camada de domínio - Regras numéricas puras."""
