"""Manifestos de execução."""
