"""Exceções de domínio."""
