"""Entidades de domínio."""
