"""Exportação de relatórios Excel."""
