"""Tabelas de métricas e features."""
