"""Testes de integração do relatório de ablação."""
