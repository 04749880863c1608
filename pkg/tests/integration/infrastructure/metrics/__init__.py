"""Testes de integração dos arquivos CSV."""
