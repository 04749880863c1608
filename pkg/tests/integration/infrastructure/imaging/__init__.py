"""Testes de integração dos repositórios de imagens."""
