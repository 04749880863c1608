"""Testes de integração da camada de infraestrutura."""
