"""Testes de integração dos checkpoints."""
