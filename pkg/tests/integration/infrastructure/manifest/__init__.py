"""Testes de integração do escritor de manifestos."""
