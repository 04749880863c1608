"""Testes de integração do carregador de configuração."""
