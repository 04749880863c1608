"""Interfaces de serviços externos."""
