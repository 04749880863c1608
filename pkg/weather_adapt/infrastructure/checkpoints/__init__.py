"""Persistência de checkpoints."""
