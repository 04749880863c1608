"""Value objects de domínio."""
