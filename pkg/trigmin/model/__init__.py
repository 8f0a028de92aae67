"""___init___."""
