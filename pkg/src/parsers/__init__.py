"""Instance and config JSON parsing."""
