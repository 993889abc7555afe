"""Dataclasses and exceptions for instances, games and results."""
