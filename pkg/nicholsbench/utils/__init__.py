"""Logging and export utilities."""
