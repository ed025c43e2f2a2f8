"""Catalog of exceptional entries, generic constructors and the presentation file format."""
