"""Shared exception types."""


class DataError(Exception):
    """Malformed or inconsistent input data (files, tables, records)."""
