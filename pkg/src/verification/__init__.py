"""Seeded verification suites over every algebra module."""
