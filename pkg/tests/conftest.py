"""Keeps tests/ importable (oracles.py) under pytest's default import mode."""
