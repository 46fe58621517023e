"""Combinatorial list-decoding of Reed-Solomon codes: exact oracles and certificates."""

__version__ = "0.1.0"
