"""Equational reasoning for medial groupoids and the operations +-x+-y."""

__version__ = "0.1.0"
