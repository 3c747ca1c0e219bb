"""Finite truncated simplicial sets, enriched categories, and the
stratified-Grassmannian verification toolkit built on them."""

__version__ = "0.1.0"
