"""Search and verification tools for trees of minimal atom-bond connectivity index."""

__version__ = "0.1.0"
