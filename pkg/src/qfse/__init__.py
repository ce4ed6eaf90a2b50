"""Query-focused summary expansion: engines, evaluation toolkit and service."""

__version__ = "0.1.0"
