"""Decision procedures for the unary temporal logic hierarchies of regular languages."""

__version__ = "0.1.0"
