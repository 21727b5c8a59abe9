"""Small triangulations of small covers and real projective spaces."""

__version__ = "0.1.0"
