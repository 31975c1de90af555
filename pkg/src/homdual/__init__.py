"""Homomorphism dualities for finite relational structures and digraphs."""

__version__ = '0.1.0'
