"""
Knowledge-base core.

Concepts, axioms, assertions and Boolean queries as frozen dataclasses, plus
homomorphism search, connected components and dialect checks.
"""
