"""Shapley values of knowledge-base elements for ontology-mediated queries."""

__version__ = "0.1.0"
