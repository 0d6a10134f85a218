from .service import Reasoner, default_reasoner, entails, is_consistent

__all__ = ["Reasoner", "default_reasoner", "entails", "is_consistent"]
