from .schemas import SupportSet
from .service import enumerate_supports, minimal_supports

__all__ = ["SupportSet", "enumerate_supports", "minimal_supports"]
