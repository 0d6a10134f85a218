from .models import ProbabilisticABox
from .service import pqe_exact

__all__ = ["ProbabilisticABox", "pqe_exact"]
