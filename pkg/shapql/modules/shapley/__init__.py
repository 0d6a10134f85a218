from .schemas import Estimate, ShapleyResult
from .service import shapley_all, shapley_exact_permutation, shapley_exact_subset

__all__ = [
    "Estimate",
    "ShapleyResult",
    "shapley_all",
    "shapley_exact_permutation",
    "shapley_exact_subset",
]
