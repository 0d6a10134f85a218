import os
from enum import Enum
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()


class Environment(str, Enum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        import warnings

        warnings.warn(
            f"{name}={raw!r} is not an integer, using {default}",
            UserWarning,
            stacklevel=3,
        )
        return default


class Settings:
    """
    SHAPQL_ENV: Current environment (development, production)
    SHAPQL_DEBUG: Enable debug logging
    SHAPQL_THREADS: Worker threads used when --threads is not given
    SHAPQL_CHASE_DEPTH: Fixed chase depth overriding the per-query default
    SHAPQL_EXACT_PLAYER_LIMIT: Max players for the exact subset sweep
    SHAPQL_PERMUTATION_PLAYER_LIMIT: Max players for permutation enumeration
    SHAPQL_PQE_UNCERTAIN_LIMIT: Max facts with probability < 1 for brute-force PQE
    SHAPQL_ST_COUNT_EDGE_LIMIT: Max edges for the s-t connectedness pipeline
    SHAPQL_ST_BRUTE_EDGE_LIMIT: Max edges for the brute-force s-t oracle
    SHAPQL_IS_COUNT_VERTEX_LIMIT: Max vertices for the independent-set pipeline
    SHAPQL_IS_BRUTE_VERTEX_LIMIT: Max vertices for the brute-force independent-set oracle
    SHAPQL_BIJECTION_VERTEX_LIMIT: Max vertices for the coalition bijection sweep
    SHAPQL_SAMPLE_LIMIT: Max permutations a single sampling run may draw
    SHAPQL_MEMO_SIZE: Entries kept in the shared entailment memo
    """

    def __init__(self):
        env_value = os.getenv("SHAPQL_ENV", "development").lower()

        try:
            self.SHAPQL_ENV = Environment(env_value)
        except ValueError:
            self.SHAPQL_ENV = Environment.DEVELOPMENT

        debug_env = os.getenv("SHAPQL_DEBUG")
        if debug_env is not None:
            self.DEBUG = debug_env.lower() in ("true", "1", "yes")
        else:
            self.DEBUG = False

        self.THREADS: int = _int_env("SHAPQL_THREADS", 1)

        chase_depth = os.getenv("SHAPQL_CHASE_DEPTH")
        self.CHASE_DEPTH: int | None = (
            int(chase_depth) if chase_depth and chase_depth.strip().isdigit() else None
        )

        self.EXACT_PLAYER_LIMIT: int = _int_env("SHAPQL_EXACT_PLAYER_LIMIT", 20)
        self.PERMUTATION_PLAYER_LIMIT: int = _int_env(
            "SHAPQL_PERMUTATION_PLAYER_LIMIT", 8
        )
        self.PQE_UNCERTAIN_LIMIT: int = _int_env("SHAPQL_PQE_UNCERTAIN_LIMIT", 20)
        self.ST_COUNT_EDGE_LIMIT: int = _int_env("SHAPQL_ST_COUNT_EDGE_LIMIT", 12)
        self.ST_BRUTE_EDGE_LIMIT: int = _int_env("SHAPQL_ST_BRUTE_EDGE_LIMIT", 20)
        self.IS_COUNT_VERTEX_LIMIT: int = _int_env("SHAPQL_IS_COUNT_VERTEX_LIMIT", 8)
        self.IS_BRUTE_VERTEX_LIMIT: int = _int_env("SHAPQL_IS_BRUTE_VERTEX_LIMIT", 24)
        self.BIJECTION_VERTEX_LIMIT: int = _int_env(
            "SHAPQL_BIJECTION_VERTEX_LIMIT", 12
        )
        self.SAMPLE_LIMIT: int = _int_env("SHAPQL_SAMPLE_LIMIT", 1_000_000)
        self.MEMO_SIZE: int = _int_env("SHAPQL_MEMO_SIZE", 200_000)

        self._validate()

    def _validate(self):
        import warnings

        limits = {
            "SHAPQL_THREADS": "THREADS",
            "SHAPQL_EXACT_PLAYER_LIMIT": "EXACT_PLAYER_LIMIT",
            "SHAPQL_PERMUTATION_PLAYER_LIMIT": "PERMUTATION_PLAYER_LIMIT",
            "SHAPQL_PQE_UNCERTAIN_LIMIT": "PQE_UNCERTAIN_LIMIT",
            "SHAPQL_ST_COUNT_EDGE_LIMIT": "ST_COUNT_EDGE_LIMIT",
            "SHAPQL_ST_BRUTE_EDGE_LIMIT": "ST_BRUTE_EDGE_LIMIT",
            "SHAPQL_IS_COUNT_VERTEX_LIMIT": "IS_COUNT_VERTEX_LIMIT",
            "SHAPQL_IS_BRUTE_VERTEX_LIMIT": "IS_BRUTE_VERTEX_LIMIT",
            "SHAPQL_BIJECTION_VERTEX_LIMIT": "BIJECTION_VERTEX_LIMIT",
            "SHAPQL_SAMPLE_LIMIT": "SAMPLE_LIMIT",
            "SHAPQL_MEMO_SIZE": "MEMO_SIZE",
        }

        for env_name, attr in limits.items():
            if getattr(self, attr) >= 1:
                continue
            if self.is_production:
                raise ValueError(f"{env_name} must be a positive integer")
            warnings.warn(
                f"{env_name} must be a positive integer. Falling back to 1.",
                UserWarning,
                stacklevel=2,
            )
            setattr(self, attr, 1)

    @property
    def is_development(self) -> bool:
        return self.SHAPQL_ENV == Environment.DEVELOPMENT

    @property
    def is_production(self) -> bool:
        return self.SHAPQL_ENV == Environment.PRODUCTION

    def __repr__(self) -> str:
        return (
            f"Settings(SHAPQL_ENV={self.SHAPQL_ENV.value}, "
            f"DEBUG={self.DEBUG}, "
            f"THREADS={self.THREADS}, "
            f"CHASE_DEPTH={self.CHASE_DEPTH}, "
            f"EXACT_PLAYER_LIMIT={self.EXACT_PLAYER_LIMIT})"
        )


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
