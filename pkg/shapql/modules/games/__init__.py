from .models import CooperativeGame
from .service import game_from_function, game_from_kb, game_from_supports

__all__ = ["CooperativeGame", "game_from_kb", "game_from_supports", "game_from_function"]
