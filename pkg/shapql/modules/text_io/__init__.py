from .schemas import KbDocument
from .service import parse_kb, parse_query, serialize, serialize_query

__all__ = ["KbDocument", "parse_kb", "parse_query", "serialize", "serialize_query"]
