from .catalog import CatalogEntry, catalog, lookup
from .formats import ParseError, ValidationError, parse_fmg, parse_lie, serialize_fmg, serialize_lie
from .report import Report

__all__ = [
    "CatalogEntry",
    "catalog",
    "lookup",
    "ParseError",
    "ValidationError",
    "parse_fmg",
    "parse_lie",
    "serialize_fmg",
    "serialize_lie",
    "Report",
]
