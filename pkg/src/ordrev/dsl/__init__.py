"""Family description language: parser and canonical printer."""
from .parser import parse, parse_ordinal
from .printer import format_family

__all__ = ["format_family", "parse", "parse_ordinal"]
