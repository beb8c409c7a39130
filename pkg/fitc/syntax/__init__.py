"""Reading and printing of feature-term programs."""

from .parser import parse_program, parse_query, parse_term
from .printer import print_term, write_term

__all__ = ["parse_program", "parse_query", "parse_term", "print_term", "write_term"]
