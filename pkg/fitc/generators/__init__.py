"""Emitters for compiled output."""

from .program_generator import ProgramGenerator, clause_text

__all__ = ["ProgramGenerator", "clause_text"]
