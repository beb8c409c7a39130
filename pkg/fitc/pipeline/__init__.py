"""Compile workflow."""

from .state import CompileState
from .workflow import CompileWorkflow

__all__ = ["CompileState", "CompileWorkflow"]
