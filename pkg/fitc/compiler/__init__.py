"""Layouts, template expansion, feature search and term compilation."""

from .compile import (
    Compiled, CompiledQuery, CoreClause, KnowledgeBase, compile_clause, compile_program,
    compile_query, compile_term,
)
from .layout import LayoutTable, compute_layouts, encode_subset, feature_path, skeleton
from .search import resolve_search
from .templates import expand_templates

__all__ = [
    "Compiled", "CompiledQuery", "CoreClause", "KnowledgeBase", "LayoutTable",
    "compile_clause", "compile_program", "compile_query", "compile_term",
    "compute_layouts", "encode_subset", "expand_templates", "feature_path",
    "resolve_search", "skeleton",
]
