"""State carried through the compile workflow."""

from typing import Any, Dict, List, Optional, TypedDict

from ..compiler.compile import KnowledgeBase
from ..compiler.layout import LayoutTable
from ..config import CompileOptions
from ..decls.signature import Signature
from ..errors import Diagnostic
from ..utils.source_loader import SourceFile
from ..utils.validator import ValidationResult


class CompileState(TypedDict):
    """State for the compile workflow."""
    paths: List[str]
    options: CompileOptions
    output: Optional[str]  # base path of the written artifacts
    sources: List[SourceFile]
    items: List[Any]  # declaration and clause items, file order then source order
    signature: Optional[Signature]
    layouts: Optional[LayoutTable]
    kb: Optional[KnowledgeBase]
    program_text: Optional[str]
    validation: Optional[ValidationResult]
    outputs: Dict[str, str]  # artifact kind -> written path
    diagnostics: List[Diagnostic]
    error: Optional[str]
    step: str  # current step in workflow
