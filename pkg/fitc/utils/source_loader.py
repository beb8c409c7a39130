"""Loading of program source files."""

import logging
from pathlib import Path
from typing import Iterable, List

from pydantic import BaseModel

from ..errors import FitSyntaxError

logger = logging.getLogger(__name__)

SOURCE_SUFFIX = ".fit"


class SourceFile(BaseModel):
    """One program file."""
    path: str
    text: str


class SourceLoader:
    """Reads `.fit` files; directories are searched recursively."""

    def __init__(self, suffix: str = SOURCE_SUFFIX):
        self.suffix = suffix

    def expand(self, paths: Iterable[str]) -> List[Path]:
        files: List[Path] = []
        for name in paths:
            path = Path(name)
            if path.is_dir():
                found = sorted(path.rglob(f"*{self.suffix}"))
                if not found:
                    logger.warning(f"No {self.suffix} files under {path}")
                files.extend(found)
            else:
                files.append(path)
        return files

    def load(self, paths: Iterable[str]) -> List[SourceFile]:
        sources = []
        for path in self.expand(paths):
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise FitSyntaxError(f"cannot read source file: {e.strerror}", str(path))
            except UnicodeDecodeError:
                raise FitSyntaxError("source file is not UTF-8 text", str(path))
            sources.append(SourceFile(path=str(path), text=text))
            logger.info(f"Loaded {path} ({len(text.splitlines())} lines)")
        return sources
