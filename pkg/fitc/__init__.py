"""fitc: a compiler and query runtime for logic programs over sorted feature terms."""

__version__ = "0.1.0"
