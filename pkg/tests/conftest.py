"""Shared fixtures: signatures and knowledge bases built from data/*.fit."""

from pathlib import Path

import pytest

from fitc.compiler.compile import compile_program
from fitc.compiler.layout import compute_layouts
from fitc.config import CompileOptions
from fitc.decls.signature import build_signature
from fitc.syntax.parser import parse_program

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class Program:
    """A parsed and compiled source text."""

    def __init__(self, text: str, filename: str = "<test>", options: CompileOptions = None):
        self.options = options or CompileOptions()
        self.items = parse_program(text, filename)
        self.sig = build_signature(self.items)
        self.table = compute_layouts(self.sig)
        self.kb = compile_program(self.items, self.sig, self.table, self.options, [filename])


def data_text(name: str) -> str:
    return (DATA_DIR / name).read_text(encoding="utf-8")


@pytest.fixture
def build():
    """Compile program text into a Program."""
    return Program


@pytest.fixture(scope="session")
def agr():
    return Program(data_text("agr.fit"), "agr.fit")


@pytest.fixture(scope="session")
def member():
    return Program(data_text("member.fit"), "member.fit")


@pytest.fixture(scope="session")
def hpsg():
    return Program(data_text("hpsg.fit"), "hpsg.fit")


@pytest.fixture(scope="session")
def trees():
    return Program(data_text("binary_tree.fit"), "binary_tree.fit")


@pytest.fixture(scope="session")
def cyclic():
    return Program(data_text("cyclic.fit"), "cyclic.fit")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Keep FITC_* variables and stray config files out of the tests."""
    import os
    for key in list(os.environ):
        if key.startswith("FITC_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
