"""Tokenizer and operator precedence reader.

Reads text into plain terms (`fitc.engine.terms`) under a fixed operator
table. Both source programs and emitted programs go through this reader;
interpreting operators as feature-term syntax happens in `parser`.
"""

import bisect
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..engine.terms import Atom, Compound, NIL, Num, Term, Var, make_list
from ..errors import FitSyntaxError

# name -> (priority, type)
INFIX_OPS: Dict[str, Tuple[int, str]] = {
    ":-": (1200, "xfx"),
    ":=": (1200, "xfx"),
    "intro": (1160, "xfx"),
    ">": (1150, "xfx"),
    "fin_dom": (1150, "xfx"),
    ",": (1000, "xfy"),
    "=": (760, "xfx"),
    "or": (740, "xfy"),
    "&": (730, "xfy"),
    ">>>": (700, "xfy"),
    "!": (650, "xfy"),
    "*": (400, "yfx"),
    ":": (200, "xfy"),
    "@": (150, "xfx"),
}

PREFIX_OPS: Dict[str, Tuple[int, str]] = {
    "?-": (1200, "fx"),
    ":-": (1200, "fx"),
    "extensional": (1150, "fx"),
    ">>>": (700, "fy"),
    "~": (600, "fy"),
    "<": (550, "fy"),
    "`": (550, "fy"),
    "``": (550, "fy"),
    "@": (550, "fy"),
}

OPERATOR_NAMES = frozenset(INFIX_OPS) | frozenset(PREFIX_OPS)


class TokenKind(Enum):
    NAME = "name"
    QNAME = "quoted name"
    VAR = "variable"
    NUMBER = "number"
    SYMBOL = "symbol"
    PUNCT = "punctuation"
    END = "end of clause"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: str
    line: int
    column: int
    layout_before: bool = False


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<number>\d+\.\d+(?:[eE][+-]?\d+)?|\d+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<qname>'(?:[^'\\\n]|\\.|'')*')
  | (?P<symbol>:-|:=|\?-|>>>|``|[`<>!&~@*:=])
  | (?P<punct>[()\[\],|])
  | (?P<end>\.(?=\s|%|$))
""", re.VERBOSE)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'"}


def tokenize(text: str, filename: Optional[str] = None) -> List[Token]:
    """Split text into tokens; whitespace and `%` comments are dropped."""
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(offset: int) -> Tuple[int, int]:
        line = bisect.bisect_right(line_starts, offset)
        return line, offset - line_starts[line - 1] + 1

    tokens: List[Token] = []
    pos = 0
    layout = True
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            line, column = where(pos)
            char = text[pos]
            if char == "'":
                raise FitSyntaxError("unterminated quoted atom", filename, line, column)
            raise FitSyntaxError(f"unknown operator or character {char!r}", filename, line, column)
        kind = match.lastgroup
        value = match.group()
        if kind in ("ws", "comment"):
            layout = True
            pos = match.end()
            continue
        line, column = where(pos)
        if kind == "qname":
            value = _unquote(value)
        tokens.append(Token(TokenKind[kind.upper()], value, line, column, layout))
        layout = False
        pos = match.end()
    line, column = where(len(text))
    tokens.append(Token(TokenKind.EOF, "", line, column, True))
    return tokens


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        elif ch == "'" and body[i + 1:i + 2] == "'":
            out.append("'")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


@dataclass
class ReadTerm:
    """One clause-level term with its position and named variables."""
    term: Term
    line: int
    column: int
    variables: Dict[str, Var] = field(default_factory=dict)


class Reader:
    """Reads the clause terms of one text."""

    def __init__(self, text: str, filename: Optional[str] = None):
        self.filename = filename
        self.tokens = tokenize(text, filename)
        self.pos = 0
        self.variables: Dict[str, Var] = {}

    # -- token access ---------------------------------------------------

    def _peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        return tok

    def _error(self, message: str, tok: Token) -> FitSyntaxError:
        return FitSyntaxError(message, self.filename, tok.line, tok.column)

    def _expect_punct(self, value: str) -> Token:
        tok = self._peek()
        if tok.kind is TokenKind.PUNCT and tok.value == value:
            return self._advance()
        if tok.kind is TokenKind.EOF:
            raise self._error(f"unterminated clause: expected '{value}'", tok)
        raise self._error(f"expected '{value}', found {tok.kind.value} '{tok.value}'", tok)

    # -- clause level ---------------------------------------------------

    def read_all(self) -> List[ReadTerm]:
        terms = []
        while True:
            item = self.read()
            if item is None:
                return terms
            terms.append(item)

    def read(self) -> Optional[ReadTerm]:
        """Read the next `.`-terminated term, or None at end of input."""
        start = self._peek()
        if start.kind is TokenKind.EOF:
            return None
        if start.kind is TokenKind.END:
            raise self._error("empty clause", start)
        self.variables = {}
        term, _ = self._parse(1200)
        end = self._peek()
        if end.kind is TokenKind.EOF:
            raise self._error("unterminated clause: missing '.'", end)
        if end.kind is not TokenKind.END:
            raise self._error(f"operator priority clash or unexpected {end.kind.value} '{end.value}'", end)
        self._advance()
        return ReadTerm(term, start.line, start.column, self.variables)

    # -- terms ----------------------------------------------------------

    def _parse(self, max_prec: int) -> Tuple[Term, int]:
        left, left_prec = self._parse_primary(max_prec)
        return self._parse_infix(left, left_prec, max_prec)

    def _infix(self, tok: Token) -> Optional[Tuple[int, str]]:
        if tok.kind in (TokenKind.SYMBOL, TokenKind.NAME) or (
                tok.kind is TokenKind.PUNCT and tok.value == ","):
            return INFIX_OPS.get(tok.value)
        return None

    def _parse_infix(self, left: Term, left_prec: int, max_prec: int) -> Tuple[Term, int]:
        while True:
            tok = self._peek()
            op = self._infix(tok)
            if op is None:
                return left, left_prec
            prec, kind = op
            if prec > max_prec:
                return left, left_prec
            left_max = prec if kind == "yfx" else prec - 1
            right_max = prec if kind == "xfy" else prec - 1
            if left_prec > left_max:
                return left, left_prec
            self._advance()
            if self._peek().kind in (TokenKind.END, TokenKind.EOF):
                raise self._error(f"missing right operand of '{tok.value}'", tok)
            right, _ = self._parse(right_max)
            left = Compound(tok.value, (left, right))
            left_prec = prec

    def _starts_term(self, tok: Token) -> bool:
        if tok.kind in (TokenKind.NUMBER, TokenKind.VAR, TokenKind.NAME, TokenKind.QNAME):
            return tok.kind is not TokenKind.NAME or tok.value not in INFIX_OPS
        if tok.kind is TokenKind.PUNCT:
            return tok.value in ("(", "[")
        if tok.kind is TokenKind.SYMBOL:
            return tok.value in PREFIX_OPS
        return False

    def _parse_primary(self, max_prec: int) -> Tuple[Term, int]:
        tok = self._advance()
        kind = tok.kind
        if kind is TokenKind.NUMBER:
            value = float(tok.value) if "." in tok.value else int(tok.value)
            return Num(value), 0
        if kind is TokenKind.VAR:
            return self._variable(tok.value), 0
        if kind is TokenKind.PUNCT:
            if tok.value == "(":
                term, _ = self._parse(1200)
                self._expect_punct(")")
                return term, 0
            if tok.value == "[":
                return self._parse_list(), 0
            raise self._error(f"unexpected '{tok.value}'", tok)
        if kind in (TokenKind.END, TokenKind.EOF):
            raise self._error("unexpected end of clause", tok)

        name = tok.value
        nxt = self._peek()
        if nxt.kind is TokenKind.PUNCT and nxt.value == "(" and not nxt.layout_before:
            self._advance()
            return Compound(name, tuple(self._parse_arguments(")"))), 0
        if kind is not TokenKind.QNAME and name in PREFIX_OPS and self._starts_term(nxt):
            prec, op_kind = PREFIX_OPS[name]
            prec = min(prec, max_prec)
            arg_max = prec if op_kind == "fy" else prec - 1
            arg, _ = self._parse(arg_max)
            return Compound(name, (arg,)), prec
        if kind is TokenKind.SYMBOL and name not in OPERATOR_NAMES:
            raise self._error(f"unknown operator '{name}'", tok)
        return Atom(name), 0

    def _parse_arguments(self, close: str) -> List[Term]:
        args = [self._parse(999)[0]]
        while self._peek().kind is TokenKind.PUNCT and self._peek().value == ",":
            self._advance()
            args.append(self._parse(999)[0])
        self._expect_punct(close)
        return args

    def _parse_list(self) -> Term:
        tok = self._peek()
        if tok.kind is TokenKind.PUNCT and tok.value == "]":
            self._advance()
            return NIL
        items = [self._parse(999)[0]]
        tail: Term = NIL
        while True:
            tok = self._peek()
            if tok.kind is TokenKind.PUNCT and tok.value == ",":
                self._advance()
                items.append(self._parse(999)[0])
                continue
            if tok.kind is TokenKind.PUNCT and tok.value == "|":
                self._advance()
                tail = self._parse(999)[0]
            break
        self._expect_punct("]")
        return make_list(items, tail)

    def _variable(self, name: str) -> Var:
        if name == "_":
            return Var("_")
        var = self.variables.get(name)
        if var is None:
            var = self.variables[name] = Var(name)
        return var


def read_terms(text: str, filename: Optional[str] = None) -> List[ReadTerm]:
    return Reader(text, filename).read_all()
