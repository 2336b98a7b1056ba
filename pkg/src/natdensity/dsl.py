"""A small expression language for events.

Grammar (``not``/``shift`` bind tighter than ``and``, which binds tighter
than ``or``; binary operators associate to the left)::

    expr    := term ('or' term)*
    term    := factor ('and' factor)*
    factor  := 'not' factor | 'shift' factor | atom
    atom    := 'bot' | 'top' | 'blocks' '(' ')'
             | 'reg' '(' bitlist ',' bitlist ')' | '(' expr ')'
    bitlist := '[' (bit (',' bit)*)? ']'

Expressions built only from ``reg``, ``bot`` and ``top`` elaborate to a
canonical :class:`~natdensity.regular.RegularEvent` together with its
convergence witness; anything mentioning ``blocks()`` stays a general
potential event.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple, Union

from . import events as ev
from .actual import ActualEvent
from .errors import EmptyPeriod
from .omniscience import oscillator
from .regular import RegularEvent, canonicalize, reg_and, reg_not, reg_or, regular_to_actual


class DSLSyntaxError(ValueError):
    def __init__(self, line: int, column: int, expected: FrozenSet[str], found: str):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"line {line}, column {column}: expected one of {{{exp}}}, found {found}")


# -- syntax tree -----------------------------------------------------------------


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Blocks:
    pass


@dataclass(frozen=True)
class Reg:
    preamble: Tuple[int, ...]
    period: Tuple[int, ...]


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class Shift:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Bot, Top, Blocks, Reg, Not, Shift, And, Or]


# -- lexer -------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<word>[A-Za-z_]\w*)|(?P<num>\d+)|(?P<sym>[()\[\],]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'word', 'num', 'sym', 'eof'
    text: str
    line: int
    col: int

    def show(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def where(p: int) -> Tuple[int, int]:
        ln = max(i for i, s in enumerate(line_starts) if s <= p)
        return ln + 1, p - line_starts[ln] + 1

    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            stripped = rest.lstrip()
            p = pos + len(rest) - len(stripped)
            line, col = where(p)
            if not stripped:
                toks.append(_Tok("eof", "", line, col))
                return toks
            raise DSLSyntaxError(line, col, frozenset({"a token"}), repr(stripped[0]))
        kind = m.lastgroup
        line, col = where(m.start(kind))
        toks.append(_Tok(kind, m.group(kind), line, col))
        pos = m.end()


# -- parser ------------------------------------------------------------------------

_ATOM_START = frozenset({"bot", "top", "blocks", "reg", "not", "shift", "("})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected) -> DSLSyntaxError:
        t = self.tok
        return DSLSyntaxError(t.line, t.col, frozenset(expected), t.show())

    def at_word(self, w: str) -> bool:
        return self.tok.kind == "word" and self.tok.text == w

    def expect_sym(self, s: str) -> _Tok:
        t = self.tok
        if t.kind != "sym" or t.text != s:
            raise self.fail({s})
        self.i += 1
        return t

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.fail({"and", "or", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_word("or"):
            self.i += 1
            e = Or(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at_word("and"):
            self.i += 1
            e = And(e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.at_word("not"):
            self.i += 1
            return Not(self.factor())
        if self.at_word("shift"):
            self.i += 1
            return Shift(self.factor())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "sym" and t.text == "(":
            self.i += 1
            e = self.expr()
            self.expect_sym(")")
            return e
        if t.kind != "word" or t.text not in _ATOM_START:
            raise self.fail(_ATOM_START)
        self.i += 1
        if t.text == "bot":
            return Bot()
        if t.text == "top":
            return Top()
        if t.text == "blocks":
            self.expect_sym("(")
            self.expect_sym(")")
            return Blocks()
        # reg
        self.expect_sym("(")
        pre = self.bitlist()
        self.expect_sym(",")
        per_tok = self.tok
        per = self.bitlist()
        self.expect_sym(")")
        if not per:
            raise EmptyPeriod(
                f"line {per_tok.line}, column {per_tok.col}: the period of reg(...) must be nonempty",
                (per_tok.line, per_tok.col))
        return Reg(pre, per)

    def bitlist(self) -> Tuple[int, ...]:
        self.expect_sym("[")
        bits = []
        if self.tok.kind == "sym" and self.tok.text == "]":
            self.i += 1
            return ()
        while True:
            t = self.tok
            if t.kind != "num" or t.text not in ("0", "1"):
                raise self.fail({"0", "1"})
            bits.append(int(t.text))
            self.i += 1
            if self.tok.kind == "sym" and self.tok.text == ",":
                self.i += 1
                continue
            if self.tok.kind == "sym" and self.tok.text == "]":
                self.i += 1
                return tuple(bits)
            raise self.fail({",", "]"})


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- printer -----------------------------------------------------------------------

_PREC = {Or: 1, And: 2, Not: 3, Shift: 3}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 4)


def _bits_str(bits) -> str:
    return "[" + ",".join(map(str, bits)) + "]"


def to_text(e: Expr) -> str:
    """Render with the fewest parentheses that reparse to the same tree."""
    if isinstance(e, Bot):
        return "bot"
    if isinstance(e, Top):
        return "top"
    if isinstance(e, Blocks):
        return "blocks()"
    if isinstance(e, Reg):
        return f"reg({_bits_str(e.preamble)},{_bits_str(e.period)})"
    if isinstance(e, (Not, Shift)):
        word = "not" if isinstance(e, Not) else "shift"
        inner = to_text(e.arg)
        if _prec(e.arg) < 3:
            inner = f"({inner})"
        return f"{word} {inner}"
    word = "or" if isinstance(e, Or) else "and"
    p = _prec(e)
    left, right = to_text(e.left), to_text(e.right)
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {word} {right}"


# -- elaboration ---------------------------------------------------------------------


@dataclass(frozen=True)
class Elaborated:
    """``kind`` is ``"regular"`` (with ``regular`` and ``witness`` set) or ``"general"``."""

    kind: str
    event: ev.PotentialEvent
    regular: Optional[RegularEvent] = None
    witness: Optional[ActualEvent] = None

    @property
    def is_regular(self) -> bool:
        return self.kind == "regular"


def is_syntactically_regular(e: Expr) -> bool:
    if isinstance(e, Blocks):
        return False
    if isinstance(e, (Not, Shift)):
        return is_syntactically_regular(e.arg)
    if isinstance(e, (And, Or)):
        return is_syntactically_regular(e.left) and is_syntactically_regular(e.right)
    return True


def _regular(e: Expr) -> RegularEvent:
    if isinstance(e, Bot):
        return RegularEvent((), (0,))
    if isinstance(e, Top):
        return RegularEvent((), (1,))
    if isinstance(e, Reg):
        return RegularEvent(e.preamble, e.period)
    if isinstance(e, Not):
        return reg_not(_regular(e.arg))
    if isinstance(e, Shift):
        r = _regular(e.arg)
        return RegularEvent((0, *r.preamble), r.period)
    if isinstance(e, And):
        return reg_and(_regular(e.left), _regular(e.right))
    if isinstance(e, Or):
        return reg_or(_regular(e.left), _regular(e.right))
    raise TypeError(f"not a regular expression: {e!r}")


def evaluate(e: Expr) -> ev.PotentialEvent:
    """Build the event directly with the pointwise operations."""
    if isinstance(e, Bot):
        return ev.bottom()
    if isinstance(e, Top):
        return ev.top()
    if isinstance(e, Blocks):
        return oscillator()
    if isinstance(e, Reg):
        return ev.PotentialEvent.from_presentation(RegularEvent(e.preamble, e.period))
    if isinstance(e, Not):
        return ev.bool_not(evaluate(e.arg))
    if isinstance(e, Shift):
        return ev.shift(evaluate(e.arg))
    if isinstance(e, And):
        return ev.bool_and(evaluate(e.left), evaluate(e.right))
    if isinstance(e, Or):
        return ev.bool_or(evaluate(e.left), evaluate(e.right))
    raise TypeError(f"not an expression: {e!r}")


def elaborate(e: Expr) -> Elaborated:
    if is_syntactically_regular(e):
        r = canonicalize(_regular(e))
        return Elaborated("regular", ev.PotentialEvent.from_presentation(r), r, regular_to_actual(r))
    return Elaborated("general", evaluate(e))
