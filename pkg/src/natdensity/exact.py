"""Exact rationals and Bishop reals.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  A Bishop real is a sequence of rationals ``x(n)``,
``n >= 1``, with ``|x(n) - x(m)| <= 1/n + 1/m``; its n-th term is within
``1/n`` of the number it denotes.

Only the operations needed for natural density are provided: sum,
``1 - x``, budgeted refutation of equality and budgeted separation from 0.
Equality of reals is never returned as a boolean.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .verdicts import ConsistentUpTo, RefutedAt, Verdict

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer ``"p"``.  Decimal notation is rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """``"p/q"`` in lowest terms, ``"0"`` for zero, ``"p"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_decimal(q: Fraction, digits: int) -> str:
    """Decimal rendering of ``q`` rounded half-up to ``digits`` places.

    Purely cosmetic; every computation in the package stays rational.
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scale = 10 ** digits
    scaled = (q.numerator * scale * 2 + q.denominator) // (2 * q.denominator)
    whole, frac = divmod(scaled, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


class BishopReal:
    """A real number given by its rational approximants.

    ``x(n)`` (or ``x.approximant(n)``) returns the n-th approximant.  Values
    are immutable; the approximant map must be pure.
    """

    __slots__ = ("_approx", "label")

    def __init__(self, approximant: Callable[[int], Fraction], label: Optional[str] = None):
        self._approx = approximant
        self.label = label

    def approximant(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError(f"approximant index must be >= 1, got {n}")
        return Fraction(self._approx(n))

    __call__ = approximant

    def __repr__(self) -> str:
        if self.label:
            return f"BishopReal({self.label})"
        return f"BishopReal(x(1)={format_rational(self.approximant(1))}, ...)"


def from_rational(q: Union[Fraction, int, str]) -> BishopReal:
    """The constant sequence ``n -> q``."""
    if isinstance(q, str):
        q = parse_rational(q)
    q = Fraction(q)
    return BishopReal(lambda n: q, label=format_rational(q))


def add(x: BishopReal, y: BishopReal) -> BishopReal:
    """Bishop sum: ``(x + y)(n) = x(2n) + y(2n)``."""
    return BishopReal(lambda n: x(2 * n) + y(2 * n))


def one_minus(x: BishopReal) -> BishopReal:
    """``(1 - x)(n) = 1 - x(2n)``."""
    return BishopReal(lambda n: 1 - x(2 * n))


def eq_refute_upto(x: BishopReal, y: BishopReal, bound: int) -> Verdict:
    """Look for the least ``n <= bound`` with ``|x(n) - y(n)| > 2/n``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for n in range(1, bound + 1):
        if abs(x(n) - y(n)) > Fraction(2, n):
            return RefutedAt(n)
    return ConsistentUpTo(bound)


@dataclass(frozen=True)
class PositiveAt:
    """``x(index) > 1/index``, which certifies ``x > 0``."""

    index: int

    def __str__(self) -> str:
        return f"PositiveAt({self.index})"


@dataclass(frozen=True)
class Undecided:
    budget: int

    def __str__(self) -> str:
        return f"Undecided(budget={self.budget})"


Separation = Union[PositiveAt, Undecided]


def separate_from_zero(x: BishopReal, budget: int) -> Separation:
    """Scan ``m = 1..budget`` for the first ``x(m) > 1/m``."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    for m in range(1, budget + 1):
        if x(m) > Fraction(1, m):
            return PositiveAt(m)
    return Undecided(budget)


def regularity_refute(x: BishopReal, indices: Iterable[int]) -> Verdict:
    """Spot-check ``|x(n) - x(m)| <= 1/n + 1/m`` over all pairs from ``indices``.

    Returns ``RefutedAt((n, m))`` for the first violating pair.
    """
    idx = sorted(set(indices))
    values = {n: x(n) for n in idx}
    for a, n in enumerate(idx):
        for m in idx[a + 1:]:
            if abs(values[n] - values[m]) > Fraction(1, n) + Fraction(1, m):
                return RefutedAt((n, m))
    return ConsistentUpTo(idx[-1] if idx else 0)
