"""Regular (eventually periodic) events ``reg(preamble, period)``.

``reg(a, p)(i)`` is ``a[i]`` for ``i <= len(a)`` and
``p[(i - len(a) - 1) mod len(p)]`` afterwards (1-based on the outside).
Regular events are closed under the Boolean operations, equality between
them is decidable through a canonical form, and their density is the
fraction of 1s in the period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Callable, Optional, Sequence, Tuple

from .actual import ActualEvent, Modulus, disjoint_union
from .errors import EmptyPeriod
from .events import PotentialEvent, shift

Bits = Tuple[int, ...]


def _bits(seq: Sequence[int], what: str) -> Bits:
    out = tuple(int(b) for b in seq)
    for b in out:
        if b not in (0, 1):
            raise ValueError(f"{what} must contain only 0/1, got {b!r}")
    return out


@dataclass(frozen=True)
class RegularEvent:
    """A finite presentation: ``preamble`` then ``period`` repeated forever."""

    preamble: Bits
    period: Bits

    def __post_init__(self):
        object.__setattr__(self, "preamble", _bits(self.preamble, "preamble"))
        object.__setattr__(self, "period", _bits(self.period, "period"))
        if not self.period:
            raise EmptyPeriod("the period of a regular event must be nonempty")

    @cached_property
    def _pre_sums(self) -> Tuple[int, ...]:
        return (0, *accumulate(self.preamble))

    @cached_property
    def _per_sums(self) -> Tuple[int, ...]:
        return (0, *accumulate(self.period))

    def bit(self, i: int) -> int:
        la = len(self.preamble)
        if i <= la:
            return self.preamble[i - 1]
        return self.period[(i - la - 1) % len(self.period)]

    def count(self, n: int) -> int:
        """Number of 1s among the first ``n`` bits, in O(1)."""
        la = len(self.preamble)
        if n <= la:
            return self._pre_sums[n]
        q, r = divmod(n - la, len(self.period))
        return self._pre_sums[la] + q * self._per_sums[-1] + self._per_sums[r]

    def first_one(self) -> Optional[int]:
        """Least index holding a 1, or ``None`` if the event is identically 0."""
        for i, b in enumerate(self.preamble + self.period, start=1):
            if b:
                return i
        return None

    def density(self) -> Fraction:
        return Fraction(sum(self.period), len(self.period))

    def canonical(self) -> "RegularEvent":
        return canonicalize(self)

    def equals(self, other: "RegularEvent") -> bool:
        return canonicalize(self) == canonicalize(other)

    def not_(self) -> "RegularEvent":
        return reg_not(self)

    def and_(self, other: "RegularEvent") -> "RegularEvent":
        return reg_and(self, other)

    def or_(self, other: "RegularEvent") -> "RegularEvent":
        return reg_or(self, other)

    def shift(self) -> "RegularEvent":
        return RegularEvent((0, *self.preamble), self.period)

    def __str__(self) -> str:
        pre = ",".join(map(str, self.preamble))
        per = ",".join(map(str, self.period))
        return f"reg([{pre}],[{per}])"


def reg(preamble: Sequence[int], period: Sequence[int]) -> RegularEvent:
    return RegularEvent(tuple(preamble), tuple(period))


def as_potential(r: RegularEvent) -> PotentialEvent:
    return PotentialEvent.from_presentation(r)


def canonicalize(r: RegularEvent) -> RegularEvent:
    """Shortest period, then shortest preamble.

    The period is cut to its primitive root; trailing preamble bits that the
    period would reproduce are absorbed by rotating the period backwards.
    """
    period = r.period
    lp = len(period)
    for d in range(1, lp + 1):
        if lp % d == 0 and period[:d] * (lp // d) == period:
            period = period[:d]
            break
    preamble = r.preamble
    while preamble and preamble[-1] == period[-1]:
        preamble = preamble[:-1]
        period = (period[-1], *period[:-1])
    return RegularEvent(preamble, period)


def equal_regular(r: RegularEvent, s: RegularEvent) -> bool:
    return canonicalize(r) == canonicalize(s)


def reg_not(r: RegularEvent) -> RegularEvent:
    return RegularEvent(tuple(1 - b for b in r.preamble), tuple(1 - b for b in r.period))


def _combine(r: RegularEvent, s: RegularEvent, op: Callable[[int, int], int]) -> RegularEvent:
    # op is symmetric, so order the operands with the shorter preamble first
    if len(s.preamble) < len(r.preamble):
        r, s = s, r
    alpha, pi = r.preamble, r.period
    beta, psi = s.preamble, s.period
    la, lb, lp, ls = len(alpha), len(beta), len(pi), len(psi)
    pre = []
    for i in range(1, lb + 1):
        x = alpha[i - 1] if i <= la else pi[(i - la - 1) % lp]
        pre.append(op(x, beta[i - 1]))
    per = [op(pi[(lb - la + i - 1) % lp], psi[(i - 1) % ls]) for i in range(1, lp * ls + 1)]
    return RegularEvent(tuple(pre), tuple(per))


def reg_and(r: RegularEvent, s: RegularEvent, canonical: bool = True) -> RegularEvent:
    out = _combine(r, s, lambda x, y: x & y)
    return canonicalize(out) if canonical else out


def reg_or(r: RegularEvent, s: RegularEvent, canonical: bool = True) -> RegularEvent:
    out = _combine(r, s, lambda x, y: x | y)
    return canonicalize(out) if canonical else out


def closed_form_density(r: RegularEvent) -> Fraction:
    """Fraction of 1s in the (canonical) period; the preamble is irrelevant."""
    return canonicalize(r).density()


def period_only_actual(period: Sequence[int]) -> ActualEvent:
    """``(reg([], p), n -> 4n*len(p))``."""
    r = reg((), period)
    return ActualEvent(as_potential(r), Modulus.linear(4 * len(r.period)), trusted=True)


def preamble_zero_actual(preamble: Sequence[int]) -> ActualEvent:
    """``(reg(a, [0]), n -> 2n*len(a))``; requires a nonempty preamble."""
    if len(preamble) < 1:
        raise ValueError("preamble_zero_actual needs a nonempty preamble")
    r = reg(preamble, (0,))
    return ActualEvent(as_potential(r), Modulus.linear(2 * len(r.preamble)), trusted=True)


def shift_actual(a: ActualEvent) -> ActualEvent:
    """``(e+, n -> gamma(3n) + 1)``: prepend a 0, keep the probability."""
    return ActualEvent(shift(a.event), a.modulus.scale(3).plus(1), trusted=a.trusted)


def regular_to_actual(r: RegularEvent) -> ActualEvent:
    """Witness that ``reg(a, p)`` is actual.

    ``reg(a, p)`` is the disjoint union of ``reg(a, [0])`` and ``reg([], p)``
    shifted ``len(a)`` times; the modulus is assembled from those three
    pieces.  With an empty preamble the periodic piece is used directly.
    """
    periodic = period_only_actual(r.period)
    if not r.preamble:
        return periodic
    for _ in r.preamble:
        periodic = shift_actual(periodic)
    return disjoint_union(preamble_zero_actual(r.preamble), periodic)
