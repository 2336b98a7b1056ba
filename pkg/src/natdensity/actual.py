"""Actual events: a potential event paired with a convergence modulus.

``(e, gamma)`` is actual when ``|Phi(e)(gamma(n)+i) - Phi(e)(gamma(n)+j)| <= 1/n``
for all ``n >= 1`` and ``i, j >= 0``.  That condition cannot be verified
globally, so the constructors here each build the modulus that makes the
result actual by construction (``trusted=True``), and user-supplied pairs can
only be spot-checked with :func:`validate_cauchy`.

Preconditions such as disjointness or ``e' <= e`` are semi-decidable.  When
both events carry a finite presentation they are decided exactly; otherwise
a prefix budget is scanned and anything beyond it is the caller's word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Tuple

from .errors import (
    DominationViolation,
    NotBelow,
    NotDisjoint,
    NotIncreasing,
    NotMatching,
    NotNull,
)
from .events import (
    PotentialEvent,
    bool_and,
    bool_not,
    bool_or,
    bottom,
    find_one,
    frequency,
    leq_check,
    prefix_equal,
)
from .exact import BishopReal, add, eq_refute_upto, from_rational
from .verdicts import ConsistentOver, ConsistentUpTo, RefutedAt, Verdict

DEFAULT_PREFIX_BUDGET = 10_000
DEFAULT_APPROX_BUDGET = 64


class Modulus:
    """A strictly increasing map ``n -> gamma(n)`` on positive integers.

    Affine moduli ``a*n + b`` keep their coefficients, which lets
    compositions print in closed form and domination be checked exactly.
    """

    __slots__ = ("_fn", "affine", "label")

    def __init__(self, fn: Callable[[int], int], affine: Optional[Tuple[int, int]] = None,
                 label: Optional[str] = None):
        self._fn = fn
        self.affine = affine
        self.label = label

    @classmethod
    def linear(cls, a: int, b: int = 0) -> "Modulus":
        if a < 1 or a + b < 1:
            raise NotIncreasing(f"{_affine_str(a, b)} is not a strictly increasing positive modulus", 1)
        return cls(lambda n: a * n + b, affine=(a, b))

    def __call__(self, n: int) -> int:
        return self._fn(n)

    def scale(self, k: int) -> "Modulus":
        """``n -> gamma(k*n)``."""
        if self.affine is not None:
            a, b = self.affine
            return Modulus.linear(a * k, b)
        return Modulus(lambda n: self._fn(k * n), label=f"{self}({k}n)")

    def plus(self, c: int) -> "Modulus":
        """``n -> gamma(n) + c``."""
        if self.affine is not None:
            a, b = self.affine
            return Modulus.linear(a, b + c)
        return Modulus(lambda n: self._fn(n) + c, label=f"{self}+{c}")

    def __add__(self, other: "Modulus") -> "Modulus":
        if self.affine is not None and other.affine is not None:
            return Modulus.linear(self.affine[0] + other.affine[0], self.affine[1] + other.affine[1])
        return Modulus(lambda n: self._fn(n) + other(n), label=f"{self}+{other}")

    def check_increasing(self, bound: int) -> Verdict:
        """Least ``n < bound`` with ``gamma(n+1) <= gamma(n)`` (or ``gamma(1) < 1``)."""
        prev = self(1)
        if prev < 1:
            return RefutedAt(1)
        for n in range(2, bound + 1):
            cur = self(n)
            if cur <= prev:
                return RefutedAt(n)
            prev = cur
        return ConsistentUpTo(bound)

    def __str__(self) -> str:
        if self.affine is not None:
            return _affine_str(*self.affine)
        return self.label or "gamma"

    def __repr__(self) -> str:
        return f"Modulus({self})"


def _affine_str(a: int, b: int) -> str:
    head = "n" if a == 1 else f"{a}n"
    if b > 0:
        return f"{head}+{b}"
    if b < 0:
        return f"{head}-{-b}"
    return head


@dataclass(frozen=True)
class ActualEvent:
    """A potential event with a convergence modulus.

    ``trusted`` marks pairs produced by the constructors in this package.
    """

    event: PotentialEvent
    modulus: Modulus
    trusted: bool = False

    def __repr__(self) -> str:
        return f"ActualEvent({self.event.label or '?'}, {self.modulus})"


def probability(a: ActualEvent) -> BishopReal:
    """``P(e, gamma) = Phi(e) o gamma``, a Bishop real."""
    e, gamma = a.event, a.modulus
    return BishopReal(lambda n: frequency(e, gamma(n)), label=f"P({e.label or '?'}, {gamma})")


class CauchyGrid:
    """All triples ``(n, i, j)`` with ``1 <= n <= n_max`` and ``0 <= i, j <= ij_max``.

    Iterates in lexicographic order.  :func:`validate_cauchy` recognises a
    grid and checks it through per-``n`` extrema instead of every pair; the
    verdict is the same.
    """

    def __init__(self, n_max: int = 16, ij_max: int = 64):
        if n_max < 1 or ij_max < 0:
            raise ValueError("need n_max >= 1 and ij_max >= 0")
        self.n_max = n_max
        self.ij_max = ij_max

    def __iter__(self) -> Iterator[Tuple[int, int, int]]:
        r = range(self.ij_max + 1)
        for n in range(1, self.n_max + 1):
            for i in r:
                for j in r:
                    yield (n, i, j)

    def __len__(self) -> int:
        return self.n_max * (self.ij_max + 1) ** 2

    def __repr__(self) -> str:
        return f"CauchyGrid(n<={self.n_max}, i,j<={self.ij_max})"


STANDARD_GRID = CauchyGrid(16, 64)


def validate_cauchy(a: ActualEvent, samples: Iterable[Tuple[int, int, int]] = STANDARD_GRID) -> Verdict:
    """Spot-check the Cauchy condition on ``samples``; exact arithmetic."""
    e, gamma = a.event, a.modulus
    if isinstance(samples, CauchyGrid):
        count = e.count
        span = range(samples.ij_max + 1)
        for n in range(1, samples.n_max + 1):
            base = gamma(n)
            # extremes of count(k)/k by integer cross-multiplication
            hi_c = lo_c = count(base)
            hi_k = lo_k = base
            for k in range(base + 1, base + samples.ij_max + 1):
                c = count(k)
                if c * hi_k > hi_c * k:
                    hi_c, hi_k = c, k
                elif c * lo_k < lo_c * k:
                    lo_c, lo_k = c, k
            # hi_c/hi_k - lo_c/lo_k <= 1/n
            if (hi_c * lo_k - lo_c * hi_k) * n <= hi_k * lo_k:
                continue
            tol = Fraction(1, n)
            vals = [frequency(e, base + i) for i in span]
            for i, vi in enumerate(vals):
                for j, vj in enumerate(vals):
                    if abs(vi - vj) > tol:
                        return RefutedAt((n, i, j))
        return ConsistentOver(len(samples))

    count = 0
    for n, i, j in samples:
        if n < 1 or i < 0 or j < 0:
            raise ValueError(f"bad sample {(n, i, j)}")
        base = gamma(n)
        if abs(frequency(e, base + i) - frequency(e, base + j)) > Fraction(1, n):
            return RefutedAt((n, i, j))
        count += 1
    return ConsistentOver(count)


def _dominates(gamma: Modulus, gamma2: Modulus, budget: int) -> Optional[int]:
    """Least ``n`` with ``gamma2(n) < gamma(n)``; exact for affine pairs."""
    if gamma.affine is not None and gamma2.affine is not None:
        (a1, b1), (a2, b2) = gamma.affine, gamma2.affine
        d, c = a2 - a1, b1 - b2
        if d >= 0:
            return 1 if d < c else None
        return max(1, math.floor(Fraction(c, d)) + 1)
    for n in range(1, budget + 1):
        if gamma2(n) < gamma(n):
            return n
    return None


def relax_modulus(a: ActualEvent, gamma2: Modulus, budget: int = DEFAULT_APPROX_BUDGET) -> ActualEvent:
    """Replace the modulus by a pointwise larger one.

    Domination is decided exactly for affine moduli.  Otherwise it is checked
    for ``n <= budget`` up front and again at every later query.
    """
    verdict = gamma2.check_increasing(budget)
    if not verdict.ok:
        raise NotIncreasing(f"replacement modulus {gamma2} not strictly increasing at n={verdict.index}",
                            verdict.index)
    bad = _dominates(a.modulus, gamma2, budget)
    if bad is not None:
        raise DominationViolation(
            f"replacement modulus {gamma2} is below {a.modulus} at n={bad}", bad)
    if a.modulus.affine is not None and gamma2.affine is not None:
        return ActualEvent(a.event, gamma2, trusted=a.trusted)

    gamma = a.modulus

    def guarded(n: int) -> int:
        v = gamma2(n)
        if v < gamma(n):
            raise DominationViolation(f"replacement modulus {gamma2} is below {gamma} at n={n}", n)
        return v

    return ActualEvent(a.event, Modulus(guarded, label=str(gamma2)), trusted=a.trusted)


def bottom_actual() -> ActualEvent:
    """``(bot, n -> n)``."""
    return ActualEvent(bottom(), Modulus.linear(1, 0), trusted=True)


def complement(a: ActualEvent) -> ActualEvent:
    """``(not e, gamma)``; same modulus."""
    return ActualEvent(bool_not(a.event), a.modulus, trusted=a.trusted)


def first_common_one(e: PotentialEvent, f: PotentialEvent, budget: int) -> Optional[int]:
    """Least ``n`` with ``e(n) = f(n) = 1``.  Exact when both are presented."""
    if e.presentation is not None and f.presentation is not None:
        return e.presentation.and_(f.presentation).first_one()
    return find_one(bool_and(e, f), budget)


def first_excess(sub: PotentialEvent, sup: PotentialEvent, budget: int) -> Optional[int]:
    """Least ``n`` with ``sub(n) > sup(n)``.  Exact when both are presented."""
    if sub.presentation is not None and sup.presentation is not None:
        return sub.presentation.and_(sup.presentation.not_()).first_one()
    verdict = leq_check(sub, sup, budget)
    return None if verdict.ok else verdict.index


def first_difference(e: PotentialEvent, f: PotentialEvent, budget: int) -> Optional[int]:
    """Least ``n`` with ``e(n) != f(n)``.  Exact when both are presented."""
    if e.presentation is not None and f.presentation is not None:
        p, q = e.presentation, f.presentation
        return p.and_(q.not_()).or_(q.and_(p.not_())).first_one()
    verdict = prefix_equal(e, f, budget)
    return None if verdict.ok else verdict.index


def disjoint_union(a: ActualEvent, b: ActualEvent, budget: int = DEFAULT_PREFIX_BUDGET) -> ActualEvent:
    """``(e or e', n -> gamma(2n) + gamma'(2n))`` for ``e and e' = bot``."""
    common = first_common_one(a.event, b.event, budget)
    if common is not None:
        raise NotDisjoint(f"both events are 1 at n={common}", common)
    eta = a.modulus.scale(2) + b.modulus.scale(2)
    return ActualEvent(bool_or(a.event, b.event), eta, trusted=a.trusted and b.trusted)


def _null_refutation(a: ActualEvent, approx_budget: int) -> Optional[int]:
    p = probability(a)
    bound = approx_budget
    pres = a.event.presentation
    if pres is not None:
        d = pres.density()
        if d == 0:
            return None
        # |P(n) - d| <= 1/n, so P(n) > 2/n as soon as n > 3/d
        bound = max(bound, math.floor(3 / d) + 1)
    verdict = eq_refute_upto(p, from_rational(0), bound)
    return None if verdict.ok else verdict.index


def null_subevent(a: ActualEvent, sub: PotentialEvent,
                  prefix_budget: int = DEFAULT_PREFIX_BUDGET,
                  approx_budget: int = DEFAULT_APPROX_BUDGET) -> ActualEvent:
    """``(e', n -> gamma(6n))`` for ``e' <= e`` and ``P(e, gamma) = 0``."""
    bad = _null_refutation(a, approx_budget)
    if bad is not None:
        raise NotNull(f"P({a.event.label}) differs from 0 by more than 2/n at n={bad}", bad)
    excess = first_excess(sub, a.event, prefix_budget)
    if excess is not None:
        raise NotBelow(f"sub-event exceeds event at n={excess}", excess)
    return ActualEvent(sub, a.modulus.scale(6), trusted=a.trusted)


def monotonicity_check(a: ActualEvent, b: ActualEvent, bound: int,
                       prefix_budget: int = DEFAULT_PREFIX_BUDGET) -> Verdict:
    """Check ``P(a) <= P(b)`` for ``e <= e'`` up to ``bound``.

    Both events are read at the common modulus ``eta = gamma + gamma'``;
    the test at ``n`` is ``Phi(e)(eta(2n)) <= Phi(e')(eta(2n)) + 1/n``.
    """
    excess = first_excess(a.event, b.event, prefix_budget)
    if excess is not None:
        raise NotBelow(f"first event exceeds second at n={excess}", excess)
    eta = a.modulus + b.modulus
    for n in range(1, bound + 1):
        k = eta(2 * n)
        if frequency(a.event, k) > frequency(b.event, k) + Fraction(1, n):
            return RefutedAt(n)
    return ConsistentUpTo(bound)


def modularity_check(a: ActualEvent, b: ActualEvent, meet: ActualEvent, join: ActualEvent,
                     bound: int, prefix_budget: int = DEFAULT_PREFIX_BUDGET) -> Verdict:
    """Check ``P(e or e') + P(e and e') = P(e) + P(e')`` up to ``bound``.

    All four are read at ``eps = alpha + beta + gamma + delta``.
    """
    diff = first_difference(meet.event, bool_and(a.event, b.event), prefix_budget)
    if diff is not None:
        raise NotMatching(f"meet event differs from e and e' at n={diff}", diff)
    diff = first_difference(join.event, bool_or(a.event, b.event), prefix_budget)
    if diff is not None:
        raise NotMatching(f"join event differs from e or e' at n={diff}", diff)
    eps = a.modulus + b.modulus + meet.modulus + join.modulus

    def at(x: ActualEvent) -> BishopReal:
        return probability(ActualEvent(x.event, eps))

    lhs = add(at(join), at(meet))
    rhs = add(at(a), at(b))
    return eq_refute_upto(lhs, rhs, bound)
