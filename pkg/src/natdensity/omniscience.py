"""Decision procedures around the limited principle of omniscience.

LPO asks, of a binary sequence, whether it is identically 0 or has a 1.
That is decidable for regular events (look at the preamble and one period)
and so is whether their density is 0 or positive.  For arbitrary events
only bounded search is available; a positive probability certificate turns
bounded search into a guaranteed hit.  The oscillating block sequence
``1 0 11 00 1111 0000 ...`` has no limiting frequency, which
:func:`oscillation_report` exhibits numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple, Union

from .actual import ActualEvent, DEFAULT_APPROX_BUDGET, _null_refutation, probability
from .errors import InternalContradiction, NotNull
from .events import PotentialEvent, find_one
from .exact import PositiveAt, format_rational, separate_from_zero
from .regular import RegularEvent, closed_form_density


@dataclass(frozen=True)
class AllZero:
    def __str__(self) -> str:
        return "AllZero"


@dataclass(frozen=True)
class WitnessAt:
    index: int

    def __str__(self) -> str:
        return f"WitnessAt({self.index})"


@dataclass(frozen=True)
class ProbZero:
    def __str__(self) -> str:
        return "ProbZero"


@dataclass(frozen=True)
class ProbPositive:
    density: Fraction

    def __str__(self) -> str:
        return f"ProbPositive({format_rational(self.density)})"


@dataclass(frozen=True)
class Undecided:
    budget: int

    def __str__(self) -> str:
        return f"Undecided({self.budget})"


LpoVerdict = Union[AllZero, WitnessAt, ProbZero, ProbPositive, Undecided]


def lpo_regular(r: RegularEvent) -> LpoVerdict:
    """Total: the first 1 lies in the preamble or the first period, if anywhere."""
    n = r.first_one()
    return AllZero() if n is None else WitnessAt(n)


def p_lpo_regular(r: RegularEvent) -> LpoVerdict:
    """P-LPO on regular events, derived from the LPO decision.

    An identically-0 event has probability 0.
    """
    verdict = lpo_regular(r)
    return ProbZero() if isinstance(verdict, AllZero) else verdict


def pp_lpo_regular(r: RegularEvent) -> LpoVerdict:
    """Total: the density is a computable rational, so compare it with 0."""
    d = closed_form_density(r)
    return ProbZero() if d == 0 else ProbPositive(d)


def witness_search(e: PotentialEvent, budget: int) -> LpoVerdict:
    """Bounded search for a 1.  Never answers ``AllZero``."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = find_one(e, budget)
    return Undecided(budget) if n is None else WitnessAt(n)


def p_lpo_from_separation(a: ActualEvent, budget: int) -> LpoVerdict:
    """Turn ``P(a) > 0`` into a concrete 1.

    If ``P(a)(m) > 1/m`` then ``S(gamma(m)) > gamma(m)/m > 0``, so a 1 must
    occur among the first ``gamma(m)`` bits.
    """
    sep = separate_from_zero(probability(a), budget)
    if not isinstance(sep, PositiveAt):
        return Undecided(budget)
    m = sep.index
    horizon = a.modulus(m)
    n = find_one(a.event, horizon)
    if n is None:
        raise InternalContradiction(
            f"P(m={m}) > 1/m but no 1 among the first {horizon} bits; the modulus is not valid", m)
    return WitnessAt(n)


def p_lpo_null(a: ActualEvent, approx_budget: int = DEFAULT_APPROX_BUDGET) -> LpoVerdict:
    """P-LPO on null events: the null certificate is the answer.

    The certificate is spot-checked; a refuted one raises :class:`NotNull`.
    """
    bad = _null_refutation(a, approx_budget)
    if bad is not None:
        raise NotNull(f"null certificate refuted at n={bad}", bad)
    return ProbZero()


# -- the oscillator -----------------------------------------------------------
#
# Blocks come in pairs: pair k is 2**k ones followed by 2**k zeros.  Pair k
# starts after 2*(2**k - 1) positions.


def _pair_of(i: int) -> Tuple[int, int]:
    """``(k, offset)`` with ``i`` at 1-based ``offset`` inside pair ``k``."""
    # largest k with 2*(2**k - 1) < i, i.e. 2**(k+1) < i + 2
    k = (i + 1).bit_length() - 2
    return k, i - 2 * ((1 << k) - 1)


def _oscillator_bit(i: int) -> int:
    k, off = _pair_of(i)
    return 1 if off <= (1 << k) else 0


def _oscillator_count(n: int) -> int:
    if n <= 0:
        return 0
    k, off = _pair_of(n)
    return (1 << k) - 1 + min(off, 1 << k)


def oscillator() -> PotentialEvent:
    """``1 0 11 00 1111 0000 ...``: blocks of 2**k ones then 2**k zeros."""
    return PotentialEvent(_oscillator_bit, count=_oscillator_count, label="blocks()")


def ones_block_end(k: int) -> int:
    """Index of the last 1 in pair ``k``."""
    return 3 * (1 << k) - 2


def zeros_block_end(k: int) -> int:
    """Index of the last 0 in pair ``k``."""
    return 2 * ((1 << (k + 1)) - 1)


@dataclass
class OscillationReport:
    """Frequency extremes of an event over its first ``upto`` terms.

    ``boundaries`` lists ``(index, kind, frequency)`` at the end of every run
    of equal bits inside the tail window ``[upto//2, upto]``; frequencies peak
    at the end of a run of 1s and bottom out at the end of a run of 0s.
    ``gap`` is ``limsup_estimate - liminf_estimate`` over that window and
    ``gap_index`` the least ``n`` with ``gap > 1/n``: no modulus can satisfy
    the Cauchy condition at that ``n`` if the gap persists.
    """

    upto: int
    running_min: Fraction
    running_max: Fraction
    liminf_estimate: Fraction
    limsup_estimate: Fraction
    gap: Fraction
    gap_index: Union[int, None]
    boundaries: List[Tuple[int, str, Fraction]] = field(default_factory=list)
    _event: PotentialEvent = field(default=None, repr=False)

    def lines(self) -> List[str]:
        out = [
            f"terms: {self.upto}",
            f"running min: {format_rational(self.running_min)}",
            f"running max: {format_rational(self.running_max)}",
            f"liminf estimate: {format_rational(self.liminf_estimate)}",
            f"limsup estimate: {format_rational(self.limsup_estimate)}",
            f"gap: {format_rational(self.gap)}",
            "gap exceeds 1/n from n = " + ("-" if self.gap_index is None else str(self.gap_index)),
        ]
        tail = self.boundaries[-6:]
        if tail:
            out.append("last run ends:")
            out.extend(f"  {i}\t{kind}\t{format_rational(f)}" for i, kind, f in tail)
        return out

    def rows(self):
        """``(index, numerator, denominator, running_min, running_max)`` for every index."""
        e = self._event
        lo = hi = None
        for k in range(1, self.upto + 1):
            f = Fraction(e.count(k), k)
            lo = f if lo is None or f < lo else lo
            hi = f if hi is None or f > hi else hi
            yield k, e.count(k), k, lo, hi


def oscillation_report(e: PotentialEvent, upto: int) -> OscillationReport:
    if upto < 2:
        raise ValueError("upto must be >= 2")
    lo = hi = None
    tail_start = upto // 2
    boundaries = []
    prev_bit = e(1)
    for k in range(1, upto + 1):
        f = Fraction(e.count(k), k)
        lo = f if lo is None or f < lo else lo
        hi = f if hi is None or f > hi else hi
        nxt = e(k + 1)
        if k >= tail_start and (nxt != prev_bit or k == upto):
            boundaries.append((k, "ones" if prev_bit else "zeros", f))
        prev_bit = nxt

    tail = [f for _, _, f in boundaries]
    liminf, limsup = min(tail), max(tail)
    gap = limsup - liminf
    gap_index = None if gap == 0 else int(1 / gap) + 1
    return OscillationReport(upto, lo, hi, liminf, limsup, gap, gap_index, boundaries, e)
