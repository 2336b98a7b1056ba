"""Potential events: total 0/1 sequences indexed from 1.

A :class:`PotentialEvent` wraps a deterministic bit generator ``n -> {0,1}``
together with a prefix-sum table ``S(n) = e(1) + ... + e(n)`` that grows on
demand.  Events built from a finite *presentation* (see
:mod:`natdensity.regular`) get closed-form prefix sums instead and keep
their presentation through the Boolean operations, so that ``e and f`` of
two eventually periodic events is again eventually periodic.

Extensional equality is undecidable; :func:`prefix_equal` and
:func:`leq_check` only ever compare a finite prefix.
"""

from __future__ import annotations

import threading
from array import array
from fractions import Fraction
from typing import Callable, Optional

from .verdicts import ConsistentUpTo, RefutedAt, Verdict


class PotentialEvent:
    """A total binary sequence ``e(1), e(2), ...``.

    ``bit`` must be pure.  ``count``, if given, is a closed form for the
    prefix sum and is trusted.  ``presentation`` is an optional finite
    description supporting ``bit``, ``count``, ``and_``, ``or_``, ``not_``
    and ``shift``.
    """

    def __init__(
        self,
        bit: Callable[[int], int],
        *,
        count: Optional[Callable[[int], int]] = None,
        presentation=None,
        label: Optional[str] = None,
    ):
        self._bit = bit
        self._count = count
        self.presentation = presentation
        self.label = label
        self._sums = array("q", [0])
        self._lock = threading.Lock()

    @classmethod
    def from_presentation(cls, p, label: Optional[str] = None) -> "PotentialEvent":
        return cls(p.bit, count=p.count, presentation=p, label=label or str(p))

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"events are indexed from 1, got {n}")
        return self._bit(n)

    eval = __call__

    def count(self, n: int) -> int:
        """Number of 1s among ``e(1..n)``; ``count(0) == 0``."""
        if n < 0:
            raise ValueError(f"prefix length must be >= 0, got {n}")
        if self._count is not None:
            return self._count(n)
        sums = self._sums
        if n < len(sums):
            return sums[n]
        with self._lock:
            top = len(sums) - 1
            if n > top:
                acc = sums[top]
                bit = self._bit
                ext = array("q", bytes(8 * (n - top)))
                for k, i in enumerate(range(top + 1, n + 1)):
                    b = bit(i)
                    if b != 0 and b != 1:
                        raise ValueError(f"event produced non-bit {b!r} at index {i}")
                    acc += b
                    ext[k] = acc
                sums.extend(ext)
        return sums[n]

    def prefix(self, n: int) -> list:
        """The bits ``e(1..n)`` as a list."""
        return [self._bit(i) for i in range(1, n + 1)]

    def __repr__(self) -> str:
        return f"PotentialEvent({self.label or '?'})"


def eval_bit(e: PotentialEvent, n: int) -> int:
    return e(n)


def frequency(e: PotentialEvent, n: int) -> Fraction:
    """Rate of success ``S(n)/n`` over the first ``n`` trials."""
    if n < 1:
        raise ValueError(f"frequency index must be >= 1, got {n}")
    return Fraction(e.count(n), n)


def bottom() -> PotentialEvent:
    from .regular import RegularEvent

    return PotentialEvent.from_presentation(RegularEvent((), (0,)), label="bot")


def top() -> PotentialEvent:
    from .regular import RegularEvent

    return PotentialEvent.from_presentation(RegularEvent((), (1,)), label="top")


def _label(op: str, *events: PotentialEvent) -> str:
    return f"{op}(" + ", ".join(e.label or "?" for e in events) + ")"


def bool_and(e: PotentialEvent, f: PotentialEvent) -> PotentialEvent:
    if e.presentation is not None and f.presentation is not None:
        return PotentialEvent.from_presentation(e.presentation.and_(f.presentation))
    return PotentialEvent(lambda n: e(n) * f(n), label=_label("and", e, f))


def bool_or(e: PotentialEvent, f: PotentialEvent) -> PotentialEvent:
    if e.presentation is not None and f.presentation is not None:
        return PotentialEvent.from_presentation(e.presentation.or_(f.presentation))

    def bit(n):
        a, b = e(n), f(n)
        return a + b - a * b

    return PotentialEvent(bit, label=_label("or", e, f))


def bool_not(e: PotentialEvent) -> PotentialEvent:
    if e.presentation is not None:
        return PotentialEvent.from_presentation(e.presentation.not_())
    return PotentialEvent(lambda n: 1 - e(n), count=lambda n: n - e.count(n), label=_label("not", e))


def heyting_imp(e: PotentialEvent, f: PotentialEvent) -> PotentialEvent:
    """Relative pseudo-complement; on bits it is ``max(1 - e(n), f(n))``."""
    return bool_or(bool_not(e), f)


def shift(e: PotentialEvent) -> PotentialEvent:
    """``e+``: a 0 prepended, ``e+(1) = 0`` and ``e+(n+1) = e(n)``."""
    if e.presentation is not None:
        return PotentialEvent.from_presentation(e.presentation.shift())
    return PotentialEvent(
        lambda n: 0 if n == 1 else e(n - 1),
        count=lambda n: 0 if n <= 1 else e.count(n - 1),
        label=_label("shift", e),
    )


def leq_check(e: PotentialEvent, f: PotentialEvent, bound: int) -> Verdict:
    """Least ``n <= bound`` with ``e(n) > f(n)``, if any."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for n in range(1, bound + 1):
        if e(n) > f(n):
            return RefutedAt(n)
    return ConsistentUpTo(bound)


def prefix_equal(e: PotentialEvent, f: PotentialEvent, bound: int) -> Verdict:
    """Least ``n <= bound`` with ``e(n) != f(n)``, if any."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for n in range(1, bound + 1):
        if e(n) != f(n):
            return RefutedAt(n)
    return ConsistentUpTo(bound)


def find_one(e: PotentialEvent, budget: int) -> Optional[int]:
    """Least ``n <= budget`` with ``e(n) == 1``, or ``None``."""
    for n in range(1, budget + 1):
        if e(n) == 1:
            return n
    return None
