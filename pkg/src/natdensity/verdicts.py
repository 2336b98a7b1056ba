"""Outcome types for budgeted (semi-)decisions.

Most predicates in this package are only semi-decidable: a counterexample
can be exhibited, but agreement can only be confirmed up to a budget.  The
types here make that explicit so a caller never mistakes "no counterexample
found" for a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class RefutedAt:
    """A concrete counterexample.  ``index`` is an int or a tuple of ints."""

    index: Union[int, tuple]

    @property
    def ok(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"RefutedAt({_fmt(self.index)})"


@dataclass(frozen=True)
class ConsistentUpTo:
    """No counterexample at indices ``1..bound``."""

    bound: int

    @property
    def ok(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"ConsistentUpTo({self.bound})"


@dataclass(frozen=True)
class ConsistentOver:
    """No counterexample among ``count`` explicitly supplied samples."""

    count: int

    @property
    def ok(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"ConsistentOver({self.count} samples)"


Verdict = Union[RefutedAt, ConsistentUpTo, ConsistentOver]


def _fmt(index) -> str:
    if isinstance(index, tuple):
        return ", ".join(str(i) for i in index)
    return str(index)
