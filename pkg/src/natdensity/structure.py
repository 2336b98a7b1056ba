"""Stratified probability structures and a rule auditor.

A probability structure sits on a carrier algebra ``P`` (lattice operations,
Heyting implication, De Morgan negation) and singles out a set ``A`` of
elements that have a probability and a Boolean subalgebra ``R`` of
"regular" ones, with ``R <= A <= P``.  Membership in ``A`` is witnessed by a
certificate; ``probability`` needs one.

Three executable instances are provided: natural density on binary
sequences, a finite Kolmogorov space, and fuzzy subsets of a finite space.
:func:`audit_structure` checks the structure rules on a finite sample.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, List, Optional, Sequence, Tuple

from . import actual as act
from . import events as ev
from .errors import ContractViolation, InvalidDegree, InvalidWeights
from .exact import BishopReal, add, eq_refute_upto, format_rational, from_rational, one_minus
from .regular import equal_regular, regular_to_actual


class ApproxReal:
    """A real given by approximants within ``1/n``, possibly known exactly."""

    __slots__ = ("approx", "exact")

    def __init__(self, approx: BishopReal, exact: Optional[Fraction] = None):
        self.approx = approx
        self.exact = exact

    @classmethod
    def of(cls, q) -> "ApproxReal":
        q = Fraction(q)
        return cls(from_rational(q), q)

    def __add__(self, other: "ApproxReal") -> "ApproxReal":
        if self.exact is not None and other.exact is not None:
            return ApproxReal.of(self.exact + other.exact)
        return ApproxReal(add(self.approx, other.approx))

    def one_minus(self) -> "ApproxReal":
        if self.exact is not None:
            return ApproxReal.of(1 - self.exact)
        return ApproxReal(one_minus(self.approx))

    def __repr__(self) -> str:
        if self.exact is not None:
            return format_rational(self.exact)
        return f"~{format_rational(self.approx(1))}"


def real_eq(x: ApproxReal, y: ApproxReal, precision: int) -> Optional[str]:
    """``None`` if consistent with ``x = y``; otherwise a description of the refutation."""
    if x.exact is not None and y.exact is not None:
        return None if x.exact == y.exact else f"{format_rational(x.exact)} != {format_rational(y.exact)}"
    verdict = eq_refute_upto(x.approx, y.approx, precision)
    return None if verdict.ok else f"approximants differ by more than 2/n at n={verdict.index}"


def real_le(x: ApproxReal, y: ApproxReal, precision: int) -> Optional[str]:
    """``None`` if consistent with ``x <= y``: ``y(2n) - x(2n) >= -1/n`` for ``n <= precision``."""
    if x.exact is not None and y.exact is not None:
        return None if x.exact <= y.exact else f"{format_rational(x.exact)} > {format_rational(y.exact)}"
    for n in range(1, precision + 1):
        if y.approx(2 * n) - x.approx(2 * n) < -Fraction(1, n):
            return f"x exceeds y by more than 1/n at n={n}"
    return None


class ProbabilityStructure(ABC):
    """The operations an instance provides to the auditor."""

    name = "structure"

    # carrier ------------------------------------------------------------
    @property
    @abstractmethod
    def bottom(self): ...

    @property
    @abstractmethod
    def top(self): ...

    @abstractmethod
    def meet(self, x, y): ...

    @abstractmethod
    def join(self, x, y): ...

    @abstractmethod
    def neg(self, x): ...

    @abstractmethod
    def imp(self, x, y): ...

    @abstractmethod
    def leq(self, x, y) -> bool: ...

    @abstractmethod
    def equal(self, x, y) -> bool: ...

    # strata -------------------------------------------------------------
    @abstractmethod
    def certify(self, x) -> Any:
        """A certificate of membership in ``A``, or ``None`` if none is known."""

    @abstractmethod
    def is_regular(self, x) -> bool: ...

    @abstractmethod
    def probability(self, x, cert) -> ApproxReal: ...

    def check_certificate(self, x, cert, precision: int) -> Optional[str]:
        """``None`` if ``cert`` survives the instance's spot-check."""
        return None

    def is_null(self, x, cert, precision: int) -> bool:
        return real_eq(self.probability(x, cert), ApproxReal.of(0), precision) is None

    # closure rules produce certificates for the derived elements ---------
    @abstractmethod
    def neg_certificate(self, x, cert): ...

    @abstractmethod
    def disjoint_join_certificate(self, x, cx, y, cy): ...

    @abstractmethod
    def null_sub_certificate(self, x, cx, sub): ...

    def describe(self, x) -> str:
        return str(x)


# -- audit --------------------------------------------------------------------

RULES = (
    "strictness",
    "involution",
    "monotonicity",
    "modularity",
    "null-downward-closure",
    "disjoint-closure",
    "complement-closure",
    "regular-inclusion",
    "regular-boolean-algebra",
)


@dataclass
class RuleResult:
    rule: str
    checked: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)
    max_failures: int = 5
    failed: int = 0

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, ok_or_reason: Optional[str], instance) -> None:
        self.checked += 1
        if ok_or_reason is not None:
            self.failed += 1
            if len(self.failures) < self.max_failures:
                self.failures.append((instance() if callable(instance) else str(instance), ok_or_reason))


@dataclass
class AuditReport:
    structure: str
    precision: int
    results: List[RuleResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed_rules(self) -> List[str]:
        return [r.rule for r in self.results if not r.passed]

    def rows(self) -> List[Tuple[str, str, str, str]]:
        """``(rule, instance, verdict, witness)`` rows."""
        out = []
        for r in self.results:
            if r.passed:
                out.append((r.rule, f"{r.checked} instances", "pass", ""))
            else:
                for inst, why in r.failures:
                    out.append((r.rule, inst, "FAIL", why))
                if r.failed > len(r.failures):
                    out.append((r.rule, f"{r.failed - len(r.failures)} more", "FAIL", ""))
        return out

    def to_tsv(self) -> str:
        lines = ["rule\tinstance\tverdict\twitness"]
        lines += ["\t".join(row) for row in self.rows()]
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = [f"audit of {self.structure} at precision {self.precision}"]
        for rule, inst, verdict, why in self.rows():
            tail = f"  ({why})" if why else ""
            lines.append(f"{verdict:4}  {rule:24}  {inst}{tail}")
        lines.append("all rules pass" if self.passed else "failed: " + ", ".join(self.failed_rules()))
        return "\n".join(lines)


def _attempt(fn):
    """Run a certificate-producing closure; a contract violation becomes a reason."""
    try:
        return fn(), None
    except ContractViolation as exc:
        return None, f"{type(exc).__name__}: {exc}"


def audit_structure(s: ProbabilityStructure, elements: Sequence, precision: int = 32,
                    triple_limit: int = 8) -> AuditReport:
    """Check every structure rule over ``elements`` (plus bottom and top)."""
    results = {name: RuleResult(name) for name in RULES}
    pool = [s.bottom, s.top, *elements]
    d = s.describe

    certs = [s.certify(x) for x in pool]
    certified = [(x, c) for x, c in zip(pool, certs) if c is not None]

    # strictness
    cb = s.certify(s.bottom)
    if cb is None:
        results["strictness"].record("bottom has no certificate", "P(bot)")
    else:
        results["strictness"].record(real_eq(s.probability(s.bottom, cb), ApproxReal.of(0), precision), "P(bot)")

    # involution and complement closure
    for x, c in certified:
        nc, why = _attempt(lambda: s.neg_certificate(x, c))
        if why is None:
            why = s.check_certificate(s.neg(x), nc, precision)
        results["complement-closure"].record(why, lambda: f"not {d(x)}")
        if why is None:
            lhs = s.probability(s.neg(x), nc)
            rhs = s.probability(x, c).one_minus()
            results["involution"].record(real_eq(lhs, rhs, precision), lambda: f"P(not {d(x)}) = 1 - P({d(x)})")

    # pairwise rules
    for (x, cx), (y, cy) in itertools.product(certified, repeat=2):
        m, j = s.meet(x, y), s.join(x, y)
        cm, cj = s.certify(m), s.certify(j)

        if s.leq(x, y):
            results["monotonicity"].record(
                real_le(s.probability(x, cx), s.probability(y, cy), precision),
                lambda: f"{d(x)} <= {d(y)}")
        if cm is not None:
            results["monotonicity"].record(
                real_le(s.probability(m, cm), s.probability(x, cx), precision),
                lambda: f"{d(x)} and {d(y)} <= {d(x)}")

        if cm is not None and cj is not None:
            lhs = s.probability(j, cj) + s.probability(m, cm)
            rhs = s.probability(x, cx) + s.probability(y, cy)
            results["modularity"].record(real_eq(lhs, rhs, precision), lambda: f"{d(x)}, {d(y)}")

        # disjoint closure on (x, y) when disjoint, and on (x, y and not x) always
        nx = s.neg(x)
        candidates = [(y, cy)] if s.equal(m, s.bottom) else []
        ym = s.meet(y, nx)
        cym = s.certify(ym)
        if cym is not None:
            candidates.append((ym, cym))
        for z, cz in candidates:
            jc, why = _attempt(lambda: s.disjoint_join_certificate(x, cx, z, cz))
            if why is None:
                why = s.check_certificate(s.join(x, z), jc, precision)
            results["disjoint-closure"].record(why, lambda: f"{d(x)} or {d(z)}")

        # null downward closure: sub-elements of a null x
        if s.is_null(x, cx, precision):
            sub = m
            sc, why = _attempt(lambda: s.null_sub_certificate(x, cx, sub))
            if why is None:
                why = s.check_certificate(sub, sc, precision)
            results["null-downward-closure"].record(why, lambda: f"{d(sub)} <= null {d(x)}")

    # R is contained in A and is a Boolean algebra
    regs = [x for x in pool if s.is_regular(x)]
    for x in regs:
        results["regular-inclusion"].record(None if s.certify(x) is not None else "no certificate", lambda: d(x))
    _audit_boolean(s, regs, results["regular-boolean-algebra"], triple_limit)

    return AuditReport(s.name, precision, [results[name] for name in RULES])


def _audit_boolean(s: ProbabilityStructure, regs: List, res: RuleResult, triple_limit: int) -> None:
    d = s.describe
    eq = s.equal

    def law(ok: bool, what):
        res.record(None if ok else "law fails", what)

    law(s.is_regular(s.bottom), "bot in R")
    law(s.is_regular(s.top), "top in R")
    for x in regs:
        nx = s.neg(x)
        law(s.is_regular(nx), lambda: f"not {d(x)} in R")
        law(eq(s.neg(nx), x), lambda: f"not not {d(x)} = {d(x)}")
        law(eq(s.meet(x, nx), s.bottom), lambda: f"{d(x)} and not = bot")
        law(eq(s.join(x, nx), s.top), lambda: f"{d(x)} or not = top")
        law(eq(s.meet(x, s.top), x) and eq(s.join(x, s.bottom), x), lambda: f"bounds on {d(x)}")
    for x, y in itertools.product(regs, repeat=2):
        m, j = s.meet(x, y), s.join(x, y)
        law(s.is_regular(m) and s.is_regular(j), lambda: f"{d(x)}, {d(y)} closed")
        law(eq(m, s.meet(y, x)) and eq(j, s.join(y, x)), lambda: f"commutativity {d(x)}, {d(y)}")
        law(eq(s.meet(x, j), x) and eq(s.join(x, m), x), lambda: f"absorption {d(x)}, {d(y)}")
        law(eq(s.neg(m), s.join(s.neg(x), s.neg(y))), lambda: f"De Morgan {d(x)}, {d(y)}")
        law(s.leq(x, y) == eq(m, x), lambda: f"order {d(x)}, {d(y)}")
    few = regs[:triple_limit]
    for x, y, z in itertools.product(few, repeat=3):
        law(eq(s.meet(x, s.join(y, z)), s.join(s.meet(x, y), s.meet(x, z))),
            lambda: f"distributivity {d(x)}, {d(y)}, {d(z)}")
        law(eq(s.meet(s.meet(x, y), z), s.meet(x, s.meet(y, z))),
            lambda: f"associativity {d(x)}, {d(y)}, {d(z)}")


# -- natural density ------------------------------------------------------------


class DensityStructure(ProbabilityStructure):
    """Potential events, actual events (certificate: a modulus), regular events."""

    name = "natural density"

    def __init__(self, prefix_budget: int = act.DEFAULT_PREFIX_BUDGET):
        self.prefix_budget = prefix_budget
        self._bot = ev.bottom()
        self._top = ev.top()
        self._checked = {}

    @property
    def bottom(self):
        return self._bot

    @property
    def top(self):
        return self._top

    def meet(self, x, y):
        return ev.bool_and(x, y)

    def join(self, x, y):
        return ev.bool_or(x, y)

    def neg(self, x):
        return ev.bool_not(x)

    def imp(self, x, y):
        return ev.heyting_imp(x, y)

    def leq(self, x, y) -> bool:
        return act.first_excess(x, y, self.prefix_budget) is None

    def equal(self, x, y) -> bool:
        if x.presentation is not None and y.presentation is not None:
            return equal_regular(x.presentation, y.presentation)
        return act.first_difference(x, y, self.prefix_budget) is None

    def certify(self, x):
        if x.presentation is not None:
            return regular_to_actual(x.presentation).modulus
        return None

    def is_regular(self, x) -> bool:
        return x.presentation is not None

    def probability(self, x, cert) -> ApproxReal:
        return ApproxReal(act.probability(act.ActualEvent(x, cert)))

    def check_certificate(self, x, cert, precision: int) -> Optional[str]:
        key = None
        if x.presentation is not None and cert.affine is not None:
            key = (x.presentation.canonical(), cert.affine, precision)
            if key in self._checked:
                return self._checked[key]
        why = self._check_certificate(x, cert, precision)
        if key is not None:
            self._checked[key] = why
        return why

    def _check_certificate(self, x, cert, precision: int) -> Optional[str]:
        a = act.ActualEvent(x, cert)
        inc = cert.check_increasing(precision)
        if not inc.ok:
            return f"modulus not increasing at n={inc.index}"
        verdict = act.validate_cauchy(a, act.CauchyGrid(min(precision, 16), 64))
        return None if verdict.ok else f"Cauchy condition fails at {verdict.index}"

    def is_null(self, x, cert, precision: int) -> bool:
        if x.presentation is not None:
            return x.presentation.density() == 0
        return super().is_null(x, cert, precision)

    def neg_certificate(self, x, cert):
        return act.complement(act.ActualEvent(x, cert)).modulus

    def disjoint_join_certificate(self, x, cx, y, cy):
        return act.disjoint_union(act.ActualEvent(x, cx), act.ActualEvent(y, cy), self.prefix_budget).modulus

    def null_sub_certificate(self, x, cx, sub):
        return act.null_subevent(act.ActualEvent(x, cx), sub, self.prefix_budget).modulus

    def describe(self, x) -> str:
        if x.presentation is not None:
            return str(x.presentation.canonical())
        return x.label or "?"


def density_instance(prefix_budget: int = act.DEFAULT_PREFIX_BUDGET) -> DensityStructure:
    return DensityStructure(prefix_budget)


# -- finite Kolmogorov space ------------------------------------------------------


def _check_weights(points: Sequence, weights: Sequence) -> Tuple[Fraction, ...]:
    if len(points) != len(weights):
        raise InvalidWeights("need one weight per point")
    if len(set(points)) != len(points):
        raise InvalidWeights("points must be distinct")
    ws = tuple(Fraction(w) for w in weights)
    for p, w in zip(points, ws):
        if w < 0:
            raise InvalidWeights(f"negative weight {format_rational(w)} at point {p!r}")
    if sum(ws) != 1:
        raise InvalidWeights(f"weights sum to {format_rational(sum(ws))}, not 1")
    return ws


class KolmogorovStructure(ProbabilityStructure):
    """All subsets of a finite space; ``P = A = R``; exact probabilities."""

    name = "finite Kolmogorov space"

    def __init__(self, points: Sequence[Hashable], weights: Sequence):
        self.points = tuple(points)
        self.weights = dict(zip(self.points, _check_weights(self.points, weights)))
        self._omega = frozenset(self.points)

    @property
    def bottom(self):
        return frozenset()

    @property
    def top(self):
        return self._omega

    def meet(self, x, y):
        return x & y

    def join(self, x, y):
        return x | y

    def neg(self, x):
        return self._omega - x

    def imp(self, x, y):
        return (self._omega - x) | y

    def leq(self, x, y) -> bool:
        return x <= y

    def equal(self, x, y) -> bool:
        return x == y

    def certify(self, x):
        if not x <= self._omega:
            raise ValueError(f"{set(x)} is not a subset of the space")
        return True

    def is_regular(self, x) -> bool:
        return True

    def probability(self, x, cert) -> ApproxReal:
        return ApproxReal.of(sum((self.weights[p] for p in x), Fraction(0)))

    def neg_certificate(self, x, cert):
        return True

    def disjoint_join_certificate(self, x, cx, y, cy):
        return True

    def null_sub_certificate(self, x, cx, sub):
        return True

    def describe(self, x) -> str:
        return "{" + ",".join(str(p) for p in self.points if p in x) + "}"

    def subsets(self) -> List[frozenset]:
        pts = self.points
        return [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]


def finite_kolmogorov_instance(points: Sequence[Hashable], weights: Sequence) -> KolmogorovStructure:
    return KolmogorovStructure(points, weights)


# -- fuzzy subsets of a finite space -----------------------------------------------


@dataclass(frozen=True)
class FiniteFuzzySpace:
    points: Tuple
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "weights", _check_weights(self.points, self.weights))


class FuzzyStructure(ProbabilityStructure):
    """Fuzzy subsets ``phi: points -> [0,1]`` stored as tuples of rationals.

    Every fuzzy subset is integrable (a finite weighted sum), so ``A = P``;
    ``R`` is the crisp subsets, those with ``not phi == phi -> bot``.
    """

    name = "finite fuzzy space"

    def __init__(self, space: FiniteFuzzySpace):
        self.space = space
        k = len(space.points)
        self._bot = (Fraction(0),) * k
        self._top = (Fraction(1),) * k

    def element(self, degrees: Sequence) -> Tuple[Fraction, ...]:
        """Validate and normalise a membership function given as a sequence."""
        phi = tuple(Fraction(v) for v in degrees)
        if len(phi) != len(self.space.points):
            raise InvalidDegree("need one membership degree per point")
        for p, v in zip(self.space.points, phi):
            if not 0 <= v <= 1:
                raise InvalidDegree(f"degree {format_rational(v)} at point {p!r} is outside [0, 1]")
        return phi

    @property
    def bottom(self):
        return self._bot

    @property
    def top(self):
        return self._top

    def meet(self, x, y):
        return tuple(min(a, b) for a, b in zip(x, y))

    def join(self, x, y):
        return tuple(max(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(1 - a for a in x)

    def imp(self, x, y):
        return tuple(Fraction(1) if a <= b else b for a, b in zip(x, y))

    def leq(self, x, y) -> bool:
        return all(a <= b for a, b in zip(x, y))

    def equal(self, x, y) -> bool:
        return tuple(x) == tuple(y)

    def certify(self, x):
        self.element(x)
        return True

    def is_regular(self, x) -> bool:
        return self.neg(x) == self.imp(x, self._bot)

    def probability(self, x, cert) -> ApproxReal:
        return ApproxReal.of(sum((w * v for w, v in zip(self.space.weights, x)), Fraction(0)))

    def neg_certificate(self, x, cert):
        return True

    def disjoint_join_certificate(self, x, cx, y, cy):
        return True

    def null_sub_certificate(self, x, cx, sub):
        return True

    def describe(self, x) -> str:
        return "(" + ", ".join(format_rational(v) for v in x) + ")"


def finite_fuzzy_instance(space: FiniteFuzzySpace) -> FuzzyStructure:
    return FuzzyStructure(space)


def is_crisp(phi: Sequence[Fraction]) -> bool:
    return all(v in (0, 1) for v in phi)


# -- fault seeding -------------------------------------------------------------------


class DistortedStructure(ProbabilityStructure):
    """``base`` with probability replaced by ``offset + (1 - 2*offset) * P``.

    The affine distortion keeps involution, monotonicity and modularity but
    gives ``P(bot) = offset``, so a sound auditor flags strictness only.
    """

    def __init__(self, base: ProbabilityStructure, offset: Fraction = Fraction(1, 10)):
        self.base = base
        self.offset = Fraction(offset)
        self.name = f"{base.name} with P(bot) = {format_rational(self.offset)}"

    def probability(self, x, cert) -> ApproxReal:
        p = self.base.probability(x, cert)
        a, b = self.offset, 1 - 2 * self.offset
        if p.exact is not None:
            return ApproxReal.of(a + b * p.exact)
        # |b| <= 1 keeps the approximation error within 1/n
        return ApproxReal(BishopReal(lambda n: a + b * p.approx(n)))

    def is_null(self, x, cert, precision: int) -> bool:
        return real_eq(self.probability(x, cert), ApproxReal.of(0), precision) is None

    @property
    def bottom(self):
        return self.base.bottom

    @property
    def top(self):
        return self.base.top

    def meet(self, x, y):
        return self.base.meet(x, y)

    def join(self, x, y):
        return self.base.join(x, y)

    def neg(self, x):
        return self.base.neg(x)

    def imp(self, x, y):
        return self.base.imp(x, y)

    def leq(self, x, y) -> bool:
        return self.base.leq(x, y)

    def equal(self, x, y) -> bool:
        return self.base.equal(x, y)

    def certify(self, x):
        return self.base.certify(x)

    def is_regular(self, x) -> bool:
        return self.base.is_regular(x)

    def check_certificate(self, x, cert, precision: int) -> Optional[str]:
        return self.base.check_certificate(x, cert, precision)

    def neg_certificate(self, x, cert):
        return self.base.neg_certificate(x, cert)

    def disjoint_join_certificate(self, x, cx, y, cy):
        return self.base.disjoint_join_certificate(x, cx, y, cy)

    def null_sub_certificate(self, x, cx, sub):
        return self.base.null_sub_certificate(x, cx, sub)

    def describe(self, x) -> str:
        return self.base.describe(x)


def fault_seeded_instance(base: ProbabilityStructure, offset: Fraction = Fraction(1, 10)) -> DistortedStructure:
    return DistortedStructure(base, offset)
