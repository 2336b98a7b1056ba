import itertools
import random
from fractions import Fraction

import pytest

from natdensity.errors import InvalidDegree, InvalidWeights
from natdensity.exact import BishopReal
from natdensity.omniscience import oscillator
from natdensity.regular import as_potential, reg, regular_to_actual
from natdensity.structure import (
    RULES,
    ApproxReal,
    FiniteFuzzySpace,
    KolmogorovStructure,
    audit_structure,
    density_instance,
    fault_seeded_instance,
    finite_fuzzy_instance,
    finite_kolmogorov_instance,
    is_crisp,
    real_eq,
    real_le,
)

Q = Fraction
QUARTERS = [Q(i, 4) for i in range(5)]


def dice():
    return finite_kolmogorov_instance(range(1, 7), [Q(1, 6)] * 6)


def prob(s, x):
    return s.probability(x, s.certify(x))


def test_dice_examples():
    s = dice()
    assert prob(s, frozenset({2, 4, 6})).exact == Q(1, 2)
    assert prob(s, frozenset()).exact == 0
    assert prob(s, s.top).exact == 1


def test_fuzzy_examples():
    s = finite_fuzzy_instance(FiniteFuzzySpace(("a", "b"), (Q(1, 2), Q(1, 2))))
    phi = s.element([Q(1, 2), 1])
    assert prob(s, phi).exact == Q(3, 4)
    assert s.neg(phi) == (Q(1, 2), Q(0))
    assert prob(s, s.neg(phi)).exact == Q(1, 4) == 1 - Q(3, 4)
    chi = s.element([1, 0])
    assert s.is_regular(chi)
    assert s.neg(chi) == s.imp(chi, s.bottom)
    assert not s.is_regular(phi)


def test_crisp_detection_law():
    s = finite_fuzzy_instance(FiniteFuzzySpace(("a", "b", "c"), (Q(1, 3),) * 3))
    for degrees in itertools.product(QUARTERS, repeat=3):
        assert s.is_regular(degrees) == is_crisp(degrees)


def test_fuzzy_de_morgan_algebra():
    s = finite_fuzzy_instance(FiniteFuzzySpace(("a", "b"), (Q(1, 4), Q(3, 4))))
    elems = list(itertools.product(QUARTERS, repeat=2))
    for x in elems:
        assert s.neg(s.neg(x)) == x
    for x, y in itertools.product(elems, repeat=2):
        assert s.neg(s.meet(x, y)) == s.join(s.neg(x), s.neg(y))
        assert s.neg(s.join(x, y)) == s.meet(s.neg(x), s.neg(y))


def test_invalid_inputs():
    with pytest.raises(InvalidWeights):
        finite_kolmogorov_instance([1, 2], [Q(1, 2), Q(1, 3)])
    with pytest.raises(InvalidWeights):
        finite_kolmogorov_instance([1, 2], [Q(3, 2), Q(-1, 2)])
    with pytest.raises(InvalidWeights):
        FiniteFuzzySpace(("a",), (Q(1, 2), Q(1, 2)))
    s = finite_fuzzy_instance(FiniteFuzzySpace(("a",), (1,)))
    with pytest.raises(InvalidDegree):
        s.element([Q(3, 2)])


def test_real_comparisons():
    a, b = ApproxReal.of(Q(1, 3)), ApproxReal.of(Q(1, 2))
    assert real_eq(a, a, 32) is None
    assert real_eq(a, b, 32) is not None
    assert real_le(a, b, 32) is None
    assert real_le(b, a, 32) is not None
    wobble = ApproxReal(BishopReal(lambda n: Q(1, 3) + Q(1, 2 * n)))
    assert real_eq(a, wobble, 64) is None


def test_kolmogorov_audit_exhaustive():
    for size in range(1, 5):
        k = finite_kolmogorov_instance(range(size), [Q(1, size)] * size)
        rep = audit_structure(k, k.subsets(), triple_limit=16)
        assert rep.passed, rep.to_text()
    skew = finite_kolmogorov_instance("wxyz", [Q(1, 2), Q(1, 4), Q(1, 8), Q(1, 8)])
    assert audit_structure(skew, skew.subsets()).passed


def test_density_examples():
    s = density_instance()
    bot = s.bottom
    assert s.probability(bot, s.certify(bot)).approx(1) == 0
    alt = as_potential(reg([], [1, 0]))
    assert s.is_regular(alt) and s.certify(alt) is not None
    assert s.certify(oscillator()) is None
    assert not s.is_regular(oscillator())


def test_density_audit():
    s = density_instance()
    rng = random.Random(1)
    elems = [as_potential(reg([rng.randint(0, 1) for _ in range(rng.randint(0, 4))],
                              [rng.randint(0, 1) for _ in range(rng.randint(1, 4))])) for _ in range(20)]
    rep = audit_structure(s, elems, precision=32)
    assert rep.passed, rep.to_text()


@pytest.mark.parametrize("make", [
    lambda: dice(),
    lambda: finite_fuzzy_instance(FiniteFuzzySpace(("a", "b"), (Q(1, 2), Q(1, 2)))),
    lambda: density_instance(),
])
def test_fault_seeding_fails_only_strictness(make):
    s = make()
    if isinstance(s, KolmogorovStructure):
        elems = s.subsets()
    elif s.name == "natural density":
        elems = [as_potential(reg([], [1, 0])), as_potential(reg([1], [0])), as_potential(reg([0], [1, 1, 0]))]
    else:
        elems = list(itertools.product(QUARTERS, repeat=2))
    assert audit_structure(s, elems).passed
    rep = audit_structure(fault_seeded_instance(s), elems)
    assert rep.failed_rules() == ["strictness"], rep.to_text()


class Squared(KolmogorovStructure):
    name = "squared measure"

    def probability(self, x, cert):
        return ApproxReal.of(super().probability(x, cert).exact ** 2)


def test_audit_catches_non_modular_measure():
    s = Squared(range(3), [Q(1, 3)] * 3)
    rep = audit_structure(s, s.subsets())
    assert "modularity" in rep.failed_rules()
    assert "involution" in rep.failed_rules()
    assert "strictness" not in rep.failed_rules()


def test_report_formats():
    k = dice()
    rep = audit_structure(k, k.subsets()[:10])
    assert [row[0] for row in rep.rows()] == list(RULES)
    assert rep.to_tsv().splitlines()[0] == "rule\tinstance\tverdict\twitness"
    assert rep.to_text().endswith("all rules pass")
    bad = audit_structure(fault_seeded_instance(k), k.subsets()[:10])
    assert "FAIL" in bad.to_text() and bad.to_text().endswith("failed: strictness")


def test_density_certificate_is_real_witness():
    s = density_instance()
    e = as_potential(reg([1], [1, 0]))
    cert = s.certify(e)
    assert str(cert) == str(regular_to_actual(reg([1], [1, 0])).modulus) == "52n+1"
    assert s.check_certificate(e, cert, 16) is None
