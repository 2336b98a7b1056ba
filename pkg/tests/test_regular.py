import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from natdensity.actual import probability, validate_cauchy
from natdensity.errors import EmptyPeriod
from natdensity.events import bool_and, bool_not, bool_or, frequency, prefix_equal
from natdensity.exact import eq_refute_upto, from_rational
from natdensity.regular import (
    as_potential,
    canonicalize,
    closed_form_density,
    equal_regular,
    period_only_actual,
    preamble_zero_actual,
    reg,
    reg_and,
    reg_not,
    reg_or,
    regular_to_actual,
    shift_actual,
)
from natdensity.actual import bottom_actual

from oracles import brute_canonical, expand, prefix_freq

bits = st.lists(st.integers(0, 1), max_size=6)
periods = st.lists(st.integers(0, 1), min_size=1, max_size=6)
regulars = st.builds(reg, bits, periods)


def within(x, q, upto=64):
    return eq_refute_upto(x, from_rational(q), upto).ok


def test_eval_examples():
    assert as_potential(reg([], [0])).prefix(50) == [0] * 50
    assert as_potential(reg([], [1])).prefix(50) == [1] * 50
    assert as_potential(reg([1], [0, 1])).prefix(5) == [1, 0, 1, 0, 1]


def test_empty_period():
    with pytest.raises(EmptyPeriod):
        reg([1], [])


def test_bad_bits():
    with pytest.raises(ValueError):
        reg([2], [0])


@pytest.mark.parametrize("r,c", [
    (reg([], [1, 0, 1, 0]), reg([], [1, 0])),
    (reg([1, 0], [1, 0]), reg([], [1, 0])),
    (reg([], [1]), reg([], [1])),
    (reg([0, 1, 1], [0, 1, 1, 0, 1, 1]), reg([], [0, 1, 1])),
    (reg([1, 1, 1], [0]), reg([1, 1, 1], [0])),
])
def test_canonical_examples(r, c):
    assert canonicalize(r) == c


def test_equality_examples():
    assert equal_regular(reg([1], [0, 1]), reg([], [1, 0]))
    assert not equal_regular(reg([], [1, 0]), reg([], [0, 1]))
    r = reg([0, 1], [1, 1, 0])
    assert equal_regular(r, r)


def test_boolean_examples():
    assert reg_not(reg([], [1, 0])) == reg([], [0, 1])
    a, o = reg_and(reg([], [1, 0]), reg([], [1, 1, 0])), reg_or(reg([], [1, 0]), reg([], [1, 1, 0]))
    assert equal_regular(a, reg([], [1, 0, 0, 0, 1, 0]))
    assert equal_regular(o, reg([], [1, 1, 1, 1, 1, 0]))
    assert closed_form_density(a) == Fraction(1, 3)
    assert closed_form_density(o) == Fraction(5, 6)


@pytest.mark.parametrize("r,d", [
    (reg([], [0]), 0), (reg([1, 1, 1], [0]), 0), (reg([0], [1, 0, 1]), Fraction(2, 3)),
])
def test_density_examples(r, d):
    assert closed_form_density(r) == d


def test_period_only_examples():
    a = period_only_actual([1, 0])
    assert str(a.modulus) == "8n"
    assert within(probability(a), Fraction(1, 2))
    assert all(probability(period_only_actual([0]))(n) == 0 for n in range(1, 30))
    b = period_only_actual([1, 1, 0, 0])
    assert str(b.modulus) == "16n"
    assert within(probability(b), Fraction(1, 2))


def test_preamble_zero_examples():
    a = preamble_zero_actual([1])
    assert str(a.modulus) == "2n"
    assert within(probability(a), 0)
    assert all(probability(preamble_zero_actual([0, 0]))(n) == 0 for n in range(1, 30))
    b = preamble_zero_actual([1, 1, 1, 1])
    assert str(b.modulus) == "8n"
    assert frequency(b.event, 8) == Fraction(4, 8)
    assert frequency(b.event, 80) == Fraction(4, 80)
    assert validate_cauchy(b).ok
    with pytest.raises(ValueError):
        preamble_zero_actual([])


def test_shift_examples():
    s = shift_actual(bottom_actual())
    assert str(s.modulus) == "3n+1"
    assert s.event.prefix(100) == [0] * 100
    t = shift_actual(period_only_actual([1, 0]))
    assert t.event.prefix(6) == [0, 1, 0, 1, 0, 1]
    assert str(t.modulus) == "24n+1"
    assert within(probability(t), Fraction(1, 2))
    u = period_only_actual([1, 1, 0])
    for _ in range(3):
        u = shift_actual(u)
    assert u.event.prefix(9) == [0, 0, 0, 1, 1, 0, 1, 1, 0]


def test_regular_to_actual_examples():
    assert str(regular_to_actual(reg([], [1, 0])).modulus) == "8n"
    assert within(probability(regular_to_actual(reg([], [1, 0]))), Fraction(1, 2))
    a = regular_to_actual(reg([1], [1, 0]))
    assert str(a.modulus) == "52n+1"
    assert a.modulus(1) == 53
    assert within(probability(regular_to_actual(reg([0, 0], [1]))), 1)


@given(bits, periods)
def test_canonical_matches_brute_force(pre, per):
    c = canonicalize(reg(pre, per))
    assert (c.preamble, c.period) == brute_canonical(tuple(pre), tuple(per))
    n = len(pre) + 3 * len(per)
    assert expand(c.preamble, c.period, n) == expand(pre, per, n)


@settings(max_examples=200)
@given(regulars, regulars)
def test_ops_match_events_core(r, s):
    n = max(len(r.preamble), len(s.preamble)) + 4 * math.lcm(len(r.period), len(s.period))
    e, f = as_potential(r), as_potential(s)
    plain = lambda x: as_potential(reg(x.prefix(n), [0]))  # drop the presentation
    assert as_potential(reg_and(r, s)).prefix(n) == bool_and(plain(e), plain(f)).prefix(n)
    assert as_potential(reg_or(r, s)).prefix(n) == bool_or(plain(e), plain(f)).prefix(n)
    assert as_potential(reg_not(r)).prefix(n) == bool_not(plain(e)).prefix(n)
    assert as_potential(reg_and(r, s, canonical=False)).prefix(n) == as_potential(reg_and(r, s)).prefix(n)


@given(regulars, regulars)
def test_density_laws(r, s):
    assert closed_form_density(reg_not(r)) == 1 - closed_form_density(r)
    assert (closed_form_density(reg_or(r, s)) + closed_form_density(reg_and(r, s))
            == closed_form_density(r) + closed_form_density(s))


@given(regulars)
def test_frequency_error_bound(r):
    la, lp = len(r.preamble), len(r.period)
    d = closed_form_density(r)
    seq = expand(r.preamble, r.period, la + lp + 300)
    for n in range(la + lp, len(seq) + 1):
        assert abs(prefix_freq(seq, n) - d) <= Fraction(la + lp, n)


@settings(max_examples=40, deadline=None)
@given(regulars)
def test_witness_valid_and_consistent(r):
    a = regular_to_actual(r)
    assert validate_cauchy(a).ok
    assert within(probability(a), closed_form_density(r))
    assert prefix_equal(a.event, as_potential(r), 500).ok


def test_random_regular_sanity():
    rng = random.Random(3)
    for _ in range(30):
        r = reg([rng.randint(0, 1) for _ in range(rng.randint(0, 8))],
                [rng.randint(0, 1) for _ in range(rng.randint(1, 8))])
        seq = expand(r.preamble, r.period, 10_000)
        assert abs(prefix_freq(seq, 10_000) - closed_form_density(r)) <= Fraction(16, 10_000)
