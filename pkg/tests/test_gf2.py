from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilcodes import Field, make_field
from weilcodes.gf2 import (
    ALT_MODULI,
    DEFAULT_MODULI,
    E_MAX,
    E_MIN,
    _prime_factors,
    validate_modulus,
)


@pytest.fixture(scope="module")
def all_fields():
    return {e: make_field(e) for e in range(E_MIN, E_MAX + 1)}


def test_pinned_moduli_are_irreducible():
    assert sorted(DEFAULT_MODULI) == list(range(E_MIN, E_MAX + 1))
    assert sorted(ALT_MODULI) == list(range(3, E_MAX + 1))  # e=2 has one irreducible
    for e, m in DEFAULT_MODULI.items():
        assert m.bit_length() == e + 1
        validate_modulus(e, m)
    for e, m in ALT_MODULI.items():
        assert m != DEFAULT_MODULI[e]
        validate_modulus(e, m)


def test_reducible_moduli_rejected():
    with pytest.raises(ValueError):
        validate_modulus(6, 1 << 6)  # x^6 = x * x^5
    with pytest.raises(ValueError):
        validate_modulus(4, 0b10110)  # x * (x^3 + x + 1)
    with pytest.raises(ValueError, match="factor|degree"):
        # (x+1)(x^2+x+1)(x^3+x+1): every factor degree divides 6, so the
        # x^(2^6) = x congruence alone cannot reject it.
        validate_modulus(6, 0x53)
    with pytest.raises(ValueError):
        validate_modulus(4, 0x7)  # wrong degree


def test_field_degree_bounds():
    with pytest.raises(ValueError):
        make_field(1)
    with pytest.raises(ValueError):
        make_field(E_MAX + 1)


def test_field_axioms_random(all_fields):
    rng = random.Random(0x5EED)
    for e, f in all_fields.items():
        q = f.q
        for _ in range(200 if e > 12 else 500):
            a, b, c = rng.randrange(q), rng.randrange(q), rng.randrange(q)
            assert f.add(a, b) == f.add(b, a)
            assert f.add(a, a) == 0
            assert f.mul(a, b) == f.mul(b, a)
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(a, 1) == a
            if a:
                assert f.mul(a, f.inv(a)) == 1
                assert f.pow(a, q - 1) == 1
                i, j = rng.randrange(50), rng.randrange(50)
                assert f.pow(a, i + j) == f.mul(f.pow(a, i), f.pow(a, j))


def test_generator_has_full_order(all_fields):
    for f in all_fields.values():
        order = f.q - 1
        g = f.generator
        assert f.pow(g, order) == 1
        for p in _prime_factors(order):
            assert f.pow(g, order // p) != 1


def test_pow_edge_cases(f6):
    assert f6.pow(0, 0) == 1
    assert f6.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        f6.pow(0, -1)
    with pytest.raises(ZeroDivisionError):
        f6.inv(0)
    g = f6.generator
    assert f6.mul(f6.pow(g, -1), g) == 1


def test_trace_linear_and_balanced():
    for e in range(2, 9):
        f = make_field(e)
        zeros = sum(1 for x in f.elements() if f.abs_trace(x) == 0)
        assert zeros == f.q // 2
        rng = random.Random(e)
        for _ in range(200):
            x, y = rng.randrange(f.q), rng.randrange(f.q)
            assert f.abs_trace(f.add(x, y)) == f.abs_trace(x) ^ f.abs_trace(y)
            assert f.abs_trace(f.mul(x, x)) == f.abs_trace(x)


def test_trace_counts_frozen(f6):
    assert sum(1 for x in f6.elements() if f6.abs_trace(x) == 0) == 32


def test_trace_transitivity():
    for e in (4, 6, 8, 9):
        f = make_field(e)
        for t in (t for t in range(1, e) if e % t == 0):
            for x in f.elements():
                y = f.trace_t(x, t)
                assert f.pow(y, 1 << t) == y  # lands in the degree-t subfield
                st_y = 0
                for i in range(t):
                    st_y = f.add(st_y, f.pow(y, 1 << i))
                assert st_y == f.abs_trace(x)


def test_trace_t_rejects_nondivisor(f6):
    with pytest.raises(ValueError):
        f6.trace_t(1, 4)


def test_character_orthogonality(f4):
    for a in f4.elements():
        total = sum(f4.chi(f4.mul(a, x)) for x in f4.elements())
        assert total == (f4.q if a == 0 else 0)


def test_power_residue_matches_enumeration(f4, f6):
    for f, s in [(f4, 3), (f4, 5), (f6, 3), (f6, 9)]:
        powers = {f.pow(x, s) for x in f.nonzero_elements()}
        for a in f.nonzero_elements():
            assert f.is_power_residue(a, s) == (a in powers)
    with pytest.raises(ValueError):
        f6.is_power_residue(0, 3)
    with pytest.raises(ValueError):
        f6.is_power_residue(1, 0)


def test_gcd_power_identity():
    # gcd(2^alpha + 1, 2^e - 1) is 2^d + 1 when e/d is even and 1 when odd,
    # with d = gcd(e, alpha).
    for e in range(1, 17):
        for alpha in range(1, 17):
            d = math.gcd(e, alpha)
            expect = (1 << d) + 1 if (e // d) % 2 == 0 else 1
            assert math.gcd((1 << alpha) + 1, (1 << e) - 1) == expect


def test_parse_and_format(f6):
    g = f6.generator
    assert f6.parse_element("g") == g
    assert f6.parse_element("g^0") == 1
    assert f6.parse_element("g^9") == f6.pow(g, 9)
    assert f6.parse_element("0x1e") == 0x1E
    assert f6.parse_element("1e") == 0x1E
    assert f6.parse_element("1E") == 0x1E
    for bad in ("g^", "g^x", "zz", "100", "-1"):
        with pytest.raises(ValueError):
            f6.parse_element(bad)
    assert f6.format_element(0x1E) == "1e"
    assert f6.format_element(0) == "0"
    assert f6.format_element(f6.pow(g, 9), power_of_g=True) == "g^9"
    assert f6.format_element(0, power_of_g=True) == "0"


def test_discrete_log(f6):
    for x in f6.nonzero_elements():
        assert f6.pow(f6.generator, f6.discrete_log(x)) == x
    with pytest.raises(ValueError):
        f6.discrete_log(0)
    f17 = make_field(17)
    with pytest.raises(ValueError):
        f17.discrete_log(3)


def test_field_identity():
    assert make_field(6) == make_field(6)
    alt = make_field(6, ALT_MODULI[6])
    assert make_field(6) != alt
    assert len({make_field(6), make_field(6), alt}) == 2


def test_alt_fields_behave(f6):
    for e in (4, 5, 6):
        f = make_field(e, ALT_MODULI[e])
        assert f.pow(f.generator, f.q - 1) == 1
        assert sum(1 for x in f.elements() if f.abs_trace(x) == 0) == f.q // 2
        total = sum(f.chi(x) for x in f.elements())
        assert total == 0


@given(
    a=st.integers(min_value=0, max_value=63),
    b=st.integers(min_value=0, max_value=63),
    c=st.integers(min_value=0, max_value=63),
)
def test_mul_distributes_hypothesis(a, b, c):
    f = make_field(6)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
