from __future__ import annotations

import numpy as np
import pytest

from weilcodes import (
    CodeSpec,
    CostRefusal,
    DefiningSet,
    WeightDistribution,
    build_defining_set,
    codeword_weight,
    distributions_match,
    dual_distance_at_least_2,
    length_formula,
    make_field,
    pless_check,
    secret_sharing_check,
    weight_distribution_oracle,
    weight_distribution_theorem,
)

# (e, h, a_text, b_text, n, delta, nonzero rows) for the reference codes.
EXAMPLE_CODES = [
    (5, 1, "1", "0", 511, 192, ((192, 10), (256, 1007), (320, 6))),
    (5, 1, "1", "1", 511, 192, ((192, 10), (256, 1007), (320, 6))),
    (6, 1, "g", "0", 1791, 768, ((768, 36), (896, 4032), (1024, 27))),
    (6, 1, "1", "0", 2559, 1024, ((1024, 9), (1280, 4080), (1536, 6))),
    (6, 1, "g^3", "0", 2559, 1024, ((1024, 9), (1280, 4080), (1536, 6))),
    (6, 1, "g", "1", 2047, 896, ((896, 36), (1024, 4031), (1152, 28))),
    (6, 1, "1", "1", 2047, 768, ((768, 10), (1024, 4079), (1280, 6))),
]


def _spec(e, h, a_text, b_text):
    f = make_field(e)
    return CodeSpec(f, h, f.parse_element(a_text), f.parse_element(b_text))


def _all_specs(f, hs=None):
    for h in hs or (h for h in range(1, f.e) if f.e % h == 0):
        for a in f.nonzero_elements():
            for b in f.elements():
                yield CodeSpec(f, h, a, b)


def test_spec_validation(f6):
    for h in (0, 4, 5, 6, 7):
        with pytest.raises(ValueError):
            CodeSpec(f6, h, 1, 0)
    with pytest.raises(ValueError):
        CodeSpec(f6, 1, 0, 0)
    with pytest.raises(ValueError):
        CodeSpec(f6, 1, 64, 0)
    assert CodeSpec(f6, 2, 1, 0).h == 2


@pytest.mark.parametrize("e,h,a_text,b_text,n,delta,rows", EXAMPLE_CODES)
def test_reference_distributions(e, h, a_text, b_text, n, delta, rows):
    spec = _spec(e, h, a_text, b_text)
    wd = weight_distribution_theorem(spec)
    assert (wd.n, wd.k, wd.delta) == (n, 2 * e, delta)
    assert wd.nonzero_entries == rows
    oracle = weight_distribution_oracle(spec)
    assert distributions_match(wd, oracle)


@pytest.mark.parametrize("e,h,a_text,b_text,n,delta,rows", EXAMPLE_CODES)
def test_reference_defining_sets(e, h, a_text, b_text, n, delta, rows):
    spec = _spec(e, h, a_text, b_text)
    ds = build_defining_set(spec)
    assert ds.n == n == length_formula(spec)
    assert dual_distance_at_least_2(ds)
    pairs = list(ds.pairs)
    assert pairs == sorted(pairs)  # row-major: ascending (x, y)
    f = spec.field
    k = (1 << h) + 1
    for x, y in pairs[:64]:
        lhs = f.add(f.mul(spec.a, f.pow(x, k)), f.mul(spec.b, y))
        assert f.abs_trace(lhs) == 0


def test_length_formula_matches_set_small():
    for e in (2, 3, 4):
        f = make_field(e)
        for spec in _all_specs(f):
            assert length_formula(spec) == build_defining_set(spec).n


def test_codeword_weight_direct(f4, f6):
    for spec in [
        CodeSpec(f4, 1, 1, 0),
        CodeSpec(f4, 1, f4.generator, 3),
        CodeSpec(f4, 2, 1, 1),
    ]:
        ds = build_defining_set(spec)
        pairs = list(ds.pairs)
        f = spec.field
        for u in f.elements():
            for v in f.elements():
                direct = sum(
                    1
                    for x, y in pairs
                    if f.abs_trace(f.add(f.mul(u, x), f.mul(v, y)))
                )
                assert codeword_weight(spec, u, v) == direct
    spec = CodeSpec(f6, 1, 1, 1)
    pairs = list(build_defining_set(spec).pairs)
    rng = np.random.default_rng(7)
    for u, v in zip(rng.integers(0, 64, 40), rng.integers(0, 64, 40)):
        u, v = int(u), int(v)
        direct = sum(
            1
            for x, y in pairs
            if f6.abs_trace(f6.add(f6.mul(u, x), f6.mul(v, y)))
        )
        assert codeword_weight(spec, u, v) == direct
    assert codeword_weight(spec, 0, 0) == 0
    with pytest.raises(ValueError):
        codeword_weight(spec, 64, 0)


@pytest.mark.parametrize("e", [2, 3, 4, 5])
def test_theorem_matches_oracle(e):
    f = make_field(e)
    for spec in _all_specs(f):
        wd = weight_distribution_theorem(spec)
        oracle = weight_distribution_oracle(spec)
        assert distributions_match(wd, oracle), spec
        assert wd.k == 2 * e
        assert wd.delta == oracle.delta


def test_pless_holds_and_detects_perturbation():
    wd = weight_distribution_theorem(_spec(6, 1, "1", "1"))
    assert pless_check(wd)
    bumped = WeightDistribution(
        n=wd.n, k=wd.k, entries=((768, 11), (1024, 4078), (1280, 6)), provenance="x"
    )
    assert not pless_check(bumped)  # total preserved, first moment broken
    grown = WeightDistribution(
        n=wd.n, k=wd.k, entries=((768, 10), (1024, 4079), (1280, 7)), provenance="x"
    )
    assert not pless_check(grown)  # wrong total


def test_dual_distance_detects_zero_pair():
    ds = DefiningSet(xs=np.array([0, 1, 2]), ys=np.array([0, 3, 1]))
    assert not dual_distance_at_least_2(ds)
    ds = DefiningSet(xs=np.array([0, 1]), ys=np.array([2, 0]))
    assert dual_distance_at_least_2(ds)


DEGENERATE_EXEMPLARS = [
    (4, 1, "1", "0", 63, ((0, 3), (32, 252), (64, 0)), "4+252x^32"),
    (4, 2, "1", "1", 127, ((0, 1), (64, 254), (128, 0)), "2+254x^64"),
    (6, 3, "1", "1", 2047, ((0, 1), (1024, 4094), (2048, 0)), "2+4094x^1024"),
]


@pytest.mark.parametrize("e,h,a_text,b_text,n,entries,poly", DEGENERATE_EXEMPLARS)
def test_degenerate_distributions_frozen(e, h, a_text, b_text, n, entries, poly):
    spec = _spec(e, h, a_text, b_text)
    wd = weight_distribution_theorem(spec)
    assert wd.n == n
    assert wd.entries == entries  # zero-multiplicity rows retained
    assert wd.delta == 0
    assert wd.polynomial() == poly
    assert distributions_match(wd, weight_distribution_oracle(spec))


def test_zero_weight_specs_exactly_the_known_families(f4):
    # Nonzero messages encoding to the zero word occur for exactly two
    # families at e=4: (h=1, a a cube, b=0) with three such messages, and
    # (h=2, a a fifth-power residue, b != 0) with one.
    found = {}
    for spec in _all_specs(f4):
        wd = weight_distribution_theorem(spec)
        a0 = dict(wd.nonzero_entries).get(0)
        if a0 is not None:
            found[(spec.h, spec.a, spec.b)] = a0
    expected = {
        (1, a, 0): 3 for a in f4.nonzero_elements() if f4.is_power_residue(a, 3)
    }
    expected.update(
        {
            (2, a, b): 1
            for a in f4.nonzero_elements()
            if f4.is_power_residue(a, 5)
            for b in f4.nonzero_elements()
        }
    )
    assert found == expected
    assert len(found) == 50


def test_json_dict_shape(f4):
    spec = _spec(6, 1, "1", "1")
    doc = weight_distribution_theorem(spec).to_json_dict(spec)
    assert list(doc) == ["n", "k", "delta", "rows", "provenance", "spec"]
    assert doc["rows"] == [
        {"w": 768, "A": 10},
        {"w": 1024, "A": 4079},
        {"w": 1280, "A": 6},
    ]
    assert doc["spec"] == {
        "e": 6,
        "h": 1,
        "modulus_hex": "43",
        "generator_hex": "2",
        "a_hex": "1",
        "b_hex": "1",
    }
    degen = CodeSpec(f4, 1, 1, 0)
    rows = weight_distribution_theorem(degen).to_json_dict(degen)["rows"]
    assert {"w": 64, "A": 0} in rows  # zero-multiplicity row kept


SS_EXEMPLARS = [
    (5, 1, "1", "0", 1, True, True),
    (6, 2, "1", "0", 1, True, True),
    (4, 1, "g", "0", 2, True, True),
    (6, 1, "1", "0", 3, True, True),
    (4, 1, "g", "1", 4, True, True),
    (6, 1, "1", "1", 5, True, True),
    (4, 1, "1", "1", 5, False, False),
    (4, 2, "1", "0", 3, False, True),  # one-weight: sufficient, not necessary
]


@pytest.mark.parametrize("e,h,a_text,b_text,tag,applicable,ratio_ok", SS_EXEMPLARS)
def test_secret_sharing_exemplars(e, h, a_text, b_text, tag, applicable, ratio_ok):
    report = secret_sharing_check(_spec(e, h, a_text, b_text))
    assert report.condition_tag == tag
    assert report.applicable == applicable
    assert report.ratio_ok == ratio_ok


def test_secret_sharing_sound_small():
    for e in (4, 5):
        f = make_field(e)
        for spec in _all_specs(f):
            report = secret_sharing_check(spec)
            if report.applicable:
                assert report.ratio_ok, spec


def test_cost_refusals():
    f14 = make_field(14)
    with pytest.raises(CostRefusal):
        build_defining_set(CodeSpec(f14, 7, 1, 0))
    f9 = make_field(9)
    with pytest.raises(CostRefusal):
        weight_distribution_oracle(CodeSpec(f9, 3, 1, 0))
