"""Defining-set binary linear codes attached to the character sums, and
their weight distributions.

For GF(2^e) = F_q, a proper divisor h of e, a in F_q^*, and b in F_q, the
defining set is

    D = { (x, y) in F_q x F_q, (x, y) != (0, 0) : Tr(a*x^(2^h+1) + b*y) = 0 },

enumerated row-major (x outer, then y).  The code is the image of the message
space F_q^2 under (u, v) -> (Tr(u*x + v*y))_{(x,y) in D}: a binary linear
code of length |D| whose message space has dimension 2e.

Two independent evaluation routes are provided and must agree:

* `weight_distribution_theorem` evaluates closed-form three-weight tables,
  dispatching on the parity of e/h, on b = 0 vs b != 0, and on whether a is
  a (2^h+1)-th power residue;
* `weight_distribution_oracle` counts every codeword weight directly from
  the defining set and assumes none of the closed forms.

Both report the weight multiset over *nonzero messages*, zero-multiplicity
table rows retained explicitly (silently dropping them would hide table
errors).  The reported dimension k is always 2e, the message-space
dimension.

Degenerate corner, small parameters only: when m = h+1 with b = 0 and a a
residue, or e = 2h with b != 0 and a a residue, one table weight degenerates
to 0 with positive multiplicity.  Some nonzero messages then map to the zero
codeword and the true code dimension drops below 2e.  Because distributions
are message multisets, both routes remain exact and comparable there, and
the reported `delta` (min weight of positive multiplicity) becomes 0 --
loudly, on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf2 import CostRefusal, Field
from .expsum import SumParams, brute_force_sum, closed_form_sum

__all__ = [
    "DEFSET_MAX_E",
    "ORACLE_MAX_E",
    "CodeSpec",
    "DefiningSet",
    "SecretSharingReport",
    "WeightDistribution",
    "build_defining_set",
    "codeword_weight",
    "distributions_match",
    "dual_distance_at_least_2",
    "length_formula",
    "pless_check",
    "secret_sharing_check",
    "weight_distribution_oracle",
    "weight_distribution_theorem",
]

DEFSET_MAX_E = 13
ORACLE_MAX_E = 8


@dataclass(frozen=True)
class CodeSpec:
    """Parameters (field, h, a, b) of one code; h a proper divisor of e, a != 0."""

    field: Field
    h: int
    a: int
    b: int = 0

    def __post_init__(self):
        e = self.field.e
        if self.h < 1 or self.h >= e or e % self.h:
            raise ValueError(f"h={self.h} is not a proper divisor of e={e}")
        if not 0 <= self.a < self.field.q or not 0 <= self.b < self.field.q:
            raise ValueError("a and b must be reduced field elements")
        if self.a == 0:
            raise ValueError("a must be nonzero")


@dataclass(frozen=True, eq=False)
class DefiningSet:
    """The set D as parallel coordinate arrays, in enumeration order."""

    xs: np.ndarray
    ys: np.ndarray

    @property
    def n(self) -> int:
        return len(self.xs)

    def __len__(self) -> int:
        return len(self.xs)

    def __iter__(self):
        return zip(self.xs.tolist(), self.ys.tolist())

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.xs.tolist(), self.ys.tolist()))


class _FieldArrays:
    """Vectorized companions to a Field: log/exp/trace tables as numpy arrays."""

    def __init__(self, f: Field):
        self.f = f
        self.q = f.q
        self.order = f.order
        self.exp = np.array(f._exp, dtype=np.int64)
        self.log = np.array(f._log, dtype=np.int64)
        self.tr = np.array([f.abs_trace(z) for z in range(f.q)], dtype=np.uint8)
        self._tr_product: np.ndarray | None = None

    def mul_scalar(self, c: int, vec: np.ndarray) -> np.ndarray:
        """c * vec elementwise; vec entries are field elements."""
        if c == 0:
            return np.zeros_like(vec)
        out = self.exp[self.log[c] + self.log[vec]]
        return np.where(vec == 0, 0, out)

    def pow_map(self, k: int) -> np.ndarray:
        """x^k for every x, k >= 1."""
        idx = self.log[1:] * (k % self.order) % self.order
        return np.concatenate([np.zeros(1, dtype=np.int64), self.exp[idx]])

    def trace_product(self) -> np.ndarray:
        """(q, q) float32 table of Tr(w*z) parities."""
        if self._tr_product is None:
            logs = self.log[1:]
            prod = self.exp[logs[:, None] + logs[None, :]]
            t = np.zeros((self.q, self.q), dtype=np.float32)
            t[1:, 1:] = self.tr[prod]
            self._tr_product = t
        return self._tr_product


_ARRAYS: dict[Field, _FieldArrays] = {}


def _arrays(f: Field) -> _FieldArrays:
    if f not in _ARRAYS:
        _ARRAYS[f] = _FieldArrays(f)
    return _ARRAYS[f]


def build_defining_set(spec: CodeSpec) -> DefiningSet:
    """Enumerate D row-major.  Refuses e > DEFSET_MAX_E."""
    f = spec.field
    if f.e > DEFSET_MAX_E:
        raise CostRefusal(
            f"defining set would enumerate 2^{2 * f.e} = {f.q * f.q} pairs; "
            f"bound is e <= {DEFSET_MAX_E}"
        )
    arr = _arrays(f)
    ax = arr.tr[arr.mul_scalar(spec.a, arr.pow_map((1 << spec.h) + 1))]
    by = arr.tr[arr.mul_scalar(spec.b, np.arange(f.q, dtype=np.int64))]
    keep = (ax[:, None] ^ by[None, :]) == 0
    keep[0, 0] = False
    xs, ys = np.nonzero(keep)
    return DefiningSet(xs=xs.astype(np.int64), ys=ys.astype(np.int64))


def _exact_sum(f: Field, alpha: int, a: int, b: int) -> int:
    """Closed-form sum value, falling back to the oracle when sign-ambiguous."""
    val = closed_form_sum(SumParams(f, alpha, a, b))
    if val.is_exact:
        return val.value
    return brute_force_sum(SumParams(f, alpha, a, b))


def length_formula(spec: CodeSpec) -> int:
    """|D| in closed form: q^2/2 - 1 for b != 0, else q^2/2 + (q/2)*S(a,0) - 1."""
    q = spec.field.q
    if spec.b:
        return q * q // 2 - 1
    return q * q // 2 + (q // 2) * _exact_sum(spec.field, spec.h, spec.a, 0) - 1


def codeword_weight(spec: CodeSpec, u: int, v: int) -> int:
    """Weight of the codeword of message (u, v), in closed form."""
    f = spec.field
    q = f.q
    if not 0 <= u < q or not 0 <= v < q:
        raise ValueError("u and v must be reduced field elements")
    if u == 0 and v == 0:
        return 0
    if spec.b == 0:
        s0 = _exact_sum(f, spec.h, spec.a, 0)
        if v != 0:
            return q * (q + s0) // 4
        return q * (q + s0 - _exact_sum(f, spec.h, spec.a, u)) // 4
    if v != spec.b:
        return q * q // 4
    return q * (q - _exact_sum(f, spec.h, spec.a, u)) // 4


@dataclass(frozen=True)
class WeightDistribution:
    """Weight multiset over the q^2 - 1 nonzero messages.

    `entries` is sorted by weight and may contain zero-multiplicity rows
    (theorem route) or, at degenerate specs, a weight-0 row with positive
    multiplicity.  `k` is the message-space dimension 2e.
    """

    n: int
    k: int
    entries: tuple[tuple[int, int], ...]
    provenance: str

    @property
    def nonzero_entries(self) -> tuple[tuple[int, int], ...]:
        return tuple((w, a) for w, a in self.entries if a > 0)

    @property
    def delta(self) -> int:
        """Smallest weight of positive multiplicity."""
        return min(w for w, a in self.entries if a > 0)

    def polynomial(self) -> str:
        """Weight enumerator as '1+A1x^w1+...'.

        A degenerate weight-0 row folds into the constant term.
        """
        const = 1 + sum(a for w, a in self.entries if w == 0 and a > 0)
        terms = [str(const)]
        terms += [f"{a}x^{w}" for w, a in self.entries if a > 0 and w > 0]
        return "+".join(terms)

    def to_json_dict(self, spec: CodeSpec | None = None) -> dict:
        out: dict = {
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "rows": [{"w": w, "A": a} for w, a in self.entries],
            "provenance": self.provenance,
        }
        if spec is not None:
            out["spec"] = {
                "e": spec.field.e,
                "h": spec.h,
                "modulus_hex": spec.field.modulus_hex,
                "generator_hex": spec.field.generator_hex,
                "a_hex": format(spec.a, "x"),
                "b_hex": format(spec.b, "x"),
            }
        return out


def _pow2(j: int) -> Fraction:
    return Fraction(1 << j) if j >= 0 else Fraction(1, 1 << -j)


def weight_distribution_theorem(spec: CodeSpec) -> WeightDistribution:
    """Closed-form weight distribution.

    Multiplicities are evaluated in exact rational arithmetic because the
    table expressions contain powers 2^(e-2h-1) and 2^(m-h-1) that are
    half-integers at degenerate parameters; the assembled values are always
    integers and that is asserted.
    """
    f = spec.field
    e, h, q = f.e, spec.h, f.q
    rows: list[tuple[int, Fraction]]
    if (e // h) % 2:
        s = 1 << ((e + h) // 2)
        rows = [
            (q * q // 4, Fraction(q * q - (1 << (e - h)) - 1)),
            (q * (q - s) // 4, _pow2(e - h - 1) + _pow2((e - h - 2) // 2)),
            (q * (q + s) // 4, _pow2(e - h - 1) - _pow2((e - h - 2) // 2)),
        ]
        prov = "theorem:odd"
    else:
        m = e // 2
        eps = -1 if (m // h) % 2 else 1
        residue = f.is_power_residue(spec.a, (1 << h) + 1)
        if spec.b == 0:
            if not residue:
                rows = [
                    (q * (q + eps * (1 << m)) // 4, Fraction(q * (q - 1))),
                    (q * q // 4, Fraction(q // 2) + eps * _pow2(m - 1) - 1),
                    (q * (q + eps * (1 << (m + 1))) // 4, Fraction(q // 2) - eps * _pow2(m - 1)),
                ]
                prov = "theorem:even-b0-nonresidue"
            else:
                rows = [
                    (q * (q - eps * (1 << (m + h))) // 4, Fraction(q * q) - _pow2(e - 2 * h)),
                    (q * q // 4, _pow2(e - 2 * h - 1) - eps * _pow2(m - h - 1) - 1),
                    (q * (q - eps * (1 << (m + h + 1))) // 4, _pow2(e - 2 * h - 1) + eps * _pow2(m - h - 1)),
                ]
                prov = "theorem:even-b0-residue"
        else:
            if not residue:
                rows = [
                    (q * q // 4, Fraction(q * q - q - 1)),
                    (q * (q - (1 << m)) // 4, Fraction(q // 2) + _pow2(m - 1)),
                    (q * (q + (1 << m)) // 4, Fraction(q // 2) - _pow2(m - 1)),
                ]
                prov = "theorem:even-nonresidue"
            else:
                rows = [
                    (q * q // 4, Fraction(q * q) - _pow2(e - 2 * h) - 1),
                    (q * (q - (1 << (m + h))) // 4, _pow2(e - 2 * h - 1) + _pow2(m - h - 1)),
                    (q * (q + (1 << (m + h))) // 4, _pow2(e - 2 * h - 1) - _pow2(m - h - 1)),
                ]
                prov = "theorem:even-residue"

    entries = []
    for w, mult in rows:
        assert mult.denominator == 1 and mult >= 0, (spec, w, mult)
        assert w >= 0, (spec, w)
        entries.append((w, int(mult)))
    assert len({w for w, _ in entries}) == 3, "table weights must be distinct"
    entries.sort()
    return WeightDistribution(
        n=length_formula(spec), k=2 * e, entries=tuple(entries), provenance=prov
    )


def weight_distribution_oracle(
    spec: CodeSpec, defining_set: DefiningSet | None = None
) -> WeightDistribution:
    """Count every codeword weight directly from the defining set.

    One unrestricted pass over all q^2 messages: weights are assembled from
    0/1 trace matrices with a float32 matrix product (exact here; every
    accumulated count is below 2^24).  No closed form is consulted.
    """
    f = spec.field
    if f.e > ORACLE_MAX_E:
        raise CostRefusal(
            f"oracle would count 2^{2 * f.e} codewords of length ~2^{2 * f.e - 1}; "
            f"bound is e <= {ORACLE_MAX_E}"
        )
    ds = defining_set if defining_set is not None else build_defining_set(spec)
    t = _arrays(f).trace_product()
    a = t[:, ds.xs]  # a[u, i] = Tr(u * x_i)
    b = t[:, ds.ys]
    sa = a.sum(axis=1)
    sb = b.sum(axis=1)
    w = sa[:, None] + sb[None, :] - 2.0 * (a @ b.T)
    counts = np.bincount(np.rint(w).astype(np.int64).ravel())
    counts[0] -= 1  # drop the zero message
    entries = tuple((i, int(c)) for i, c in enumerate(counts.tolist()) if c)
    return WeightDistribution(n=ds.n, k=2 * f.e, entries=entries, provenance="oracle")


def distributions_match(lhs: WeightDistribution, rhs: WeightDistribution) -> bool:
    """Entry-exact agreement, ignoring zero-multiplicity rows."""
    return (
        lhs.n == rhs.n
        and lhs.k == rhs.k
        and lhs.nonzero_entries == rhs.nonzero_entries
    )


def pless_check(wd: WeightDistribution) -> bool:
    """First two power moments: sum A = 2^k - 1 and sum w*A = n * 2^(k-1)."""
    total = sum(a for _, a in wd.entries)
    weighted = sum(w * a for w, a in wd.entries)
    return total == (1 << wd.k) - 1 and weighted == wd.n * (1 << (wd.k - 1))


def dual_distance_at_least_2(ds: DefiningSet) -> bool:
    """True iff no defining-set coordinate is the zero pair (0, 0)."""
    return not bool(np.any((ds.xs == 0) & (ds.ys == 0)))


@dataclass(frozen=True)
class SecretSharingReport:
    """Sufficiency-condition verdict for the w_min/w_max > 1/2 property.

    `applicable` is the condition's prediction (the branch inequality holds);
    `ratio_ok` is computed independently from the theorem distribution.  The
    conditions are sufficient, not necessary: degenerate one-weight codes
    have ratio 1 with a failing inequality.
    """

    applicable: bool
    condition_tag: int
    ratio_ok: bool


def secret_sharing_check(spec: CodeSpec) -> SecretSharingReport:
    f = spec.field
    e, h, m = f.e, spec.h, f.e // 2
    wd = weight_distribution_theorem(spec)
    ws = [w for w, a in wd.entries if a > 0]
    ratio_ok = 2 * min(ws) > max(ws)
    if (e // h) % 2:
        tag, applicable = 1, e > h + 1
    else:
        eps = -1 if (m // h) % 2 else 1
        if f.is_power_residue(spec.a, (1 << h) + 1):
            if spec.b == 0:
                tag, applicable = 3, m > h + 1 + eps
            else:
                tag, applicable = 5, m > h + 1
        else:
            if spec.b == 0:
                tag, applicable = 2, e > 3 - eps
            else:
                tag, applicable = 4, m > 1
    return SecretSharingReport(applicable=applicable, condition_tag=tag, ratio_ok=ratio_ok)
