"""Binary character sums sum_x chi(a*x^(2^alpha + 1) + b*x) over GF(2^e).

Here chi(z) = (-1)^Tr(z) is the canonical additive character, a != 0, and
alpha >= 1.  Writing d = gcd(e, alpha), the sum's value is governed by the
parity of e/d:

* e/d odd: the value is 0 unless b != 0 and the subfield trace
  Tr_d(b*c^-1) equals 1 (c the unique (2^alpha+1)-th root of a), in which
  case only the magnitude 2^((e+d)/2) is determined and the sign is left
  unresolved (`SumValue.kind` = "sign-ambiguous").
* e/d even (so e = 2m): the value is an exact signed power of two decided by
  whether a is a (2^d+1)-th power residue and, for b != 0, by the affine
  equation a^(2^alpha)*x^(2^(2*alpha)) + a*x = b^(2^alpha) over GF(2)
  (solved exactly by `solve_linearized`).

`brute_force_sum` evaluates the definition term by term and is the oracle
the closed forms are tested against.  `legacy_incorrect_sum` reproduces a
superseded evaluation of the (e/d even, b != 0, a residue, solvable) branch
that splits on Tr_d(a); it is wrong whenever Tr_d(a) != 0 and is kept so the
error can be demonstrated against the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf2 import CostRefusal, Field

__all__ = [
    "BRUTE_FORCE_MAX_E",
    "EXACT",
    "SIGN_AMBIGUOUS",
    "LinearizedSolution",
    "SumParams",
    "SumValue",
    "brute_force_sum",
    "closed_form_sum",
    "legacy_incorrect_sum",
    "solve_linearized",
]

BRUTE_FORCE_MAX_E = 20

EXACT = "exact"
SIGN_AMBIGUOUS = "sign-ambiguous"

# Case tags name the branch of the analysis that produced a value.
TAG_ODD_B0 = "odd-b0"
TAG_ODD_TRACE_NOT_ONE = "odd-trace-not-one"
TAG_ODD_TRACE_ONE = "odd-trace-one"
TAG_EVEN_B0_NONRESIDUE = "even-b0-nonresidue"
TAG_EVEN_B0_RESIDUE = "even-b0-residue"
TAG_EVEN_NONRESIDUE = "even-nonresidue"
TAG_EVEN_RESIDUE_UNSOLVABLE = "even-residue-unsolvable"
TAG_EVEN_RESIDUE_SOLVABLE = "even-residue-solvable"
TAG_LEGACY_TRACE_ZERO = "legacy-trace-zero"
TAG_LEGACY_TRACE_NONZERO = "legacy-trace-nonzero"

CASE_TAGS = (
    TAG_ODD_B0,
    TAG_ODD_TRACE_NOT_ONE,
    TAG_ODD_TRACE_ONE,
    TAG_EVEN_B0_NONRESIDUE,
    TAG_EVEN_B0_RESIDUE,
    TAG_EVEN_NONRESIDUE,
    TAG_EVEN_RESIDUE_UNSOLVABLE,
    TAG_EVEN_RESIDUE_SOLVABLE,
)


@dataclass(frozen=True)
class SumParams:
    """Parameters (field, alpha, a, b) of one character sum; a must be nonzero."""

    field: Field
    alpha: int
    a: int
    b: int = 0

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha={self.alpha} must be >= 1")
        if not 0 <= self.a < self.field.q or not 0 <= self.b < self.field.q:
            raise ValueError("a and b must be reduced field elements")
        if self.a == 0:
            raise ValueError("a must be nonzero")

    @property
    def d(self) -> int:
        return math.gcd(self.field.e, self.alpha)

    @property
    def exponent(self) -> int:
        """The power 2^alpha + 1 that x is raised to."""
        return (1 << self.alpha) + 1


@dataclass(frozen=True)
class SumValue:
    """Value of a character sum: exact, or magnitude-only with unresolved sign."""

    kind: str
    case_tag: str
    value: int | None = None
    magnitude: int | None = None

    @classmethod
    def exact(cls, value: int, case_tag: str) -> "SumValue":
        return cls(EXACT, case_tag, value=value, magnitude=abs(value))

    @classmethod
    def ambiguous(cls, magnitude: int, case_tag: str) -> "SumValue":
        return cls(SIGN_AMBIGUOUS, case_tag, value=None, magnitude=magnitude)

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT


@dataclass(frozen=True)
class LinearizedSolution:
    """Solution set of a^(2^alpha)*x^(2^(2*alpha)) + a*x = rhs over GF(2^e).

    The left side is GF(2)-linear in x, so the solutions (if any) form a
    coset of the kernel; `solutions` lists all of them, ascending.
    """

    solvable: bool
    solutions: tuple[int, ...]
    kernel_dim: int


def brute_force_sum(params: SumParams) -> int:
    """Term-by-term evaluation of the sum; the oracle for the closed forms."""
    f = params.field
    if f.e > BRUTE_FORCE_MAX_E:
        raise CostRefusal(
            f"brute force would evaluate 2^{f.e} = {f.q} character terms; "
            f"bound is e <= {BRUTE_FORCE_MAX_E}"
        )
    k = params.exponent
    a, b = params.a, params.b
    total = 0
    for x in f.elements():
        total += f.chi(f.mul(a, f.pow(x, k)) ^ f.mul(b, x))
    return total


def solve_linearized(field: Field, alpha: int, a: int, rhs: int) -> LinearizedSolution:
    """Solve a^(2^alpha)*x^(2^(2*alpha)) + a*x = rhs exactly.

    Builds the e x e GF(2) matrix of the linear map column by column from the
    images of the polynomial basis, then Gaussian-eliminates.  Returns every
    solution plus the kernel dimension.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    e = field.e
    coeff = field.pow(a, 1 << alpha)
    exp2 = 1 << (2 * alpha)

    def image(z: int) -> int:
        return field.mul(coeff, field.pow(z, exp2)) ^ field.mul(a, z)

    # Echelon basis of the column space, tracking preimages.
    pivots: dict[int, tuple[int, int]] = {}
    kernel: list[int] = []
    for j in range(e):
        img, pre = image(1 << j), 1 << j
        while img:
            p = img.bit_length() - 1
            if p not in pivots:
                pivots[p] = (img, pre)
                break
            pi, pp = pivots[p]
            img ^= pi
            pre ^= pp
        else:
            kernel.append(pre)

    r, part = rhs, 0
    while r:
        p = r.bit_length() - 1
        if p not in pivots:
            return LinearizedSolution(False, (), len(kernel))
        pi, pp = pivots[p]
        r ^= pi
        part ^= pp

    sols = [part]
    for kb in kernel:
        sols += [s ^ kb for s in sols]
    return LinearizedSolution(True, tuple(sorted(sols)), len(kernel))


def closed_form_sum(params: SumParams) -> SumValue:
    """Evaluate the sum by case analysis, without iterating the field.

    All branches return exact signed values except (e/d odd, b != 0,
    Tr_d(b*c^-1) = 1), which is sign-ambiguous of magnitude 2^((e+d)/2).
    """
    f = params.field
    e, d, k = f.e, params.d, params.exponent
    a, b = params.a, params.b

    if (e // d) % 2:
        if b == 0:
            return SumValue.exact(0, TAG_ODD_B0)
        # gcd(2^alpha+1, 2^e-1) = 1 here, so a has a unique (2^alpha+1)-th root.
        c = f.pow(a, pow(k, -1, f.order))
        if f.trace_t(f.mul(b, f.inv(c)), d) != 1:
            return SumValue.exact(0, TAG_ODD_TRACE_NOT_ONE)
        return SumValue.ambiguous(1 << ((e + d) // 2), TAG_ODD_TRACE_ONE)

    m = e // 2
    sign = -1 if (m // d) % 2 else 1  # (-1)^(m/d)
    residue = f.is_power_residue(a, (1 << d) + 1)
    if b == 0:
        if residue:
            return SumValue.exact(-sign * (1 << (m + d)), TAG_EVEN_B0_RESIDUE)
        return SumValue.exact(sign * (1 << m), TAG_EVEN_B0_NONRESIDUE)

    sol = solve_linearized(f, params.alpha, a, f.pow(b, 1 << params.alpha))
    if not residue:
        # x -> a^(2^alpha)*x^(2^(2alpha)) + a*x is a permutation here.
        assert sol.kernel_dim == 0 and len(sol.solutions) == 1
        x0 = sol.solutions[0]
        return SumValue.exact(
            sign * (1 << m) * f.chi(f.mul(a, f.pow(x0, k))), TAG_EVEN_NONRESIDUE
        )
    if not sol.solvable:
        return SumValue.exact(0, TAG_EVEN_RESIDUE_UNSOLVABLE)
    assert sol.kernel_dim == 2 * d
    chis = {f.chi(f.mul(a, f.pow(x0, k))) for x0 in sol.solutions}
    assert len(chis) == 1, "character value must not depend on the chosen solution"
    return SumValue.exact(-sign * (1 << (m + d)) * chis.pop(), TAG_EVEN_RESIDUE_SOLVABLE)


def legacy_incorrect_sum(params: SumParams) -> SumValue:
    """Superseded evaluation of the (e/d even, b != 0, a residue, solvable)
    branch, splitting on Tr_d(a).

    Kept for demonstration: when Tr_d(a) = 0 it coincides with
    `closed_form_sum`; when Tr_d(a) != 0 it returns sign*2^m*chi(...) where
    the correct value is -sign*2^(m+d)*chi(...).  Calling it outside its
    branch is a usage error.
    """
    f = params.field
    e, d, k = f.e, params.d, params.exponent
    a, b = params.a, params.b
    if (e // d) % 2:
        raise ValueError("legacy branch requires e/gcd(e, alpha) to be even")
    if b == 0:
        raise ValueError("legacy branch requires b != 0")
    if not f.is_power_residue(a, (1 << d) + 1):
        raise ValueError(f"legacy branch requires a to be a (2^{d}+1)-th power residue")
    sol = solve_linearized(f, params.alpha, a, f.pow(b, 1 << params.alpha))
    if not sol.solvable:
        raise ValueError("legacy branch requires the linearized equation to be solvable")

    m = e // 2
    sign = -1 if (m // d) % 2 else 1
    x0 = sol.solutions[0]  # the character value is solution-independent
    chi = f.chi(f.mul(a, f.pow(x0, k)))
    if f.trace_t(a, d) == 0:
        return SumValue.exact(-sign * (1 << (m + d)) * chi, TAG_LEGACY_TRACE_ZERO)
    return SumValue.exact(sign * (1 << m) * chi, TAG_LEGACY_TRACE_NONZERO)
