"""Exact arithmetic in the binary fields GF(2^e), 2 <= e <= 24.

Elements are nonnegative integers below 2^e whose binary digits are
polynomial-basis coordinates: bit i holds the coefficient of x^i.  Addition
is XOR; multiplication is carry-less polynomial multiplication reduced by a
pinned irreducible modulus of degree e.  Operations assume their element
arguments are already reduced (0 <= value < 2^e); `parse_element` is the
validating boundary for external input.

Two modulus tables ship with the package, frozen from an exhaustive search:

* DEFAULT_MODULI[e] - the irreducible degree-e polynomial with the smallest
  integer encoding;
* ALT_MODULI[e]     - the second smallest (e >= 3; x^2+x+1 is the only
  irreducible of degree 2).

Any result that has mathematical meaning independent of the basis must agree
between the two tables; the test suite relies on that.

Each field also pins a generator of the multiplicative group: the primitive
element with the smallest integer encoding.  Together with the pinned
modulus this makes every computation reproducible across machines.
"""

from __future__ import annotations

import math

__all__ = [
    "ALT_MODULI",
    "CostRefusal",
    "DEFAULT_MODULI",
    "Field",
    "make_field",
    "validate_modulus",
]

E_MIN = 2
E_MAX = 24

# Log/exp tables are built eagerly up to this extension degree; beyond it
# multiplication falls back to shift-and-XOR.
_TABLE_LIMIT = 16

# Smallest irreducible polynomial of each degree, by integer encoding.
DEFAULT_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
    17: 0x20009,
    18: 0x40009,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x100001B,
}

# Second-smallest irreducible of each degree (none exists for degree 2).
ALT_MODULI = {
    3: 0xD,
    4: 0x19,
    5: 0x29,
    6: 0x49,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x40F,
    11: 0x817,
    12: 0x1017,
    13: 0x2027,
    14: 0x402B,
    15: 0x8011,
    16: 0x1002D,
    17: 0x2000F,
    18: 0x40027,
    19: 0x8003F,
    20: 0x10000F,
    21: 0x200027,
    22: 0x400027,
    23: 0x80002B,
    24: 0x100006F,
}


class CostRefusal(RuntimeError):
    """Raised instead of starting a computation whose cost bound is exceeded."""


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _pmod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _pmod(r, m)


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _x_pow_2k(k: int, m: int) -> int:
    """x^(2^k) mod m, by k squarings of the polynomial x."""
    t = 2
    for _ in range(k):
        t = _pmulmod(t, t, m)
    return t


def validate_modulus(e: int, modulus: int) -> None:
    """Raise ValueError unless `modulus` is irreducible of degree exactly e.

    The check is the Rabin criterion: x^(2^e) == x (mod f) together with
    gcd(x^(2^(e/p)) - x, f) = 1 for every prime p dividing e.  The error
    names the failing test and, when a gcd is nontrivial, the factor it
    exposes.
    """
    if modulus.bit_length() != e + 1:
        raise ValueError(
            f"modulus 0x{modulus:x} has degree {modulus.bit_length() - 1}, expected {e}"
        )
    for p in _prime_factors(e):
        t = _x_pow_2k(e // p, modulus)
        g = _pgcd(t ^ 2, modulus)
        if g == modulus:
            raise ValueError(
                f"modulus 0x{modulus:x} is reducible: x^(2^{e // p}) = x (mod modulus), "
                f"so every irreducible factor has degree dividing {e // p}"
            )
        if g != 1:
            raise ValueError(
                f"modulus 0x{modulus:x} is reducible: nontrivial factor 0x{g:x} "
                f"(gcd with x^(2^{e // p}) - x)"
            )
    if _x_pow_2k(e, modulus) != 2:
        raise ValueError(
            f"modulus 0x{modulus:x} is reducible: x^(2^{e}) != x (mod modulus)"
        )


def _mulraw(x: int, y: int, modulus: int, e: int) -> int:
    r = 0
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x >> e:
            x ^= modulus
    return r


def _rawpow(x: int, k: int, modulus: int, e: int) -> int:
    r, b = 1, x
    while k:
        if k & 1:
            r = _mulraw(r, b, modulus, e)
        b = _mulraw(b, b, modulus, e)
        k >>= 1
    return r


def _find_generator(e: int, modulus: int) -> int:
    order = (1 << e) - 1
    cofactors = [order // p for p in _prime_factors(order)]
    for cand in range(2, 1 << e):
        if all(_rawpow(cand, c, modulus, e) != 1 for c in cofactors):
            return cand
    raise AssertionError("no primitive element found; modulus cannot be irreducible")


class Field:
    """GF(2^e) with a pinned modulus and a pinned generator.

    Attributes:
        e: extension degree.
        q: field size 2^e.
        order: multiplicative group order 2^e - 1.
        modulus: irreducible modulus, bit i = coefficient of x^i.
        generator: smallest-encoding primitive element.
    """

    def __init__(self, e: int, modulus: int | None = None):
        if not E_MIN <= e <= E_MAX:
            raise ValueError(f"e={e} outside the supported range {E_MIN}..{E_MAX}")
        if modulus is None:
            modulus = DEFAULT_MODULI[e]
        validate_modulus(e, modulus)
        self.e = e
        self.q = 1 << e
        self.order = self.q - 1
        self.modulus = modulus
        self.generator = _find_generator(e, modulus)

        # Absolute trace is F2-linear: precompute the mask of basis traces so
        # abs_trace reduces to one AND plus a popcount.
        mask = 0
        for i in range(e):
            z = 1 << i
            acc, y = z, z
            for _ in range(e - 1):
                y = _mulraw(y, y, modulus, e)
                acc ^= y
            mask |= acc << i  # acc is 0 or 1
        self._trace_mask = mask

        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if e <= _TABLE_LIMIT:
            exp = [0] * (2 * self.order)
            log = [0] * self.q
            v = 1
            for i in range(self.order):
                exp[i] = v
                exp[i + self.order] = v
                log[v] = i
                v = _mulraw(v, self.generator, modulus, e)
            assert v == 1, "generator order is not 2^e - 1"
            self._exp = exp
            self._log = log

    def __repr__(self) -> str:
        return f"Field(e={self.e}, modulus=0x{self.modulus:x}, generator=0x{self.generator:x})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.e, self.modulus) == (other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.e, self.modulus))

    # --- arithmetic ---

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if self._log is not None:
            if x == 0 or y == 0:
                return 0
            return self._exp[self._log[x] + self._log[y]]
        return _mulraw(x, y, self.modulus, self.e)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._log is not None:
            return self._exp[self.order - self._log[x]]
        return _rawpow(x, self.order - 1, self.modulus, self.e)

    def pow(self, x: int, k: int) -> int:
        """x^k; exponents are reduced mod 2^e - 1 for x != 0, and negative
        exponents invert.  0^0 = 1, 0^k = 0 for k > 0."""
        if x == 0:
            if k < 0:
                raise ZeroDivisionError("0 cannot be raised to a negative power")
            return 1 if k == 0 else 0
        k %= self.order
        if self._log is not None:
            return self._exp[self._log[x] * k % self.order]
        return _rawpow(x, k, self.modulus, self.e)

    # --- traces and characters ---

    def trace_t(self, x: int, t: int) -> int:
        """Relative trace onto the subfield GF(2^t): sum of x^(2^(t*i))."""
        if t <= 0 or self.e % t:
            raise ValueError(f"t={t} does not divide e={self.e}")
        acc, y = x, x
        for _ in range(self.e // t - 1):
            for _ in range(t):
                y = self.mul(y, y)
            acc ^= y
        return acc

    def abs_trace(self, x: int) -> int:
        """Absolute trace onto GF(2), as the integer 0 or 1."""
        return (x & self._trace_mask).bit_count() & 1

    def chi(self, x: int) -> int:
        """Canonical additive character: (-1)^abs_trace(x)."""
        return 1 - 2 * self.abs_trace(x)

    def is_power_residue(self, a: int, s: int) -> bool:
        """Whether a = x^s has a solution, i.e. a^((q-1)/gcd(s, q-1)) = 1.

        Generator-independent; a must be nonzero.
        """
        if a == 0:
            raise ValueError("0 is outside the multiplicative group")
        if s <= 0:
            raise ValueError(f"power s={s} must be positive")
        return self.pow(a, self.order // math.gcd(s, self.order)) == 1

    # --- enumeration and I/O ---

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    def discrete_log(self, x: int) -> int:
        """k with generator^k = x.  Supported for e <= 16 only."""
        if x == 0:
            raise ValueError("0 has no discrete logarithm")
        if self._log is None:
            raise ValueError(f"discrete logs are only supported for e <= {_TABLE_LIMIT}")
        return self._log[x]

    def parse_element(self, text: str) -> int:
        """Parse 'g', 'g^k', or a hexadecimal integer (optional 0x prefix)."""
        t = text.strip().lower()
        if t == "g":
            return self.generator
        if t.startswith("g^"):
            try:
                k = int(t[2:], 10)
            except ValueError:
                raise ValueError(f"malformed generator power {text!r}") from None
            return self.pow(self.generator, k)
        try:
            v = int(t, 16)
        except ValueError:
            raise ValueError(f"malformed element {text!r}: expected hex or g^k") from None
        if not 0 <= v < self.q:
            raise ValueError(f"element 0x{v:x} out of range for GF(2^{self.e})")
        return v

    def format_element(self, x: int, power_of_g: bool = False) -> str:
        """Hex by default; 'g^k' display when requested (e <= 16, x != 0)."""
        if power_of_g:
            if x == 0:
                return "0"
            return f"g^{self.discrete_log(x)}"
        return format(x, "x")

    @property
    def modulus_hex(self) -> str:
        return format(self.modulus, "x")

    @property
    def generator_hex(self) -> str:
        return format(self.generator, "x")


def make_field(e: int, modulus: int | None = None) -> Field:
    """Construct GF(2^e); the pinned table modulus is used when none is given."""
    return Field(e, modulus)
