"""Exact arithmetic in the cyclotomic fields Q(zeta_N), zeta_N = exp(2*pi*i/N).

A CycNum of order N holds N rational coefficients (c_0, ..., c_{N-1}) and
stands for sum_i c_i * zeta_N**i.  Coefficient vectors are kept raw, meaning
reduced modulo x**N - 1 only, so a product is a plain cyclic convolution.
Reduction modulo the N-th cyclotomic polynomial Phi_N is deferred to the
places that actually need a canonical form: equality tests, inversion, and
extraction of rational values.  In canonical form every coefficient of index
>= deg(Phi_N) is zero.

Values are immutable; share them freely across threads.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

# Exact rational scalars.  fractions.Fraction already maintains the needed
# invariants (lowest terms, positive denominator).
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotRationalError(ValueError):
    """A value with nonzero zeta-components was read as a rational.

    The offending canonical coefficient vector is kept on the exception so
    callers can report it.
    """

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        super().__init__(f"not a rational value; canonical coefficients {self.coeffs}")


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = CycNum.zero(x.order) if isinstance(x, CycNum) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _int_poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # long division by a monic divisor; remainder must vanish
    assert den[-1] == 1
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for shift in range(len(q) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        q[shift] = c
        if c:
            for j, d in enumerate(den):
                num[shift + j] -= c * d
    if any(num):
        raise ArithmeticError("division was not exact")
    return q


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> IntPoly:
    """N-th cyclotomic polynomial: divide x**N - 1 by Phi_d for proper d | N."""
    if N < 1:
        raise ValueError("order must be >= 1")
    if N == 1:
        return IntPoly((-1, 1))
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _int_poly_exact_div(poly, list(cyclotomic_polynomial(d).coeffs))
    return IntPoly(tuple(poly))


@functools.lru_cache(maxsize=None)
def _reduction_rows(N: int):
    """x**i mod Phi_N for deg(Phi_N) <= i < N, as integer tuples of length deg."""
    phi = cyclotomic_polynomial(N).coeffs
    deg = len(phi) - 1
    base = tuple(-c for c in phi[:deg])  # x**deg == base, since Phi_N is monic
    rows = []
    cur = list(base)
    for _ in range(deg, N):
        rows.append(tuple(cur))
        top = cur[deg - 1]
        cur = [0] + cur[: deg - 1]
        if top:
            for j in range(deg):
                cur[j] += top * base[j]
    return deg, tuple(rows)


class CycNum:
    """An element of Q(zeta_N), order N fixed at construction."""

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs=()):
        if order < 1:
            raise ValueError("order must be >= 1")
        cs = [_ZERO] * order
        for i, c in enumerate(coeffs):
            if i >= order:
                raise ValueError("too many coefficients for the order")
            cs[i] = c if isinstance(c, Fraction) else Fraction(c)
        self.order = order
        self.coeffs = tuple(cs)
        self._canon = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "CycNum":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "CycNum":
        return cls(order, (1,))

    @classmethod
    def from_rational(cls, q, order: int) -> "CycNum":
        return cls(order, (q,))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise ValueError(
                    f"order mismatch ({self.order} vs {other.order}); promote first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycNum(self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycNum.zero(self.order)
            return CycNum(self.order, [a * other for a in self.coeffs])
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(
                f"order mismatch ({self.order} vs {other.order}); promote first"
            )
        N = self.order
        out = [_ZERO] * N
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    if bj:
                        idx = i + j
                        if idx >= N:
                            idx -= N
                        out[idx] += ai * bj
        return CycNum(N, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- canonical form and predicates ------------------------------------

    def canonical(self) -> tuple:
        """Coefficients reduced modulo Phi_N, padded with zeros to length N."""
        if self._canon is None:
            deg, rows = _reduction_rows(self.order)
            low = list(self.coeffs[:deg])
            for i in range(deg, self.order):
                c = self.coeffs[i]
                if c:
                    row = rows[i - deg]
                    for j in range(deg):
                        if row[j]:
                            low[j] += c * row[j]
            low.extend([_ZERO] * (self.order - deg))
            self._canon = tuple(low)
        return self._canon

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.canonical())

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.canonical()[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other, self.order)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.order != self.order:
            m = math.lcm(self.order, other.order)
            return self.promote(m) == other.promote(m)
        return self.canonical() == other.canonical()

    __hash__ = None  # cross-order equality makes a consistent hash awkward

    def __repr__(self):
        deg, _ = _reduction_rows(self.order)
        parts = []
        for i, c in enumerate(self.canonical()[:deg]):
            if c:
                parts.append(f"{c}*z^{i}" if i else f"{c}")
        body = " + ".join(parts) if parts else "0"
        return f"CycNum({self.order}: {body})"

    # -- field operations --------------------------------------------------

    def inverse(self) -> "CycNum":
        """Multiplicative inverse, by the extended Euclid algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        N = self.order
        deg, _ = _reduction_rows(N)
        a = list(self.canonical()[:deg])
        m = [Fraction(c) for c in cyclotomic_polynomial(N).coeffs]
        # invariant: r_i = m*u_i + a*t_i, only t tracked
        r0, t0 = m, []
        r1, t1 = _poly_trim(a), [_ONE]
        while _poly_deg(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, t0, r1, t1 = r1, t1, rem, _poly_sub(t0, _poly_mul(q, t1))
        if not r1:
            raise ZeroDivisionError("value shares a factor with the modulus")
        scale = _ONE / r1[0]
        inv = [c * scale for c in t1]
        return CycNum(N, inv)

    def conjugate(self) -> "CycNum":
        """Complex conjugation, zeta**i -> zeta**(N-i)."""
        N = self.order
        out = [_ZERO] * N
        for i, c in enumerate(self.coeffs):
            if c:
                out[(N - i) % N] += c
        return CycNum(N, out)

    def as_rational(self) -> Fraction:
        """The value as a Fraction, or NotRationalError if zeta survives."""
        canon = self.canonical()
        if any(c != 0 for c in canon[1:]):
            raise NotRationalError(canon)
        return canon[0]

    def promote(self, new_order: int) -> "CycNum":
        """Reinterpret in Q(zeta_M) for a multiple M of the order."""
        if new_order % self.order:
            raise ValueError("new order must be a multiple of the current order")
        s = new_order // self.order
        out = [_ZERO] * new_order
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        return CycNum(new_order, out)

    def embed(self) -> complex:
        """Numerical value in C."""
        N = self.order
        tau = 2.0 * math.pi / N
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.rect(1.0, tau * i)
        return total


def root_power(N: int, m: int) -> CycNum:
    """zeta_N**m, exponent taken modulo N."""
    out = [_ZERO] * N
    out[m % N] = _ONE
    return CycNum(N, out)


# -- small helpers for polynomials over Fraction, lowest degree first -------


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deg(p: list) -> int:
    return len(p) - 1


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        return [], _poly_trim(a)
    q = [_ZERO] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(q) - 1, -1, -1):
        c = a[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for j, d in enumerate(b):
                a[shift + j] -= c * d
    return _poly_trim(q), _poly_trim(a)
