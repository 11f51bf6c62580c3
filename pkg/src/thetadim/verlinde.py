"""The closed dimension formula and its recurrence cross-checks.

The exact backend sums, over strictly decreasing summation vectors v ending
in 0, a twist times a product of Schur values divided by a Weyl-type sine
product, all inside Q(zeta_N) with N = r(r+k); the rational prefactor is
applied at the end and the result must come out a nonnegative integer.
The float backend mirrors the same sum in double precision and rounds.

Two-factor recurrences cut a query into a product of smaller ones; the
congruence-filtered variant rewrites each factor through Hecke moves so the
sides land at degrees 0 and d (up to the formula's exact period r in the
degree).
"""

from __future__ import annotations

import cmath
import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .cyclotomic import CycNum, root_power
from .schur import check_v, s_omega, weyl_denominator, _perm_sign
from .weights import (ParabolicData, SplitContext, build_omega_mu,
                      build_split_omegas, congruence_offset, ell,
                      enumerate_Pk, enumerate_Qk, enumerate_Wk_prime,
                      hecke_basic, hecke_m, hecke_shift, lambda_of_point,
                      normalize_point, omega_total, phi_inverse,
                      split_degrees)


class EvaluationError(ArithmeticError):
    """The formula produced something that cannot be a dimension."""


@dataclass(frozen=True)
class VerlindeQuery:
    genus: int
    rank: int
    degree: int
    omega: ParabolicData

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.rank != self.omega.rank:
            raise ValueError("query rank must match the parabolic data")

    @property
    def level(self) -> int:
        return self.omega.level

    def canonical_key(self) -> str:
        pts = sorted(
            ({"label": p.label, "flag": list(p.flag), "weights": list(p.weights)}
             for p in self.omega.points),
            key=lambda e: e["label"])
        doc = {"genus": self.genus, "rank": self.rank, "degree": self.degree,
               "level": self.level, "points": pts}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class VerlindeResult:
    value: int
    backend: str
    ell_integral: bool
    exceptional_case: bool
    float_residual: float | None = None


@dataclass
class VerifyReport:
    mode: str
    ok: bool
    lhs: int
    rhs: int
    residual: float
    query: VerlindeQuery
    detail: dict = field(default_factory=dict)


def query(g: int, d: int, omega: ParabolicData) -> VerlindeQuery:
    return VerlindeQuery(g, omega.rank, d, omega)


def v_vectors(r: int, k: int):
    """Strictly decreasing vectors (v_1, ..., v_(r-1), 0) with v_1 < r + k."""
    for combo in combinations(range(1, r + k), r - 1):
        yield tuple(sorted(combo, reverse=True)) + (0,)


@functools.lru_cache(maxsize=None)
def _weyl_inverse_promoted(v, g: int, r: int, k: int) -> CycNum:
    N = r * (r + k)
    return weyl_denominator(v, g, r, k).promote(N).inverse()


def closed_term(q: VerlindeQuery, v) -> CycNum:
    """One summand of the exact sum, before the rational prefactor."""
    r, k = q.rank, q.level
    v = check_v(v, r, k)
    n = r + k
    N = r * n
    e = ((q.degree * n - omega_total(q.omega)) * sum(v)) % N
    s = s_omega(q.omega, v).promote(N)
    return root_power(N, e) * s * _weyl_inverse_promoted(v, q.genus, r, k)


def _is_exceptional(q: VerlindeQuery) -> bool:
    # the one configuration the closed sum is not certified for
    return q.genus == 0 and q.degree == 0 and len(q.omega.points) == 3


def _prefactor(q: VerlindeQuery) -> Fraction:
    r, k, g, d = q.rank, q.level, q.genus, q.degree
    pref = Fraction(k, r) ** g * Fraction(r * (r + k) ** (r - 1)) ** (g - 1)
    return -pref if (d * (r - 1)) % 2 else pref


def closed_formula_exact(q: VerlindeQuery) -> VerlindeResult:
    r, k = q.rank, q.level
    total = CycNum.zero(r * (r + k))
    for v in v_vectors(r, k):
        total = total + closed_term(q, v)
    val = (total * _prefactor(q)).as_rational()
    if val.denominator != 1:
        raise EvaluationError(f"dimension came out non-integral: {val}")
    if val < 0:
        raise EvaluationError(f"dimension came out negative: {val}")
    return VerlindeResult(int(val), "exact",
                          ell(q.omega, q.genus, q.degree).denominator == 1,
                          _is_exceptional(q))


def _schur_float(lam, v, n: int) -> complex:
    r = len(v)
    z = [cmath.rect(1.0, 2.0 * math.pi * vj / n) for vj in v]
    exps = [lam[i] + r - 1 - i for i in range(r)]
    num = 0j
    for perm in permutations(range(r)):
        prod = complex(_perm_sign(perm))
        for i in range(r):
            prod *= z[perm[i]] ** exps[i]
        num += prod
    den = 1 + 0j
    for i in range(r):
        for j in range(i + 1, r):
            den *= z[i] - z[j]
    return num / den


def closed_formula_float(q: VerlindeQuery) -> VerlindeResult:
    r, k, g, d = q.rank, q.level, q.genus, q.degree
    n = r + k
    W = omega_total(q.omega)
    total = 0j
    for v in v_vectors(r, k):
        sv = sum(v)
        term = cmath.exp(2j * math.pi * (d / r - W / (r * n)) * sv)
        for p in q.omega.points:
            term *= _schur_float(lambda_of_point(p, k), v, n)
        den = 1.0
        for i in range(r):
            for j in range(i + 1, r):
                den *= (2.0 * math.sin(math.pi * (v[i] - v[j]) / n)) ** (2 * (g - 1))
        total += term / den
    pref = (k / r) ** g * float(r * n ** (r - 1)) ** (g - 1)
    if (d * (r - 1)) % 2:
        pref = -pref
    total *= pref
    value = round(total.real)
    residual = abs(total - value)
    if residual >= 0.5:
        raise EvaluationError(f"float backend precision exhausted (residual {residual})")
    return VerlindeResult(value, "float",
                          ell(q.omega, q.genus, q.degree).denominator == 1,
                          _is_exceptional(q), residual)


# -- memoized dispatch -----------------------------------------------------

_MEMO: dict = {}


def clear_memo():
    _MEMO.clear()


def dimension(q: VerlindeQuery, backend: str = "exact", memo: dict | None = None) -> int:
    if memo is None:
        memo = _MEMO
    key = (q.canonical_key(), backend)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if backend == "exact":
        val = closed_formula_exact(q).value
    elif backend == "float":
        val = closed_formula_float(q).value
    else:
        raise ValueError(f"unknown backend {backend!r}")
    memo[key] = val
    return val


# -- recurrences -----------------------------------------------------------


def genus_recurrence_rhs(q: VerlindeQuery, backend: str = "exact",
                         memo: dict | None = None) -> int:
    """Sum of genus-(g-1) dimensions over all two-point weight extensions."""
    if q.genus < 1:
        raise ValueError("genus recurrence needs genus >= 1")
    total = 0
    for mu in enumerate_Pk(q.rank, q.level):
        sub = VerlindeQuery(q.genus - 1, q.rank, q.degree,
                            build_omega_mu(q.omega, mu))
        total += dimension(sub, backend, memo)
    return total


def _check_ctx(q: VerlindeQuery, ctx: SplitContext):
    if (ctx.rank, ctx.level, ctx.degree) != (q.rank, q.level, q.degree):
        raise ValueError("context was built for a different query")
    if ctx.g1 + ctx.g2 != q.genus:
        raise ValueError("context genus split does not match the query")
    if set(ctx.I1) | set(ctx.I2) != set(q.omega.labels()) or set(ctx.I1) & set(ctx.I2):
        raise ValueError("context point split does not partition the points")


def iter_split_terms(q: VerlindeQuery, ctx: SplitContext,
                     backend: str = "exact", memo: dict | None = None):
    _check_ctx(q, ctx)
    for mu in enumerate_Qk(q.rank, q.level, ctx):
        d1, d2 = split_degrees(mu, ctx)
        o1, o2 = build_split_omegas(q.omega, mu, ctx)
        t1 = dimension(VerlindeQuery(ctx.g1, q.rank, int(d1), o1), backend, memo)
        t2 = dimension(VerlindeQuery(ctx.g2, q.rank, int(d2), o2), backend, memo)
        yield mu, t1 * t2


def split_recurrence_rhs(q: VerlindeQuery, ctx: SplitContext,
                         backend: str = "exact", memo: dict | None = None) -> int:
    """Product factorization over integral-degree weights; an empty index
    set yields 0."""
    return sum(t for _, t in iter_split_terms(q, ctx, backend, memo))


def iter_wprime_terms(q: VerlindeQuery, ctx: SplitContext,
                      backend: str = "exact", memo: dict | None = None):
    _check_ctx(q, ctx)
    r, d = q.rank, q.degree
    off = congruence_offset(q.omega, ctx.I1)
    for lam in enumerate_Wk_prime(r, q.level, off):
        mu = phi_inverse(lam, ctx)
        d1f, d2f = split_degrees(mu, ctx)
        if d1f.denominator != 1:
            raise EvaluationError("recovered weight has a non-integral degree")
        d1, d2 = int(d1f), int(d2f)
        o1, o2 = build_split_omegas(q.omega, mu, ctx)
        s1 = d1 % r
        s2 = (d2 - d) % r
        data1 = hecke_shift(o1, o1.points[-1].label, s1)
        data2 = hecke_shift(o2, o2.points[-1].label, s2)
        if (d1 - s1) % r or (d2 - s2 - d) % r:
            raise EvaluationError("Hecke normalization missed the target degree")
        t1 = dimension(VerlindeQuery(ctx.g1, r, 0, data1), backend, memo)
        t2 = dimension(VerlindeQuery(ctx.g2, r, d, data2), backend, memo)
        yield lam, t1 * t2


def wprime_recurrence_rhs(q: VerlindeQuery, ctx: SplitContext,
                          backend: str = "exact", memo: dict | None = None) -> int:
    """Same product factorization, indexed by the congruence-filtered weight
    set, with each side Hecke-normalized to degrees 0 and d."""
    return sum(t for _, t in iter_wprime_terms(q, ctx, backend, memo))


# -- Hecke transport of whole queries --------------------------------------


def hecke_image(q: VerlindeQuery, label: str, m: int) -> VerlindeQuery:
    """The query with m bottom-block entries at one point wrapped to the top
    and the degree lowered by m.  m = n_1 wraps the whole block."""
    data = normalize_point(q.omega, label)
    p = data.point(label)
    n1 = p.flag[0]
    if m == n1:
        if len(p.flag) == 1:
            pass  # whole-flag wrap: the data is unchanged, only the degree moves
        else:
            data, _ = hecke_basic(data, label)
    elif 1 <= m < n1:
        data, _ = hecke_m(data, label, m)
    else:
        raise ValueError(f"multiplicity must lie in [1, {n1}]")
    return VerlindeQuery(q.genus, q.rank, q.degree - m, data)


def legal_hecke_multiplicities(q: VerlindeQuery, label: str) -> list[int]:
    """All m for which hecke_image is defined at the point."""
    p = normalize_point(q.omega, label).point(label)
    n1 = p.flag[0]
    out = []
    if n1 > 1 and p.weights[-1] < q.level:
        out.extend(range(1, n1))
    if len(p.flag) > 1 and p.weights[-1] < q.level:
        out.append(n1)
    elif len(p.flag) == 1:
        out.append(n1)
    return out


# -- verification ----------------------------------------------------------


def verify(q: VerlindeQuery, mode: str, ctx: SplitContext | None = None,
           point: str | None = None, multiplicity: int | None = None,
           backend: str = "exact", tol: float = 1e-6,
           memo: dict | None = None) -> VerifyReport:
    """Evaluate one side-by-side check; ok means residual zero (exact modes)
    or within tolerance (backend mode)."""
    if mode == "genus":
        lhs = dimension(q, backend, memo)
        rhs = genus_recurrence_rhs(q, backend, memo)
    elif mode == "split":
        if ctx is None:
            raise ValueError("split mode needs a context")
        lhs = dimension(q, backend, memo)
        rhs = split_recurrence_rhs(q, ctx, backend, memo)
    elif mode == "wprime":
        if ctx is None:
            raise ValueError("wprime mode needs a context")
        lhs = dimension(q, backend, memo)
        rhs = wprime_recurrence_rhs(q, ctx, backend, memo)
    elif mode == "hecke":
        if point is None or multiplicity is None:
            raise ValueError("hecke mode needs a point label and a multiplicity")
        lhs = dimension(q, backend, memo)
        rhs = dimension(hecke_image(q, point, multiplicity), backend, memo)
    elif mode == "backend":
        lhs = dimension(q, "exact", memo)
        rf = closed_formula_float(q)
        rhs = rf.value
        residual = abs(lhs - rhs) + (rf.float_residual or 0.0)
        ok = residual <= tol * max(1, abs(lhs))
        return VerifyReport("backend", ok, lhs, rhs, residual, q,
                            {"float_residual": rf.float_residual})
    else:
        raise ValueError(f"unknown mode {mode!r}")
    residual = abs(lhs - rhs)
    detail = {}
    if point is not None:
        detail["point"] = point
    if multiplicity is not None:
        detail["multiplicity"] = multiplicity
    return VerifyReport(mode, residual == 0, lhs, rhs, float(residual), q, detail)
