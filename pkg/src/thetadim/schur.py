"""Schur polynomial values at roots of unity.

Everything here is exact.  A Schur value S_lam(z_1, ..., z_r) with
z_j = zeta_n**v_j is the bialternant ratio det(z_j**(lam_i + r - i)) over
the Vandermonde determinant; both live in Q(zeta_n).  A brute-force
evaluator sums monomials over semistandard tableaux and serves as the
independent oracle.  The three orthogonality sums at the bottom are the
engine behind the dimension recurrences; their checkers return exact
residuals.
"""

from __future__ import annotations

import functools
from itertools import permutations

from .cyclotomic import CycNum, root_power
from .weights import lambda_of_point, mu_star, enumerate_Pk, enumerate_Wk

_BRUTE_LIMIT = 8
_LEIBNIZ_LIMIT = 5


def rho(r: int) -> tuple[int, ...]:
    """The staircase (r-1, r-2, ..., 0)."""
    return tuple(range(r - 1, -1, -1))


def check_v(v, r: int, k: int) -> tuple[int, ...]:
    """Validate a summation vector: strictly decreasing, v_r = 0, v_1 < r + k."""
    v = tuple(int(x) for x in v)
    if len(v) != r:
        raise ValueError("summation vector length must equal the rank")
    if v[-1] != 0:
        raise ValueError("summation vector must end in 0")
    if any(v[i] <= v[i + 1] for i in range(r - 1)):
        raise ValueError("summation vector must strictly decrease")
    if v[0] >= r + k:
        raise ValueError("summation vector entries must stay below r + k")
    return v


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _alternant_leibniz(exps, v, n: int) -> CycNum:
    # det of the matrix zeta_n**(exps[i]*v[j]): entries are single root powers,
    # so each Leibniz term collapses to one exponent sum
    r = len(exps)
    total = CycNum.zero(n)
    for perm in permutations(range(r)):
        e = sum(exps[i] * v[perm[i]] for i in range(r))
        term = root_power(n, e)
        total = total + (term if _perm_sign(perm) > 0 else -term)
    return total


def det_leibniz(mat) -> CycNum:
    """Permutation-sum determinant of a square CycNum matrix."""
    r = len(mat)
    order = mat[0][0].order
    total = CycNum.zero(order)
    for perm in permutations(range(r)):
        prod = CycNum.one(order)
        for i in range(r):
            prod = prod * mat[i][perm[i]]
        total = total + (prod if _perm_sign(perm) > 0 else -prod)
    return total


def det_bareiss(mat) -> CycNum:
    """Fraction-free-style elimination determinant with exact divisions."""
    n = len(mat)
    order = mat[0][0].order
    m = [list(row) for row in mat]
    sign = 1
    prev_inv = CycNum.one(order)
    for col in range(n - 1):
        piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if piv is None:
            return CycNum.zero(order)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for row in range(col + 1, n):
            for c in range(col + 1, n):
                m[row][c] = (m[col][col] * m[row][c]
                             - m[row][col] * m[col][c]) * prev_inv
            m[row][col] = CycNum.zero(order)
        prev_inv = m[col][col].inverse()
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def vandermonde(v, n: int) -> CycNum:
    """Product of (zeta**v_i - zeta**v_j) over i < j."""
    out = CycNum.one(n)
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out = out * (root_power(n, v[i]) - root_power(n, v[j]))
    return out


@functools.lru_cache(maxsize=None)
def _vandermonde_inverse(v, n: int) -> CycNum:
    return vandermonde(v, n).inverse()


@functools.lru_cache(maxsize=None)
def _schur_cached(lam, v, n: int) -> CycNum:
    r = len(v)
    exps = tuple(lam[i] + r - 1 - i for i in range(r))
    if r <= _LEIBNIZ_LIMIT:
        num = _alternant_leibniz(exps, v, n)
    else:
        mat = [[root_power(n, exps[i] * v[j]) for j in range(r)] for i in range(r)]
        num = det_bareiss(mat)
    return num * _vandermonde_inverse(v, n)


def schur_at(lam, v, r: int, k: int) -> CycNum:
    """Exact S_lam at z_j = zeta_(r+k)**v_j, via the bialternant ratio."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != r:
        raise ValueError("partition must have exactly r parts (pad with zeros)")
    if any(lam[i] < lam[i + 1] for i in range(r - 1)) or lam[-1] < 0:
        raise ValueError("partition parts must be nonincreasing and nonnegative")
    v = check_v(v, r, k)
    return _schur_cached(lam, v, r + k)


def schur_brute(lam, v, r: int, k: int) -> CycNum:
    """Independent Schur evaluator: sum one monomial per semistandard
    tableau of shape lam with entries in 1..r."""
    lam = tuple(int(x) for x in lam)
    v = check_v(v, r, k)
    if sum(lam) > _BRUTE_LIMIT:
        raise ValueError(f"partition size exceeds the brute-force guard {_BRUTE_LIMIT}")
    n = r + k
    rows = [size for size in lam if size > 0]
    total = CycNum.zero(n)
    if not rows:
        return CycNum.one(n)

    cells = [(i, j) for i, size in enumerate(rows) for j in range(size)]
    entries = {}

    def fill(idx: int):
        nonlocal total
        if idx == len(cells):
            e = sum(v[t - 1] for t in entries.values())
            total = total + root_power(n, e)
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, entries[(i, j - 1)])          # rows weakly increase
        if i > 0:
            lo = max(lo, entries[(i - 1, j)] + 1)      # columns strictly increase
        for t in range(lo, r + 1):
            entries[(i, j)] = t
            fill(idx + 1)
        entries.pop((i, j), None)

    fill(0)
    return total


def s_omega(omega, v) -> CycNum:
    """Product of the Schur values of every marked point's partition."""
    r, k = omega.rank, omega.level
    out = CycNum.one(r + k)
    for p in omega.points:
        out = out * schur_at(lambda_of_point(p, k), v, r, k)
    return out


def sin_sq(m: int, n: int) -> CycNum:
    """(2 sin(pi m / n))**2 as the exact value 2 - zeta**m - zeta**-m."""
    if m % n == 0:
        raise ValueError("argument is a multiple of the order; sine vanishes")
    return 2 - root_power(n, m) - root_power(n, -m)


@functools.lru_cache(maxsize=None)
def _sin_sq_product(v, n: int) -> CycNum:
    out = CycNum.one(n)
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out = out * sin_sq(v[i] - v[j], n)
    return out


def weyl_denominator(v, g: int, r: int, k: int) -> CycNum:
    """Product over pairs of (2 sin)**2 raised to g - 1; the genus-zero case
    returns the inverse of the product."""
    v = check_v(v, r, k)
    prod = _sin_sq_product(v, r + k)
    if g == 1:
        return CycNum.one(r + k)
    if g == 0:
        return prod.inverse()
    return prod ** (g - 1)


def j_alternant(exps, t) -> CycNum:
    """Antisymmetrized power sum: sum over permutations of
    sign * t_1**e_(tau(1)) * ... * t_r**e_(tau(r))."""
    r = len(exps)
    if r != len(t):
        raise ValueError("need one variable per exponent")
    if r > 6:
        raise ValueError("alternant guard: more than 6 variables")
    order = t[0].order
    total = CycNum.zero(order)
    for perm in permutations(range(r)):
        prod = CycNum.one(order)
        for i in range(r):
            prod = prod * t[i] ** exps[perm[i]]
        total = total + (prod if _perm_sign(perm) > 0 else -prod)
    return total


# -- orthogonality residuals ----------------------------------------------


def identity_52_check(v, r: int, k: int) -> CycNum:
    """Residual of the dual-pairing sum over the open weight set; zero iff
    the identity holds at this summation vector."""
    v = check_v(v, r, k)
    n = r + k
    lhs = CycNum.zero(n)
    for mu in enumerate_Pk(r, k):
        lhs = lhs + schur_at(mu, v, r, k) * schur_at(mu_star(mu, k), v, r, k)
    rhs = root_power(n, k * sum(v)) * (k * n ** (r - 1)) * _sin_sq_product(v, n).inverse()
    return lhs - rhs


def identity_53_check(v, r: int, k: int) -> CycNum:
    """Residual of the dual-pairing sum over the closed bottom-zero set."""
    v = check_v(v, r, k)
    n = r + k
    lhs = CycNum.zero(n)
    for mu in enumerate_Wk(r, k):
        lhs = lhs + schur_at(mu, v, r, k) * schur_at(mu_star(mu, k), v, r, k)
    rhs = root_power(n, k * sum(v)) * (r * n ** (r - 1)) * _sin_sq_product(v, n).inverse()
    return lhs - rhs


def identity_54_check(v, vp, r: int, k: int) -> CycNum:
    """Residual of the twisted cross-pairing sum at two distinct summation
    vectors; zero expresses their orthogonality."""
    v = check_v(v, r, k)
    vp = check_v(vp, r, k)
    if v == vp:
        raise ValueError("the two summation vectors must differ")
    n = r + k
    N = r * n
    sv, svp = sum(v), sum(vp)
    total = CycNum.zero(N)
    for mu in enumerate_Wk(r, k):
        ms = mu_star(mu, k)
        e = (-sum(mu) * sv - sum(ms) * svp) % N
        term = root_power(N, e) \
            * schur_at(mu, v, r, k).promote(N) \
            * schur_at(ms, vp, r, k).promote(N)
        total = total + term
    return total
