"""Parabolic weight data and the combinatorics that rewrites it.

A marked point carries a flag type (block multiplicities summing to the
rank) and one strictly increasing weight per block.  Weights live in
[0, level]; the top weight equals the level only on data produced by a
partial Hecke move, enumeration and construction stay strictly below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Weight = tuple[int, ...]


@dataclass(frozen=True)
class MarkedPoint:
    label: str
    flag: tuple[int, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "flag", tuple(int(n) for n in self.flag))
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))

    def validate(self, rank: int, level: int):
        if not self.label:
            raise ValueError("point label must be nonempty")
        if len(self.flag) != len(self.weights) or not self.flag:
            raise ValueError(f"point {self.label}: flag and weights must have equal positive length")
        if any(n < 1 for n in self.flag):
            raise ValueError(f"point {self.label}: flag multiplicities must be positive")
        if sum(self.flag) != rank:
            raise ValueError(f"point {self.label}: flag multiplicities must sum to the rank")
        if any(b <= a for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError(f"point {self.label}: weights must strictly increase")
        if self.weights[0] < 0 or self.weights[-1] > level:
            raise ValueError(f"point {self.label}: weights must lie in [0, level]")


@dataclass(frozen=True)
class ParabolicData:
    rank: int
    level: int
    points: tuple[MarkedPoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise ValueError("point labels must be distinct")
        for p in self.points:
            p.validate(self.rank, self.level)

    def point(self, label: str) -> MarkedPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(f"no point labelled {label!r}")

    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points)

    def replace_point(self, label: str, new: MarkedPoint) -> "ParabolicData":
        pts = tuple(new if p.label == label else p for p in self.points)
        return ParabolicData(self.rank, self.level, pts)


def chi(g: int, r: int, d: int) -> int:
    """Euler characteristic d + r(1 - g)."""
    return d + r * (1 - g)


def jumps(p: MarkedPoint) -> list[tuple[int, int]]:
    """(jump height, subflag rank) pairs (d_i, r_i), one per weight step."""
    out = []
    acc = 0
    for i in range(len(p.flag) - 1):
        acc += p.flag[i]
        out.append((p.weights[i + 1] - p.weights[i], acc))
    return out


def jump_sum(p: MarkedPoint) -> int:
    """Sum of jump height times subflag rank over the point's weight steps."""
    return sum(d * r for d, r in jumps(p))


def ell(omega: ParabolicData, g: int, d: int) -> Fraction:
    """Twisting integer of the determinant line; a Fraction so callers can
    see (and flag) the non-integral case instead of crashing."""
    total = sum(jump_sum(p) for p in omega.points)
    return Fraction(omega.level * chi(g, omega.rank, d) - total, omega.rank)


def lambda_of_point(p: MarkedPoint, level: int) -> Weight:
    """The padded partition attached to a point: level - a_i, repeated n_i times."""
    out = []
    for n, a in zip(p.flag, p.weights):
        out.extend([level - a] * n)
    return tuple(out)


def omega_total(omega: ParabolicData) -> int:
    """Sum of |lambda_x| over all marked points."""
    return sum(sum(lambda_of_point(p, omega.level)) for p in omega.points)


def mu_star(mu: Weight, k: int) -> Weight:
    """Dual weight (k - mu_r, ..., k - mu_1)."""
    return tuple(k - m for m in reversed(mu))


# -- enumeration -----------------------------------------------------------


def _bounded_nonincreasing(r: int, top: int):
    # nonincreasing tuples of length r with entries in [0, top], lexicographic
    if top < 0:
        return
    if r == 0:
        yield ()
        return
    for first in range(top + 1):
        for rest in _bounded_nonincreasing(r - 1, first):
            yield (first,) + rest


def enumerate_Pk(r: int, k: int):
    """Weights with k > mu_1 >= ... >= mu_r >= 0, lexicographic order."""
    yield from _bounded_nonincreasing(r, k - 1)


def enumerate_Wk(r: int, k: int):
    """Weights with k >= mu_1 >= ... >= mu_r = 0, lexicographic order."""
    if r == 1:
        yield (0,)
        return
    for head in _bounded_nonincreasing(r - 1, k):
        yield head + (0,)


def enumerate_Wk_prime(r: int, k: int, congruence_offset: int):
    """The Wk stream filtered by (offset + |mu|) = 0 mod r."""
    for mu in enumerate_Wk(r, k):
        if (congruence_offset + sum(mu)) % r == 0:
            yield mu


def congruence_offset(omega: ParabolicData, side_labels) -> int:
    """Sum of jump_sum over the named points, reduced mod the rank."""
    side = set(side_labels)
    total = sum(jump_sum(p) for p in omega.points if p.label in side)
    return total % omega.rank


# -- splitting a query in two ----------------------------------------------


@dataclass(frozen=True)
class SplitContext:
    """Everything a two-factor recurrence needs to know about how the query
    was cut: genus split, point split, twisting split, and the derived
    rational prefactors n1/n2 of the induced degrees."""

    g1: int
    g2: int
    I1: tuple[str, ...]
    I2: tuple[str, ...]
    c1: int
    c2: int
    ell: int
    n1: Fraction
    n2: Fraction
    rank: int
    level: int
    degree: int


def n_split(omega: ParabolicData, ell_value, c1: int, c2: int, I1_labels):
    """The pair (n1, n2) determined by the twisting split and point split."""
    r, k = omega.rank, omega.level
    l1 = Fraction(c1 * ell_value, c1 + c2)
    l2 = Fraction(c2 * ell_value, c1 + c2)
    side1 = set(I1_labels)
    off1 = sum(jump_sum(p) for p in omega.points if p.label in side1)
    off2 = sum(jump_sum(p) for p in omega.points if p.label not in side1)
    return Fraction(r * l1 + off1, k), Fraction(r * l2 + off2, k)


def split_context(omega: ParabolicData, g: int, d: int, I1_labels, g1: int,
                  c1: int, c2: int) -> SplitContext:
    if not 0 <= g1 <= g:
        raise ValueError("g1 must lie in [0, g]")
    if c1 < 1 or c2 < 1:
        raise ValueError("c1, c2 must be positive")
    I1 = tuple(I1_labels)
    known = set(omega.labels())
    if len(set(I1)) != len(I1) or any(x not in known for x in I1):
        raise ValueError("I1 must name distinct existing points")
    I2 = tuple(x for x in omega.labels() if x not in set(I1))
    l = ell(omega, g, d)
    if l.denominator != 1:
        raise ValueError(f"twisting number {l} is not an integer")
    for c in (c1, c2):
        if (Fraction(c * l, c1 + c2)).denominator != 1:
            raise ValueError("twisting split is not integral")
    n1, n2 = n_split(omega, int(l), c1, c2, I1)
    return SplitContext(g1, g - g1, I1, I2, c1, c2, int(l), n1, n2,
                        omega.rank, omega.level, d)


def split_degrees(mu: Weight, ctx: SplitContext) -> tuple[Fraction, Fraction]:
    """Induced degrees (d1, d2) for a weight mu; rational in general, the
    recurrence keeps only the integral ones."""
    r, k = ctx.rank, ctx.level
    size = Fraction(sum(mu), k)
    d1 = ctx.n1 + size + r * (ctx.g1 - 1)
    d2 = ctx.n2 + r - size + r * (ctx.g2 - 1)
    if d1 + d2 != ctx.degree:
        raise ArithmeticError("split degrees do not add up to the total degree")
    return d1, d2


def enumerate_Qk(r: int, k: int, ctx: SplitContext):
    """The Pk stream filtered by integrality of the first induced degree."""
    for mu in enumerate_Pk(r, k):
        if split_degrees(mu, ctx)[0].denominator == 1:
            yield mu


# -- attaching new points from a weight ------------------------------------


def _fresh_label(base: str, taken) -> str:
    label = base
    while label in taken:
        label += "'"
    return label


def _point_from_steps(label: str, mu_min: int, ds: list[int], rs: list[int],
                      rank: int) -> MarkedPoint:
    # weights: mu_min plus prefix sums of ds; flag: gaps of (rs..., rank)
    weights = [mu_min]
    for d in ds:
        weights.append(weights[-1] + d)
    bounds = rs + [rank]
    flag = [bounds[0]] + [bounds[i + 1] - bounds[i] for i in range(len(rs))]
    return MarkedPoint(label, tuple(flag), tuple(weights))


def build_omega_mu(omega: ParabolicData, mu: Weight) -> ParabolicData:
    """Attach two fresh points encoding mu and its dual.

    The first new point carries mu shifted to start at mu_r; the second
    carries exactly the dual weight mu_star as its padded partition.
    """
    r, k = omega.rank, omega.level
    if len(mu) != r:
        raise ValueError("weight length must equal the rank")
    if any(mu[i] < mu[i + 1] for i in range(r - 1)) or mu[-1] < 0 or mu[0] >= k:
        raise ValueError("weight must be nonincreasing with entries in [0, level)")
    ds, rs = [], []
    for i in range(r - 1):
        if mu[i] > mu[i + 1]:
            ds.append(mu[i] - mu[i + 1])
            rs.append(i + 1)
    taken = set(omega.labels())
    lab1 = _fresh_label("x1", taken)
    lab2 = _fresh_label("x2", taken | {lab1})
    p1 = _point_from_steps(lab1, mu[-1], ds, rs, r)
    ds2 = list(reversed(ds))
    rs2 = [r - x for x in reversed(rs)]
    p2 = _point_from_steps(lab2, mu[-1], ds2, rs2, r)
    out = ParabolicData(r, k, omega.points + (p1, p2))
    assert lambda_of_point(p2, k) == mu_star(mu, k)
    return out


def build_split_omegas(omega: ParabolicData, mu: Weight,
                       ctx: SplitContext) -> tuple[ParabolicData, ParabolicData]:
    """Cut the two-point extension along the context's point split.

    Each side keeps its own points in their original order and gets one of
    the fresh points appended last.
    """
    full = build_omega_mu(omega, mu)
    p1, p2 = full.points[-2], full.points[-1]
    side1 = set(ctx.I1)
    pts1 = tuple(p for p in omega.points if p.label in side1) + (p1,)
    pts2 = tuple(p for p in omega.points if p.label not in side1) + (p2,)
    r, k = omega.rank, omega.level
    return ParabolicData(r, k, pts1), ParabolicData(r, k, pts2)


# -- Hecke moves -----------------------------------------------------------


def normalize_point(omega: ParabolicData, label: str) -> ParabolicData:
    """Shift the weights at one point so the bottom weight is zero."""
    p = omega.point(label)
    a0 = p.weights[0]
    if a0 == 0:
        return omega
    new = MarkedPoint(p.label, p.flag, tuple(a - a0 for a in p.weights))
    return omega.replace_point(label, new)


def hecke_basic(omega: ParabolicData, label: str) -> tuple[ParabolicData, int]:
    """Full Hecke move at a point: the whole bottom-weight block wraps to the
    top.  Returns the new data and the degree shift (minus the block size)."""
    p = omega.point(label)
    l = len(p.flag) - 1
    if l == 0:
        raise ValueError(f"point {label}: full move needs at least two weight blocks")
    k = omega.level
    a = p.weights
    if a[-1] - a[0] >= k:
        # the wrapped block would land on top of the existing top block
        raise ValueError(f"point {label}: top weight already at the level")
    new_flag = p.flag[1:] + (p.flag[0],)
    new_w = (0,) + tuple(a[j + 1] - a[1] + a[0] for j in range(1, l)) \
        + (k - a[1] + a[0],)
    new = MarkedPoint(p.label, new_flag, new_w)
    return omega.replace_point(label, new), -p.flag[0]


def hecke_m(omega: ParabolicData, label: str, m: int) -> tuple[ParabolicData, int]:
    """Partial Hecke move: m of the n_1 bottom-block entries wrap to the top,
    landing at weight = level.  Requires normalized weights (a_1 = 0)."""
    p = omega.point(label)
    k = omega.level
    if p.weights[0] != 0:
        raise ValueError(f"point {label}: weights are not normalized (a_1 != 0)")
    n1 = p.flag[0]
    if n1 < 2:
        raise ValueError(f"point {label}: bottom block too small to split")
    if not 1 <= m < n1:
        raise ValueError(f"point {label}: multiplicity must lie in [1, {n1 - 1}]")
    if p.weights[-1] >= k:
        raise ValueError(f"point {label}: top weight already at the level")
    new_flag = (n1 - m,) + p.flag[1:] + (m,)
    new_w = p.weights + (k,)
    new = MarkedPoint(p.label, new_flag, new_w)
    return omega.replace_point(label, new), -m


def hecke_shift(omega: ParabolicData, label: str, s: int) -> ParabolicData:
    """Apply s single-entry Hecke moves at a point (degree shift -s).

    Greedy: whole blocks wrap while they fit, a partial move finishes the
    remainder.  A whole-flag wrap on a one-block point changes nothing.
    """
    if s < 0:
        raise ValueError("shift must be nonnegative")
    data = normalize_point(omega, label)
    while s:
        p = data.point(label)
        n1 = p.flag[0]
        if s < n1:
            data, _ = hecke_m(data, label, s)
            s = 0
        elif len(p.flag) == 1:
            s -= n1
        else:
            data, _ = hecke_basic(data, label)
            s -= n1
    return data


# -- the weight-level Hecke maps -------------------------------------------


def h_step(mu: Weight, k: int) -> Weight:
    """One step of the weight rotation: the bottom entry wraps to the top."""
    r = len(mu)
    if any(mu[i] < mu[i + 1] for i in range(r - 1)):
        raise ValueError("weight must be nonincreasing")
    if mu[0] > k or mu[-1] < 0:
        raise ValueError("weight entries must lie in [0, level]")
    if r == 1:
        return (0,)
    pivot = mu[-2]
    return (k - pivot + mu[-1],) + tuple(mu[j] - pivot for j in range(r - 2)) + (0,)


def h_iter(mu: Weight, k: int, m: int) -> Weight:
    """m-fold h_step, 0 <= m <= rank."""
    if not 0 <= m <= len(mu):
        raise ValueError("iteration count must lie in [0, rank]")
    out = mu
    for _ in range(m):
        out = h_step(out, k)
    return out


def h_closed(mu: Weight, k: int, m: int) -> Weight:
    """Closed form of h_iter, used as an independent cross-check."""
    r = len(mu)
    if m == 0:
        return mu
    if m == r:
        return tuple(x - mu[-1] for x in mu)
    pivot = mu[r - m - 1]
    head = tuple(k - pivot + mu[r - m + j] for j in range(m))
    tail = tuple(mu[j] - pivot for j in range(r - m))
    return head + tail


def phi(mu: Weight, ctx: SplitContext) -> Weight:
    """Rotate a Qk weight into the congruence-filtered Wk set."""
    d1, _ = split_degrees(mu, ctx)
    if d1.denominator != 1:
        raise ValueError("first induced degree is not integral")
    i = int(d1) % ctx.rank
    return h_iter(mu, ctx.level, ctx.rank - i)


def phi_inverse(lam: Weight, ctx: SplitContext) -> Weight:
    """Inverse rotation: recover the Qk weight from a congruence-filtered one."""
    r, k = ctx.rank, ctx.level
    if len(lam) != r or lam[-1] != 0 or lam[0] > k:
        raise ValueError("weight must be in the bounded set with bottom entry 0")
    if any(lam[i] < lam[i + 1] for i in range(r - 1)):
        raise ValueError("weight must be nonincreasing")
    kn1 = ctx.n1 * k
    if kn1.denominator != 1:
        raise ArithmeticError("context carries a non-integral k*n1")
    total = int(kn1) + sum(lam)
    if total % r:
        raise ValueError("weight fails the congruence filter")
    M = total // r
    res = (-M) % k
    if lam[0] + res < k:
        mu = tuple(x + res for x in lam)
    else:
        i0 = max(i for i in range(1, r) if lam[i - 1] + res >= k)
        mu = tuple(lam[i] + res for i in range(i0, r)) \
            + tuple(lam[i] + res - k for i in range(i0))
    assert phi(mu, ctx) == lam
    return mu
