import math
import random

import pytest

from thetadim.verlinde import (VerlindeQuery, clear_memo,
                               closed_formula_exact, closed_formula_float,
                               closed_term, dimension, genus_recurrence_rhs,
                               hecke_image, iter_split_terms,
                               iter_wprime_terms, legal_hecke_multiplicities,
                               query, split_recurrence_rhs, v_vectors, verify,
                               wprime_recurrence_rhs)
from thetadim.weights import (MarkedPoint, ParabolicData, phi, split_context)


def pt(label, flag, weights):
    return MarkedPoint(label, tuple(flag), tuple(weights))


def bare(g, r, k, d=0):
    return query(g, d, ParabolicData(r, k))


# -- the summation lattice -------------------------------------------------

def test_v_vectors_counts():
    for r in range(1, 5):
        for k in range(1, 5):
            vs = list(v_vectors(r, k))
            assert len(vs) == math.comb(r + k - 1, r - 1)
            for v in vs:
                assert v[-1] == 0
                assert all(a > b for a, b in zip(v, v[1:]))
                assert v[0] < r + k


def test_v_vectors_examples():
    assert list(v_vectors(2, 1)) == [(1, 0), (2, 0)]
    assert list(v_vectors(2, 2)) == [(1, 0), (2, 0), (3, 0)]
    assert list(v_vectors(1, 3)) == [(0,)]


# -- closed formula --------------------------------------------------------

def test_rank_one_dimensions():
    # rank 1 collapses to k^g independent of degree
    for g in range(0, 4):
        for k in (1, 2, 3):
            for d in (-1, 0, 2):
                assert dimension(bare(g, 1, k, d)) == k ** g


def test_sanity_dimensions():
    assert dimension(bare(1, 2, 1)) == 1
    assert dimension(bare(1, 2, 2)) == 3
    assert dimension(bare(0, 2, 2)) == 1
    assert dimension(bare(2, 2, 1)) == 1
    assert dimension(bare(3, 2, 1)) == 1
    assert dimension(bare(2, 2, 2)) == 10


def test_parabolic_dimensions():
    # a full-flag point with constant weight is invisible at degree zero
    for w in (0, 1, 2):
        q = query(1, 0, ParabolicData(2, 2, (pt("p", (2,), (w,)),)))
        assert dimension(q) == 3
    # but it pins down degree -1, where the bare space is empty
    q = query(1, -1, ParabolicData(2, 2, (pt("p", (2,), (0,)),)))
    assert dimension(q) == 1
    # a point with odd total weight kills every degree at rank 2
    for d in (0, 1):
        q = query(1, d, ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),)))
        assert dimension(q) == 0
    # widest weight spread leaves a single section
    q = query(1, 0, ParabolicData(2, 2, (pt("p", (1, 1), (0, 2)),)))
    assert dimension(q) == 1


def test_closed_term_sums_to_dimension():
    # prefactor is 1 at g = 1, r = 2, k = 2, so the raw sum is the dimension
    q = bare(1, 2, 2)
    total = sum((closed_term(q, v).embed() for v in v_vectors(2, 2)))
    assert abs(total.real - 3.0) < 1e-9
    assert abs(total.imag) < 1e-9


def test_query_validation():
    with pytest.raises(ValueError):
        query(-1, 0, ParabolicData(2, 2))
    with pytest.raises(ValueError):
        VerlindeQuery(1, 3, 0, ParabolicData(2, 2))


def test_exact_result_is_integer():
    res = closed_formula_exact(bare(2, 3, 2, 1))
    assert isinstance(res.value, int)
    assert res.value >= 0
    assert res.backend == "exact"


def test_float_backend_agrees():
    for args in ((1, 2, 2, 0), (2, 2, 1, 1), (2, 2, 2, 0), (1, 3, 2, 2)):
        exact = closed_formula_exact(bare(*args))
        approx = closed_formula_float(bare(*args))
        assert exact.value == approx.value
        assert approx.float_residual is not None
        assert approx.float_residual < 1e-6


def test_result_flags():
    res = closed_formula_exact(query(1, 1, ParabolicData(2, 3)))  # ell = 3/2
    assert not res.ell_integral
    assert closed_formula_exact(bare(1, 2, 2)).ell_integral

    three = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),
                                 pt("q", (1, 1), (0, 1)),
                                 pt("s", (1, 1), (0, 1))))
    assert closed_formula_exact(query(0, 0, three)).exceptional_case
    assert not closed_formula_exact(query(1, 0, three)).exceptional_case


# -- recurrences -----------------------------------------------------------

def test_genus_recurrence_worked_example():
    q = bare(2, 2, 2)
    assert genus_recurrence_rhs(q) == 10
    assert dimension(q) == 10


def test_genus_recurrence_grid():
    for (g, r, k, d) in ((1, 2, 1, 0), (1, 2, 2, 1), (2, 2, 2, 0),
                         (1, 3, 2, 2), (2, 3, 1, 1)):
        omega = ParabolicData(r, k)
        assert verify(query(g, d, omega), "genus").ok
    # with a marked point
    omega = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),))
    assert verify(query(1, 1, omega), "genus").ok


def test_genus_recurrence_needs_positive_genus():
    with pytest.raises(ValueError):
        genus_recurrence_rhs(bare(0, 2, 2))


def test_split_worked_example():
    q = bare(2, 2, 2)
    ctx = split_context(q.omega, 2, 0, (), 1, 1, 1)
    terms = dict(iter_split_terms(q, ctx))
    assert terms == {(0, 0): 1, (1, 1): 9}
    assert split_recurrence_rhs(q, ctx) == 10


def test_split_factor_values():
    # term (0, 0): degrees split as -1 and +1, each side a single section
    assert dimension(query(1, -1, ParabolicData(
        2, 2, (pt("p", (2,), (0,)),)))) == 1
    assert dimension(query(1, 1, ParabolicData(
        2, 2, (pt("p", (2,), (0,)),)))) == 1
    # term (1, 1): both sides sit at degree zero with a constant twist, 3 * 3
    assert dimension(query(1, 0, ParabolicData(
        2, 2, (pt("p", (2,), (1,)),)))) == 3


def test_wprime_matches_split():
    q = bare(2, 2, 2)
    ctx = split_context(q.omega, 2, 0, (), 1, 1, 1)
    split_terms = dict(iter_split_terms(q, ctx))
    wp_terms = dict(iter_wprime_terms(q, ctx))
    assert sum(split_terms.values()) == sum(wp_terms.values())
    # the rotation bijection matches terms one by one
    for mu, val in split_terms.items():
        assert wp_terms[phi(mu, ctx)] == val
    assert wprime_recurrence_rhs(q, ctx) == 10


def test_split_verify_modes():
    q = bare(2, 2, 2)
    ctx = split_context(q.omega, 2, 0, (), 1, 1, 1)
    rep = verify(q, "split", ctx=ctx)
    assert rep.ok and rep.lhs == rep.rhs == 10
    rep2 = verify(q, "wprime", ctx=ctx)
    assert rep2.ok and rep2.lhs == rep2.rhs == 10


def test_split_with_marked_points():
    omega = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),
                                 pt("q", (1, 1), (0, 1))))
    q = query(2, 1, omega)
    ctx = split_context(omega, 2, 1, ("p",), 1, 1, 1)
    assert verify(q, "split", ctx=ctx).ok
    assert verify(q, "wprime", ctx=ctx).ok


def test_uneven_genus_split():
    q = bare(3, 2, 2, 1)                    # ell = -3 splits as -1 and -2
    ctx = split_context(q.omega, 3, 1, (), 1, 1, 2)
    assert ctx.g1 == 1 and ctx.g2 == 2
    assert verify(q, "split", ctx=ctx).ok
    assert verify(q, "wprime", ctx=ctx).ok


def test_split_context_mismatch_is_rejected():
    q = bare(2, 2, 2)
    other = split_context(ParabolicData(2, 2), 2, 2, (), 1, 1, 1)
    with pytest.raises(ValueError):
        split_recurrence_rhs(q, other)


# -- Hecke invariance ------------------------------------------------------

def test_hecke_image_preserves_dimension():
    omega = ParabolicData(3, 2, (pt("p", (2, 1), (0, 1)),))
    q = query(1, 0, omega)
    for m in legal_hecke_multiplicities(q, "p"):
        q2 = hecke_image(q, "p", m)
        assert q2.degree == q.degree - m
        assert dimension(q2) == dimension(q), m


def test_hecke_image_normalizes_first():
    omega = ParabolicData(2, 3, (pt("p", (1, 1), (1, 2)),))
    q = query(1, 0, omega)
    q2 = hecke_image(q, "p", 1)
    assert q2.omega.point("p").weights[0] == 0


def test_hecke_full_flag_block_is_plain_shift():
    omega = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),))
    q = query(1, 0, omega)
    q2 = hecke_image(q, "p", 1)
    assert dimension(q2) == dimension(q)


def test_legal_hecke_multiplicities():
    omega = ParabolicData(3, 2, (pt("p", (2, 1), (0, 1)),))
    q = query(1, 0, omega)
    assert legal_hecke_multiplicities(q, "p") == [1, 2]
    # a point already carrying the level on top admits no further move
    wide = ParabolicData(3, 2, (pt("p", (2, 1), (0, 2)),))
    assert legal_hecke_multiplicities(query(1, 0, wide), "p") == []
    # a single-block point always admits the trivial full wrap
    full = ParabolicData(2, 2, (pt("p", (2,), (0,)),))
    assert legal_hecke_multiplicities(query(1, 0, full), "p") == [1, 2]


def test_hecke_verify_mode():
    omega = ParabolicData(3, 2, (pt("p", (2, 1), (0, 1)),))
    q = query(1, 1, omega)
    rep = verify(q, "hecke", point="p", multiplicity=1)
    assert rep.ok and rep.lhs == rep.rhs
    assert rep.detail["multiplicity"] == 1


def test_hecke_random_invariance():
    rng = random.Random(3)
    for _ in range(25):
        r = rng.randint(2, 3)
        k = rng.randint(1, 3)
        g = rng.randint(1, 2)
        d = rng.randint(0, r - 1)
        cut = sorted(rng.sample(range(1, r), rng.randint(0, r - 1)))
        flag = tuple(b - a for a, b in zip([0] + cut, cut + [r]))
        if len(flag) > k + 1:
            continue
        w = tuple(sorted(rng.sample(range(0, k + 1), len(flag))))
        try:
            omega = ParabolicData(r, k, (pt("p", flag, w),))
        except ValueError:
            continue
        q = query(g, d, omega)
        for m in legal_hecke_multiplicities(q, "p"):
            assert verify(q, "hecke", point="p", multiplicity=m).ok, (q, m)


# -- structural invariances ------------------------------------------------

def test_degree_periodicity():
    for (g, r, k) in ((1, 2, 2), (2, 2, 1), (1, 3, 2)):
        omega = ParabolicData(r, k)
        for d in (-1, 0, 1):
            assert dimension(query(g, d, omega)) == \
                dimension(query(g, d + r, omega)), (g, r, k, d)


def test_constant_weight_shift_invariance():
    base = ParabolicData(2, 3, (pt("p", (1, 1), (0, 1)),))
    shifted = ParabolicData(2, 3, (pt("p", (1, 1), (1, 2)),))
    for g, d in ((1, 0), (2, 1)):
        assert dimension(query(g, d, base)) == dimension(query(g, d, shifted))


def test_exceptional_case_still_evaluates():
    three = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)),
                                 pt("q", (1, 1), (0, 1)),
                                 pt("s", (1, 1), (0, 1))))
    res = closed_formula_exact(query(0, 0, three))
    assert res.exceptional_case
    assert isinstance(res.value, int)


# -- backends and memoization ----------------------------------------------

def test_backend_verify_mode():
    rep = verify(bare(2, 2, 2), "backend", tol=1e-6)
    assert rep.ok
    assert rep.residual < 1e-6


def test_dimension_memoizes():
    clear_memo()
    memo = {}
    q = bare(2, 3, 2)
    first = dimension(q, memo=memo)
    assert len(memo) == 1
    assert dimension(q, memo=memo) == first
    assert len(memo) == 1


def test_memo_distinguishes_backend():
    memo = {}
    q = bare(1, 2, 2)
    dimension(q, backend="exact", memo=memo)
    dimension(q, backend="float", memo=memo)
    assert len(memo) == 2


def test_canonical_key_ignores_point_order():
    a = ParabolicData(2, 2, (pt("p", (1, 1), (0, 1)), pt("q", (2,), (0,))))
    b = ParabolicData(2, 2, (pt("q", (2,), (0,)), pt("p", (1, 1), (0, 1))))
    assert query(1, 0, a).canonical_key() == query(1, 0, b).canonical_key()


def test_float_residual_is_tiny_on_honest_input():
    res = closed_formula_float(bare(2, 3, 1, 1))
    assert res.float_residual < 1e-9
