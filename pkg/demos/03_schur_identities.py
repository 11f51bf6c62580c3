"""
Schur polynomials at roots of unity, and the orthogonality that makes
the closed dimension formula work.

The interesting evaluations all happen at tuples zeta^v for strictly
decreasing integer vectors v.  Two independent evaluators (a
determinant ratio and a brute-force tableau sum) cross-check each
other, and the three summed identities below are the engine room of
every factorization statement in the package.
"""

from thetadim.cyclotomic import root_power
from thetadim.schur import (identity_52_check, identity_53_check,
                            identity_54_check, schur_at, schur_brute,
                            sin_sq, weyl_denominator)
from thetadim.verlinde import v_vectors

r, k = 2, 2
n = r + k

print(f"rank {r}, level {k}: evaluation vectors v with v_1 < {n}:")
vs = list(v_vectors(r, k))
print("  ", vs)

# two evaluators, one answer
lam = (2, 1)
for v in vs:
    det = schur_at(lam, v, r, k)
    tab = schur_brute(lam, v, r, k)
    print(f"S_{lam} at v={v}:  {det}   (tableau sum agrees: {det == tab})")

# 2 - zeta^m - zeta^-m is (2 sin pi m/n)^2 on the nose
print("exact sine squares at n=4:",
      [sin_sq(m, 4).as_rational() for m in (1, 2, 3)])

# the denominator product of the closed formula, exact at any genus
for g in (0, 1, 2):
    w = weyl_denominator((1, 0), g, r, k)
    print(f"denominator^(g-1) at g={g}:", w)

# identity 1: summing S over all bounded weights collapses to an
# explicit constant times the inverse denominator (residual must vanish)
for v in vs:
    print("open-sum residual at", v, "is zero:",
          identity_52_check(v, r, k).is_zero())

# identity 2: same game over the anchored weight set
for v in vs:
    print("anchored-sum residual at", v, "is zero:",
          identity_53_check(v, r, k).is_zero())

# identity 3: distinct vectors are orthogonal under the paired sum
print("cross-pair residuals all zero:",
      all(identity_54_check(v, vp, r, k).is_zero()
          for v in vs for vp in vs if v != vp))

# none of this used a single float; embed() is just for looking.
# S_(2,1)(x, y) = xy(x + y), here at x = zeta_4^3, y = 1
by_hand = root_power(4, 3) * (1 + root_power(4, 3))
print("S_(2,1) at (3,0):", schur_at((2, 1), (3, 0), r, k).embed())
print("xy(x+y) by hand: ", by_hand.embed())
print("equal exactly:   ", schur_at((2, 1), (3, 0), r, k) == by_hand)
