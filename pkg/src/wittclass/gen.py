"""Seeded random generators for SL(2,Q) elements and surface representations.

Every generator takes a ``random.Random`` instance, so a report is a function
of the seed.  A random matrix with entries of height at most H is drawn from a
coprime first column (a, c); the second columns (b, d) with a d - b c = 1 form
the line (b0 + k a, d0 + k c), and k is drawn among the values keeping |b|
and |d| at most H.  One draw in ten is upper triangular, [[t, b], [0, 1/t]].
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .realize import realize
from .sl2 import G1, G2, Mat2
from .surface import BoundedSurfaceRep, ClosedSurfaceRep, conjugate_rep, twist_bounded, vee
from .witt import WittClass, pfister2

DEFAULT_HEIGHT = 1000


def rand_int(rng: random.Random, height: int, nonzero: bool = False) -> int:
    while True:
        n = rng.randint(-height, height)
        if n or not nonzero:
            return n


def rand_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    return Fraction(rand_int(rng, height, nonzero), rng.randint(1, height))


def height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def _k_range(b0: int, a: int, cap: int) -> tuple[int, int]:
    # integers k with |b0 + k a| <= cap, for a != 0
    lo, hi = (-cap - b0, cap - b0) if a > 0 else (b0 - cap, b0 + cap)
    a = abs(a)
    return -((-lo) // a), hi // a


def rand_sl2(rng: random.Random, height_cap: int = DEFAULT_HEIGHT) -> Mat2:
    if rng.random() < 0.1:
        t = Fraction(rand_int(rng, height_cap, nonzero=True))
        return Mat2(t, Fraction(rand_int(rng, height_cap)), Fraction(0), 1 / t)
    while True:
        a = rand_int(rng, height_cap, nonzero=True)
        c = rand_int(rng, height_cap, nonzero=True)
        if gcd(a, c) != 1:
            continue
        d0 = pow(a, -1, abs(c)) if abs(c) > 1 else 0
        b0 = (a * d0 - 1) // c
        lo1, hi1 = _k_range(b0, a, height_cap)
        lo2, hi2 = _k_range(d0, c, height_cap)
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            continue
        k = rng.randint(lo, hi)
        b, d = b0 + k * a, d0 + k * c
        return Mat2(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


def rand_g1(rng: random.Random, height: int = DEFAULT_HEIGHT) -> G1:
    return G1(rand_rational(rng, height), rand_rational(rng, height, nonzero=True))


def rand_g2(rng: random.Random, height: int = DEFAULT_HEIGHT) -> G2:
    return G2(rand_rational(rng, height), rand_rational(rng, height, nonzero=True),
              rand_rational(rng, height))


def rand_normal_form_pair(rng: random.Random, case: int, height: int = DEFAULT_HEIGHT) -> tuple[Mat2, Mat2]:
    """A pair covering one of the five cases of the Moore cocycle formula.

    0: (G2, G2) with w' != 0    1: (G2, G2) with w' = 0
    2: (G1, G2)    3: (G2, G1)    4: (G1, G1)
    """
    if case in (0, 1):
        a, b = rand_g2(rng, height), rand_g2(rng, height)
        if case == 1:
            b = G2(-a.v, b.t, b.v)
        elif a.v + b.u == 0:
            b = G2(b.u + 1, b.t, b.v)
        return a.matrix(), b.matrix()
    kinds = {2: (rand_g1, rand_g2), 3: (rand_g2, rand_g1), 4: (rand_g1, rand_g1)}[case]
    return kinds[0](rng, height).matrix(), kinds[1](rng, height).matrix()


def centralizer_element(w: Mat2, s: Fraction) -> Mat2:
    """x I + y W with det 1, from the rational point (1, 0) of the conic
    x^2 + tr(W) x y + y^2 = 1 and the line of slope s through it."""
    tr = w.trace()
    den = 1 + s * tr + s * s
    if den == 0:
        return Mat2.identity()
    m = -(2 + s * tr) / den
    x, y = 1 + m, s * m
    return Mat2(x + y * w.a11, y * w.a12, y * w.a21, x + y * w.a22)


def rand_commuting_pair(rng: random.Random, height: int = 30) -> tuple[Mat2, Mat2]:
    kind = rng.randrange(3)
    if kind == 0:
        x = rand_sl2(rng, height)
        return x ** rng.randint(-2, 2), x ** rng.randint(-2, 2)
    if kind == 1:
        a = rand_sl2(rng, height)
        s, t = rand_rational(rng, height, True), rand_rational(rng, height, True)
        return a @ Mat2.diag(s) @ a.inv(), a @ Mat2.diag(t) @ a.inv()
    x = rand_sl2(rng, height)
    return x, centralizer_element(x, rand_rational(rng, height))


def rand_bounded(rng: random.Random, genus: int, height: int = 30) -> BoundedSurfaceRep:
    return BoundedSurfaceRep(tuple((rand_sl2(rng, height), rand_sl2(rng, height)) for _ in range(genus)))


def nielsen_move(rng: random.Random, pairs: list[tuple[Mat2, Mat2]]) -> None:
    """(A, B) -> (A, B A) or (A B, B) on one handle; each commutator is preserved."""
    i = rng.randrange(len(pairs))
    a, b = pairs[i]
    pairs[i] = (a, b @ a) if rng.random() < 0.5 else (a @ b, b)


def _mirrored(rng: random.Random, genus: int, height: int) -> ClosedSurfaceRep:
    if genus == 1:
        return ClosedSurfaceRep((rand_commuting_pair(rng, height),))
    h = genus // 2
    b1 = rand_bounded(rng, h, height)
    v = centralizer_element(b1.boundary, rand_rational(rng, 3))
    b2 = twist_bounded(b1, v)
    if genus % 2:
        b2 = vee(b2, BoundedSurfaceRep((rand_commuting_pair(rng, 3),)))
    pairs = list(b1.pairs) + [(y, x) for x, y in reversed(b2.pairs)]
    return ClosedSurfaceRep(tuple(pairs))


def rand_target(rng: random.Random, genus: int, entry_bound: int = 50) -> WittClass:
    """A class in I^2(Q) of norm at most 4g - 4, as a sum of 2-fold Pfister forms."""
    q = WittClass()
    for _ in range(genus - 1):
        a = rand_int(rng, entry_bound, nonzero=True)
        b = rand_int(rng, entry_bound, nonzero=True)
        nxt = q + pfister2(a, b)
        if nxt.norm <= 4 * genus - 4:
            q = nxt
    return q


def rand_closed(rng: random.Random, genus: int, height: int = 6,
                moves: int = 1, allow_realize: bool = True) -> ClosedSurfaceRep:
    """A valid closed representation: a genus-2 realization of a random target
    or a mirrored gluing, followed by Nielsen moves and a global conjugation.

    Realizations are only drawn in genus 2; conjugating larger ones produces
    integers that are slow to factor.
    """
    if allow_realize and genus == 2 and rng.random() < 0.5:
        r = realize(rand_target(rng, genus, 12), genus)
        conj_height = 2
    else:
        r = _mirrored(rng, genus, height)
        conj_height = 3
    pairs = list(r.pairs)
    for _ in range(rng.randint(0, moves)):
        nielsen_move(rng, pairs)
    r = ClosedSurfaceRep(tuple(pairs))
    return conjugate_rep(r, rand_sl2(rng, conj_height))
