"""Constructing SL(2,Q) surface representations with a prescribed Witt class.

The pipeline builds genus-1 pieces with one boundary component whose
relative class is [alpha] + [beta] and whose boundary monodromy is diagonal
(solving the commutator equation [X, Y] = diag(z, 1/z) through a rational
point on a Markov surface), chains them by twisted boundary connected sums,
and closes the surface by gluing on a final piece with the same boundary.

All scans over auxiliary parameters are deterministic, so a realization is a
function of (q, g) alone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import isqrt

from .qforms import RationalLike, format_rational, to_rational
from .sl2 import I, Mat2, commutator
from .surface import (
    BoundedSurfaceRep,
    ClosedSurfaceRep,
    evaluate_closed,
    glue_closed,
    relative_class,
    twist_bounded,
    vee,
)
from .witt import WittClass

log = logging.getLogger(__name__)

ZETA_DEFAULT = 2
LAMBDA_WINDOW = 8
MAX_ZETA = 12
MAX_RETRIES = 64


class ExceptionalZ(ValueError):
    """The prescribed boundary eigenvalue lies in the exceptional set."""


class RealizeError(ValueError):
    """A target class outside the realizable range, or a failed construction."""


# ---------------------------------------------------------------------------
# Markov equation  x1^2 + x2^2 + x3^2 - x1 x2 x3 = m

@dataclass(frozen=True)
class MarkovTriple:
    x1: Fraction
    x2: Fraction
    x3: Fraction
    m: Fraction

    def __post_init__(self):
        if self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2 - self.x1 * self.x2 * self.x3 != self.m:
            raise ValueError("triple does not satisfy the Markov equation")


def markov_solution(z: RationalLike, zeta: RationalLike = ZETA_DEFAULT) -> MarkovTriple:
    """A solution with m = z + 1/z + 2, parametrized by zeta."""
    z, zeta = to_rational(z), to_rational(zeta)
    if z == 0:
        raise ValueError("z must be nonzero")
    if zeta in (0, 1, -1):
        raise ValueError("zeta must avoid 0 and ±1")
    s = zeta - 1 / zeta
    x2 = (zeta ** 2 - zeta ** -2) / s
    x3 = (z - (zeta ** 2 + 1 + zeta ** -2) + 1 / z) / s
    x1 = 1 + zeta * x3
    return MarkovTriple(x1, x2, x3, z + 1 / z + 2)


# ---------------------------------------------------------------------------
# genus-one pieces

@dataclass(frozen=True)
class Genus1Block:
    rep: BoundedSurfaceRep
    z: Fraction
    target: WittClass
    zeta: Fraction = Fraction(ZETA_DEFAULT)
    lam: Fraction | None = None

    @property
    def boundary(self) -> Mat2:
        return self.rep.boundary


def _combo(*terms) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Entries of sum(coef * M) for (coef, M) pairs."""
    out = [Fraction(0)] * 4
    for coef, m in terms:
        for i, v in enumerate((m.a11, m.a12, m.a21, m.a22)):
            out[i] += coef * v
    return tuple(out)


def _block(alpha: Fraction, beta: Fraction, z: Fraction, zeta: Fraction) -> Genus1Block | None:
    """The piece for boundary diag(z, 1/z), or None when z is exceptional for zeta."""
    if z in (0, 1, -1):
        return None
    tr = markov_solution(z, zeta)
    x1, x2, x3, m = tr.x1, tr.x2, tr.x3, tr.m
    if m - x2 ** 2 == 0:
        return None
    f1 = x1 * x2 - (1 + 1 / z) * x3
    f2 = x1 * (1 + z) - x2 * x3
    if f1 == 0 or f2 == 0:
        return None
    # relative class becomes [C] - [Cz] with C = alpha
    c = -alpha * z * (1 + z) / (f1 * f2)
    zz = Mat2.diag(z)
    y = Mat2(x2 / (1 + z), (z * x2 ** 2 - (1 + z) ** 2) / (c * (1 + z)), c / (1 + z), z * x2 / (1 + z))
    k = 1 / (m - x2 ** 2)
    e = _combo((-x3 * k, zz @ y), (x1 * k, zz), ((x3 - x1 * x2) * k, y.inv()), (x1 * k, I))
    x = Mat2(*e)
    if commutator(x, y) != zz:
        raise AssertionError("commutator equation not solved")
    rep = BoundedSurfaceRep(((x, y),))
    return Genus1Block(rep, z, WittClass.symbol(alpha) + WittClass.symbol(beta), zeta)


def genus1_block(alpha: RationalLike, beta: RationalLike, lambda_seed: int = 1,
                 trace: list | None = None) -> Genus1Block:
    """A genus-1 piece with relative class [alpha] + [beta] and boundary
    diag(z, 1/z), z = -alpha*beta*lambda^2, scanning lambda from lambda_seed."""
    alpha, beta = to_rational(alpha), to_rational(beta)
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    skipped = []
    for zeta in range(ZETA_DEFAULT, MAX_ZETA + 1):
        for lam in range(lambda_seed, lambda_seed + LAMBDA_WINDOW):
            z = -alpha * beta * lam * lam
            blk = _block(alpha, beta, z, Fraction(zeta))
            if blk is None:
                skipped.append([lam, zeta])
                continue
            if trace is not None:
                trace.append({"step": "block", "alpha": format_rational(alpha),
                              "beta": format_rational(beta), "lambda": lam, "zeta": zeta,
                              "z": format_rational(z), "skipped": skipped})
            return Genus1Block(blk.rep, blk.z, blk.target, blk.zeta, Fraction(lam))
    raise RealizeError(f"no admissible parameters for [{alpha}] + [{beta}]")


def rational_sqrt(q: RationalLike) -> Fraction:
    q = to_rational(q)
    if q < 0:
        raise ValueError(f"{q} is not a square")
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise ValueError(f"{q} is not a square")
    return Fraction(n, d)


def genus1_block_with_eigenvalue(alpha: RationalLike, beta: RationalLike, z: RationalLike,
                                 trace: list | None = None) -> Genus1Block:
    """A genus-1 piece with relative class [alpha] + [beta] and boundary exactly
    diag(z, 1/z); z must lie in the square class of -alpha*beta."""
    alpha, beta, z = to_rational(alpha), to_rational(beta), to_rational(z)
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    lam = rational_sqrt(z / (-alpha * beta))
    if z in (1, -1):
        raise ExceptionalZ(f"boundary eigenvalue {z} gives trace ±2")
    for zeta in range(ZETA_DEFAULT, MAX_ZETA + 1):
        blk = _block(alpha, beta, z, Fraction(zeta))
        if blk is not None:
            if trace is not None:
                trace.append({"step": "block", "alpha": format_rational(alpha),
                              "beta": format_rational(beta), "lambda": format_rational(lam),
                              "zeta": zeta, "z": format_rational(z), "skipped": []})
            return Genus1Block(blk.rep, blk.z, blk.target, blk.zeta, lam)
    raise ExceptionalZ(f"boundary eigenvalue {z} is exceptional for [{alpha}] + [{beta}]")


# ---------------------------------------------------------------------------
# conjugation lemma

def markov4(t1: Fraction, t2: Fraction, t3: Fraction) -> bool:
    return t1 * t1 + t2 * t2 + t3 * t3 - t1 * t2 * t3 == 4


def pair_LM(l1: RationalLike, l2: RationalLike, l3: RationalLike, c: RationalLike) -> tuple[Mat2, Mat2]:
    """L conjugate to diag(l1), M conjugate to diag(l2), L M = diag(l3), L21 = c."""
    l1, l2, l3, c = (to_rational(v) for v in (l1, l2, l3, c))
    for v in (l1, l2, l3):
        if v in (0, 1, -1):
            raise ValueError("eigenvalues must avoid 0 and ±1")
    if c == 0:
        raise ValueError("c must be nonzero")
    t1, t2, t3 = l1 + 1 / l1, l2 + 1 / l2, l3 + 1 / l3
    if markov4(t1, t2, t3):
        raise ValueError("trace triple satisfies the Markov equation with m = 4")
    a = (l3 * t1 - t2) / (l3 - 1 / l3)
    d = -(a * a - t1 * a + 1) / c
    L = Mat2(a, d, c, t1 - a)
    M = L.inv() @ Mat2.diag(l3)
    return L, M


def _eigenvector(L: Mat2, mu: Fraction) -> tuple[Fraction, Fraction]:
    if L.a21 != 0:
        return (mu - L.a22) / L.a21, Fraction(1)
    if L.a12 != 0:
        return Fraction(1), (mu - L.a11) / L.a12
    return (Fraction(1), Fraction(0)) if L.a11 == mu else (Fraction(0), Fraction(1))


def conjugator_to(L: Mat2, lam: RationalLike) -> Mat2:
    """A in SL(2,Q) with A diag(lam, 1/lam) A^-1 = L."""
    lam = to_rational(lam)
    if lam in (0, 1, -1):
        raise ValueError("eigenvalue must avoid 0 and ±1")
    if lam * lam - L.trace() * lam + 1 != 0:
        raise ValueError(f"{lam} is not an eigenvalue")
    v = _eigenvector(L, lam)
    u = _eigenvector(L, 1 / lam)
    det = v[0] * u[1] - v[1] * u[0]
    return Mat2(v[0], u[0] / det, v[1], u[1] / det)


def _block_rep(b) -> BoundedSurfaceRep:
    return b.rep if isinstance(b, Genus1Block) else b


def _diag_eigenvalue(b: BoundedSurfaceRep) -> Fraction:
    w = b.boundary
    if not w.is_diagonal() or w.a11 in (1, -1):
        raise ValueError("boundary monodromy must be diagonal and not ±I")
    return w.a11


def vee_with_twists(prev, block, alpha: RationalLike, beta: RationalLike, lambda_seed: int = 1,
                    trace: list | None = None) -> tuple[BoundedSurfaceRep, int]:
    """Twisted boundary connected sum adding [alpha] + [beta] to the relative classes.

    Returns the new bounded representation (diagonal boundary diag(z, 1/z),
    z = -alpha*beta*l1*l2*lambda^2) and the lambda that was used.
    """
    prev, block = _block_rep(prev), _block_rep(block)
    alpha, beta = to_rational(alpha), to_rational(beta)
    l1, l2 = _diag_eigenvalue(prev), _diag_eigenvalue(block)
    skipped = []
    for lam in count(lambda_seed):
        z = -alpha * beta * l1 * l2 * lam * lam
        if z in (1, -1) or markov4(l1 + 1 / l1, l2 + 1 / l2, z + 1 / z):
            skipped.append(lam)
            continue
        L, M = pair_LM(l1, l2, z, alpha * l1)
        A, B = conjugator_to(L, l1), conjugator_to(M, l2)
        out = vee(twist_bounded(prev, A), twist_bounded(block, B))
        if out.boundary != Mat2.diag(z):
            raise AssertionError("boundary of the connected sum is not diagonal")
        if trace is not None:
            trace.append({"step": "vee", "alpha": format_rational(alpha),
                          "beta": format_rational(beta), "lambda": lam,
                          "z": format_rational(z), "skipped": skipped})
        return out, lam
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# end-to-end realization

def decompose_target(q: WittClass, g: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Split q into g pairs (alpha_i, beta_i) and g-2 pairs (gamma_j, delta_j).

    Padding pairs (1, -1) go to the (gamma, delta) slots first.
    """
    if g < 2:
        raise RealizeError("genus must be at least 2")
    if not q.in_I2():
        raise RealizeError(f"class {q} is not in I^2(Q)")
    if q.norm > 4 * (g - 1):
        raise RealizeError(f"norm {q.norm} exceeds the bound 4(g-1) = {4 * (g - 1)}")
    ents = list(q.rep.entries)
    real = [(ents[i], ents[i + 1]) for i in range(0, len(ents), 2)]
    pads = 2 * g - 2 - len(real)
    gd_pads = min(pads, g - 2)
    gd = [(1, -1)] * gd_pads
    ab = list(real)
    while len(gd) < g - 2:
        gd.append(ab.pop())
    ab += [(1, -1)] * (pads - gd_pads)
    prod = Fraction(1)
    for a, b in ab + gd:
        prod *= a * b
    rational_sqrt(prod)  # product formula: the entries multiply to a square
    return ab, gd


@dataclass
class Realization:
    rep: ClosedSurfaceRep
    target: WittClass
    evaluated: WittClass
    lambda_log: list = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.evaluated == self.target

    def certificate(self) -> dict:
        return {"target": str(self.target), "evaluated": str(self.evaluated),
                "match": self.match, "lambda_log": self.lambda_log}


def realize_full(q: WittClass, g: int) -> Realization:
    ab, gd = decompose_target(q, g)
    trace: list = []
    blocks = [genus1_block(a, b, trace=trace) for a, b in ab[:-1]]
    acc = blocks[0].rep
    for j in range(1, g - 2):
        acc, _ = vee_with_twists(acc, blocks[j], *gd[j - 1], trace=trace)
    seed = 1
    ag, bg = ab[-1]
    for _ in range(MAX_RETRIES):
        # the last step before closing is redone with larger lambda on failure
        if g == 2:
            first = genus1_block(*ab[0], lambda_seed=seed, trace=trace)
            last, lam = first.rep, int(first.lam)
        else:
            last, lam = vee_with_twists(acc, blocks[g - 2], *gd[g - 3], lambda_seed=seed, trace=trace)
        u = last.boundary.a11
        try:
            closing = genus1_block_with_eigenvalue(-ag, -bg, u, trace=trace)
        except ExceptionalZ as exc:
            log.info("retrying: %s", exc)
            trace.append({"step": "retry", "reason": str(exc)})
            seed = lam + 1
            continue
        rep = glue_closed(last, closing.rep)
        evaluated = evaluate_closed(rep)
        if evaluated != q:
            raise RealizeError(f"round trip failed: target {q}, evaluated {evaluated}")
        return Realization(rep, q, evaluated, trace)
    raise RealizeError("exceptional set hit too often")


def realize(q: WittClass, g: int) -> ClosedSurfaceRep:
    """A closed genus-g representation whose Witt class is q."""
    return realize_full(q, g).rep


__all__ = [
    "ExceptionalZ", "Genus1Block", "MarkovTriple", "RealizeError", "Realization",
    "conjugator_to", "decompose_target", "genus1_block", "genus1_block_with_eigenvalue",
    "markov_solution", "pair_LM", "rational_sqrt", "realize", "realize_full", "relative_class",
    "vee_with_twists",
]
