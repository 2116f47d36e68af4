"""Randomized property suites behind ``wittclass selftest``.

Each suite draws from its own generator seeded by (seed, suite name), so a
suite's outcome does not depend on which other suites ran.  Surface-level
suites use small matrix heights; their evaluations factor products of many
entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import gen
from .qforms import hilbert_symbol, local_anisotropic_dim, relevant_primes, square_class
from .realize import realize
from .sl2 import (
    G2,
    Mat2,
    coboundary_n,
    decompose,
    moore_witt_cocycle,
    witt_cocycle,
)
from .surface import (
    BoundedSurfaceRep,
    evaluate_closed,
    evaluate_closed_delta,
    genus1_relative_formula,
    glue_closed,
    relative_class,
    twist_bounded,
    twist_closed,
    conjugate_rep,
    vee,
)
from .witt import WittClass, pfister2, symbol

ZERO = WittClass()
SURFACE_HEIGHT = 6


@dataclass
class SuiteResult:
    name: str
    runs: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, detail: Callable[[], str]) -> None:
        self.runs += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 3:
            self.failures.append(detail())

    @property
    def ok(self) -> bool:
        return self.runs > 0 and self.passed == self.runs

    def to_json(self) -> dict:
        out = {"runs": self.runs, "passed": self.passed}
        if self.failures:
            out["failures"] = self.failures
        return out


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


# ---------------------------------------------------------------------------
# cocycles

def suite_cocycle_law(res, rng, n, height):
    for _ in range(n):
        x, y, z = (gen.rand_sl2(rng, height) for _ in range(3))
        d = witt_cocycle(y, z) - witt_cocycle(x @ y, z) + witt_cocycle(x, y @ z) - witt_cocycle(x, y)
        res.check(d == ZERO, lambda: f"x={x} y={y} z={z}: {d}")


def suite_equicommutative(res, rng, n, height):
    for _ in range(n):
        a, b = gen.rand_commuting_pair(rng, min(height, 30))
        res.check(a @ b == b @ a and witt_cocycle(a, b) == witt_cocycle(b, a), lambda: f"a={a} b={b}")


def suite_moore_vs_witt(res, rng, n, height):
    for i in range(n):
        g, h = gen.rand_normal_form_pair(rng, i % 5, height)
        lhs, rhs = moore_witt_cocycle(g, h), witt_cocycle(g, h) + coboundary_n(g, h)
        res.check(lhs == rhs and lhs.in_I2(), lambda: f"case {i % 5}: g={g} h={h}: {lhs} vs {rhs}")


def suite_g2_closed_form(res, rng, n, height):
    for i in range(n):
        g, h = gen.rand_normal_form_pair(rng, i % 2, height)
        a, b = decompose(g), decompose(h)
        assert isinstance(a, G2) and isinstance(b, G2)
        wp = -(a.v + b.u)
        expect = symbol(wp) if wp != 0 else ZERO
        res.check(witt_cocycle(g, h) == expect, lambda: f"g={g} h={h}")


def suite_normalization(res, rng, n, height):
    one = Mat2.identity()
    for _ in range(n):
        g = gen.rand_sl2(rng, height)
        ok = all(c(one, g) == ZERO and c(g, one) == ZERO for c in (witt_cocycle, moore_witt_cocycle))
        res.check(ok and decompose(g).matrix() == g, lambda: f"g={g}")


# ---------------------------------------------------------------------------
# quadratic forms

def suite_reciprocity(res, rng, n, height):
    for _ in range(n):
        a = gen.rand_rational(rng, 10**4, nonzero=True)
        b = gen.rand_rational(rng, 10**4, nonzero=True)
        places = ["inf"] + relevant_primes(square_class(a), square_class(b))
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        res.check(prod == 1, lambda: f"a={a} b={b}")


def suite_bimultiplicative(res, rng, n, height):
    for _ in range(n):
        a, b, c = (gen.rand_rational(rng, 200, nonzero=True) for _ in range(3))
        s = gen.rand_rational(rng, 50, nonzero=True)
        for v in ["inf"] + relevant_primes(*(square_class(x) for x in (a, b, c))):
            ok = (hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)
                  and hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
                  and hilbert_symbol(a * s * s, b, v) == hilbert_symbol(a, b, v))
            res.check(ok, lambda: f"a={a} b={b} c={c} v={v}")


def _rand_class(rng, k=4, bound=30):
    out = ZERO
    for _ in range(rng.randint(0, k)):
        out = out + symbol(gen.rand_int(rng, bound, nonzero=True))
    return out


def suite_witt_group(res, rng, n, height):
    for _ in range(n):
        x, y, z = _rand_class(rng), _rand_class(rng), _rand_class(rng)
        ok = ((x + y) + z == x + (y + z) and x + y == y + x and x + (-x) == ZERO
              and (x + y).norm <= x.norm + y.norm and (-x).norm == x.norm
              and (x.norm == 0) == (x == ZERO))
        res.check(ok, lambda: f"x={x} y={y} z={z}")


def suite_local_parity(res, rng, n, height):
    for _ in range(n):
        ents = [gen.rand_int(rng, 30, nonzero=True) for _ in range(rng.randint(1, 7))]
        for v in ["inf"] + relevant_primes(*(square_class(a) for a in ents)):
            d = local_anisotropic_dim(ents, v)
            ok = d % 2 == len(ents) % 2 and (v == "inf" or d <= 4)
            res.check(ok, lambda: f"{ents} at {v}: {d}")


def suite_norm_casework(res, rng, n, height):
    for _ in range(n):
        q = ZERO
        for _ in range(rng.randint(1, 3)):
            q = q + pfister2(gen.rand_int(rng, 30, nonzero=True), gen.rand_int(rng, 30, nonzero=True))
        sig = q.signature
        if sig:
            ok = sig % 4 == 0 and q.norm == abs(sig)
        else:
            ok = q.norm in (0, 4)
        res.check(ok and q.in_I2(), lambda: f"{q}: sig {sig} norm {q.norm}")


def suite_pfister_relations(res, rng, n, height):
    for _ in range(n):
        s = gen.rand_rational(rng, 100, nonzero=True)
        t = gen.rand_rational(rng, 100, nonzero=True)
        r = gen.rand_rational(rng, 100, nonzero=True)
        p = pfister2(s, t)
        ok = p == pfister2(1 / t, s) and p == pfister2(s, -s * t)
        if s != 1:
            ok = ok and p == pfister2(s, (1 - s) * t)
        ok = ok and pfister2(s * t, r) + p == pfister2(s, t * r) + pfister2(t, r)
        ok = ok and pfister2(s * 7 * 7, t) == p
        ok = ok and pfister2(1, s) == ZERO and pfister2(s, 1) == ZERO and pfister2(s * s, t) == ZERO
        if s + t != 0:
            lhs = symbol(1) + symbol(-s) + symbol(1) + symbol(-t)
            rhs = symbol(1) + symbol(-(s + t)) + symbol(1) + symbol(-(s + t) * s * t)
            ok = ok and lhs == rhs and p == pfister2(s + t, s * t * (s + t))
        res.check(ok, lambda: f"s={s} t={t} r={r}")


# ---------------------------------------------------------------------------
# surfaces

def _glue_partner(rng, b: BoundedSurfaceRep) -> BoundedSurfaceRep:
    v = gen.centralizer_element(b.boundary, gen.rand_rational(rng, 2))
    out = twist_bounded(b, v)
    if rng.random() < 0.5:
        out = vee(out, BoundedSurfaceRep((gen.rand_commuting_pair(rng, 3),)))
    return out


def suite_delta_vs_lift(res, rng, n, height):
    for _ in range(n):
        r = gen.rand_closed(rng, rng.randint(1, 3))
        a, b = evaluate_closed(r), evaluate_closed_delta(r)
        res.check(a == b and a.in_I2() and a.norm <= 4 * r.genus - 2, lambda: f"{r.to_json()}: {a} vs {b}")


def suite_gluing(res, rng, n, height):
    for _ in range(n):
        b1 = gen.rand_bounded(rng, rng.randint(1, 2), 3)
        b2 = _glue_partner(rng, b1)
        c = evaluate_closed(glue_closed(b1, b2))
        res.check(c == relative_class(b1) - relative_class(b2), lambda: f"b1={b1.to_json()}")


def suite_twisting(res, rng, n, height):
    for _ in range(n):
        b = gen.rand_bounded(rng, rng.randint(1, 2), SURFACE_HEIGHT)
        a = gen.rand_sl2(rng, SURFACE_HEIGHT)
        w = b.boundary
        lhs = relative_class(twist_bounded(b, a))
        rhs = relative_class(b) + witt_cocycle(a, w) - witt_cocycle(a @ w @ a.inv(), a)
        res.check(lhs == rhs, lambda: f"b={b.to_json()} a={a}")


def suite_boundary_sum(res, rng, n, height):
    for _ in range(n):
        b1 = gen.rand_bounded(rng, 1, SURFACE_HEIGHT)
        b2 = gen.rand_bounded(rng, rng.randint(1, 2), SURFACE_HEIGHT)
        lhs = relative_class(vee(b1, b2))
        rhs = relative_class(b1) + relative_class(b2) + witt_cocycle(b1.boundary, b2.boundary)
        res.check(lhs == rhs, lambda: f"b1={b1.to_json()} b2={b2.to_json()}")


def suite_genus1_formula(res, rng, n, height):
    for _ in range(n):
        x, y = gen.rand_sl2(rng, SURFACE_HEIGHT * 5), gen.rand_sl2(rng, SURFACE_HEIGHT * 5)
        b = BoundedSurfaceRep(((x, y),))
        res.check(relative_class(b) == genus1_relative_formula(x, y), lambda: f"x={x} y={y}")


def suite_invariance(res, rng, n, height):
    for _ in range(n):
        r = gen.rand_closed(rng, rng.randint(1, 3), moves=0, allow_realize=False)
        c = evaluate_closed(r)
        b1 = r.pairs[0][1]
        v = gen.centralizer_element(b1, gen.rand_rational(rng, 3))
        t = twist_closed(r, v)
        k = conjugate_rep(r, gen.rand_sl2(rng, 3))
        res.check(evaluate_closed(t) == c and evaluate_closed(k) == c, lambda: f"{r.to_json()}")


def suite_realize_roundtrip(res, rng, n, height):
    for _ in range(n):
        g = 2 if rng.random() < 0.8 else 3
        q = gen.rand_target(rng, g)
        r = realize(q, g)
        c = evaluate_closed(r)
        res.check(c == q and c.norm <= 4 * g - 2, lambda: f"target {q}, genus {g}: got {c}")


# name -> (function, iterations as a function of --iters)
SUITES: dict[str, tuple[Callable, Callable[[int], int]]] = {
    "cocycle_law": (suite_cocycle_law, lambda k: k),
    "equicommutative": (suite_equicommutative, lambda k: k),
    "moore_vs_witt": (suite_moore_vs_witt, lambda k: max(k, 5)),
    "g2_closed_form": (suite_g2_closed_form, lambda k: k),
    "normalization": (suite_normalization, lambda k: k),
    "reciprocity": (suite_reciprocity, lambda k: k),
    "bimultiplicative": (suite_bimultiplicative, lambda k: k),
    "witt_group": (suite_witt_group, lambda k: k),
    "local_parity": (suite_local_parity, lambda k: k),
    "norm_casework": (suite_norm_casework, lambda k: k),
    "pfister_relations": (suite_pfister_relations, lambda k: k),
    "delta_vs_lift": (suite_delta_vs_lift, lambda k: max(1, k // 10)),
    "gluing": (suite_gluing, lambda k: max(1, k // 10)),
    "twisting": (suite_twisting, lambda k: max(1, k // 10)),
    "boundary_sum": (suite_boundary_sum, lambda k: max(1, k // 10)),
    "genus1_formula": (suite_genus1_formula, lambda k: max(1, k // 10)),
    "invariance": (suite_invariance, lambda k: max(1, k // 10)),
    "realize_roundtrip": (suite_realize_roundtrip, lambda k: max(1, k // 100)),
}


def run_suites(iters: int, seed: int, height: int = gen.DEFAULT_HEIGHT,
               names: list[str] | None = None) -> list[SuiteResult]:
    if iters < 1:
        raise ValueError("iters must be at least 1")
    out = []
    for name in names or list(SUITES):
        fn, scale = SUITES[name]
        res = SuiteResult(name)
        fn(res, _rng(seed, name), scale(iters), height)
        out.append(res)
    return out
