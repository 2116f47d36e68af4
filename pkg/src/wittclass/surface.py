"""Surface-group representations into SL(2,Q) and their Witt classes.

Classes are computed in the central extension of SL(2,Q) by W(Q) defined by
the Witt cocycle, using standard lifts (g, 0).  The Delta-complex sum over the
4g-2 triangles of the cut-open surface is kept as an independent evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .sl2 import I, Mat2, MatrixError, conj, witt_cocycle
from .witt import WittClass


class RelatorError(ValueError):
    """Monodromy data violating the surface-group relation."""


class BoundaryMismatch(ValueError):
    """Bounded representations that cannot be glued."""


class RepFormatError(ValueError):
    """Malformed representation JSON."""


# ---------------------------------------------------------------------------
# central extension

@dataclass(frozen=True)
class ExtElem:
    g: Mat2
    u: WittClass = WittClass()

    def __mul__(self, other: "ExtElem") -> "ExtElem":
        return ExtElem(self.g @ other.g, self.u + other.u + witt_cocycle(self.g, other.g))

    def inv(self) -> "ExtElem":
        gi = self.g.inv()
        return ExtElem(gi, -self.u - witt_cocycle(self.g, gi))


def ext_mul(p: ExtElem, q: ExtElem) -> ExtElem:
    return p * q


def ext_inv(p: ExtElem) -> ExtElem:
    return p.inv()


def lift(g: Mat2) -> ExtElem:
    """The standard lift (g, 0)."""
    return ExtElem(g)


def ext_commutator(p: ExtElem, q: ExtElem) -> ExtElem:
    return p * q * p.inv() * q.inv()


def _commutator_product(pairs) -> ExtElem:
    out = ExtElem(I)
    for a, b in pairs:
        out = out * ext_commutator(lift(a), lift(b))
    return out


def _relator(pairs) -> Mat2:
    out = I
    for a, b in pairs:
        out = out @ a @ b @ a.inv() @ b.inv()
    return out


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True)
class ClosedSurfaceRep:
    """Monodromies (A_i, B_i) of a closed genus-g surface, prod [A_i, B_i] = I."""

    pairs: tuple[tuple[Mat2, Mat2], ...]

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        if not pairs:
            raise RelatorError("genus must be positive")
        object.__setattr__(self, "pairs", pairs)
        if not _relator(pairs).is_identity():
            raise RelatorError("product of commutators is not the identity")

    @property
    def genus(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"genus": self.genus,
                "pairs": [{"A": a.to_json(), "B": b.to_json()} for a, b in self.pairs]}


@dataclass(frozen=True)
class BoundedSurfaceRep:
    """Monodromies (X_i, Y_i) of a genus-g surface with one boundary component.

    The boundary monodromy is prod [X_i, Y_i]; its framing is the standard lift.
    """

    pairs: tuple[tuple[Mat2, Mat2], ...]

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        if not pairs:
            raise RelatorError("genus must be positive")
        object.__setattr__(self, "pairs", pairs)

    @property
    def genus(self) -> int:
        return len(self.pairs)

    @cached_property
    def boundary(self) -> Mat2:
        return _relator(self.pairs)

    def to_json(self) -> dict:
        return {"genus": self.genus,
                "pairs": [{"A": a.to_json(), "B": b.to_json()} for a, b in self.pairs],
                "boundary": self.boundary.to_json()}


def rep_from_json(data) -> ClosedSurfaceRep | BoundedSurfaceRep:
    """Parse the JSON representation format; closed iff "boundary" is absent."""
    if not isinstance(data, dict) or "pairs" not in data or "genus" not in data:
        raise RepFormatError('expected an object with "genus" and "pairs"')
    try:
        pairs = [(Mat2.from_json(p["A"]), Mat2.from_json(p["B"])) for p in data["pairs"]]
    except (KeyError, TypeError) as exc:
        raise RepFormatError(f"bad pair entry: {exc}") from exc
    if data["genus"] != len(pairs):
        raise RepFormatError(f"genus {data['genus']} does not match {len(pairs)} pairs")
    if "boundary" in data:
        rep = BoundedSurfaceRep(tuple(pairs))
        if Mat2.from_json(data["boundary"]) != rep.boundary:
            raise RelatorError("recorded boundary differs from the product of commutators")
        return rep
    return ClosedSurfaceRep(tuple(pairs))


def load_rep(path) -> ClosedSurfaceRep | BoundedSurfaceRep:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RepFormatError(f"invalid JSON: {exc}") from exc
    return rep_from_json(data)


# ---------------------------------------------------------------------------
# evaluation

def evaluate_closed(r: ClosedSurfaceRep) -> WittClass:
    """The Witt class of r: the central element prod [lift A_i, lift B_i]."""
    out = _commutator_product(r.pairs)
    assert out.g.is_identity()
    return out.u


def edge_word(r: ClosedSurfaceRep) -> list[tuple[Mat2, int]]:
    """Monodromies and exponents along the polygon edges a1 b1 a1^-1 b1^-1 ..."""
    word = []
    for a, b in r.pairs:
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return word


def evaluate_closed_delta(r: ClosedSurfaceRep) -> WittClass:
    """Sum of the cocycle over the triangles fanned out from vertex 0."""
    word = edge_word(r)
    prefixes = [I]
    for c, e in word:
        prefixes.append(prefixes[-1] @ (c if e > 0 else c.inv()))
    total = WittClass()
    for i, (c, e) in enumerate(word):
        if e > 0:
            total = total + witt_cocycle(prefixes[i], c)
        else:
            total = total - witt_cocycle(prefixes[i + 1], c)
    return total


def relative_class(b: BoundedSurfaceRep) -> WittClass:
    out = _commutator_product(b.pairs) * lift(b.boundary).inv()
    assert out.g.is_identity()
    return out.u


def genus1_relative_formula(x: Mat2, y: Mat2) -> WittClass:
    """w(X,Y) - w(Y,X) - w(W, YX) for W = [X, Y]."""
    w = x @ y @ x.inv() @ y.inv()
    return witt_cocycle(x, y) - witt_cocycle(y, x) - witt_cocycle(w, y @ x)


# ---------------------------------------------------------------------------
# gluing and twisting

def glue_closed(b1: BoundedSurfaceRep, b2: BoundedSurfaceRep) -> ClosedSurfaceRep:
    """Glue along equal boundaries; b2 enters with reversed orientation."""
    if b1.boundary != b2.boundary:
        raise BoundaryMismatch("boundary monodromies differ")
    pairs = list(b1.pairs) + [(y, x) for x, y in reversed(b2.pairs)]
    return ClosedSurfaceRep(tuple(pairs))


def twist_bounded(b: BoundedSurfaceRep, a: Mat2) -> BoundedSurfaceRep:
    """Change the framing by a: every monodromy M becomes a M a^-1."""
    return BoundedSurfaceRep(tuple((conj(a, x), conj(a, y)) for x, y in b.pairs))


def twist_shift(b: BoundedSurfaceRep, a: Mat2) -> WittClass:
    """relative_class(twist_bounded(b, a)) - relative_class(b)."""
    w = b.boundary
    return witt_cocycle(a, w) - witt_cocycle(conj(a, w), a)


def twist_closed(r: ClosedSurfaceRep, v: Mat2, loop: str = "b1") -> ClosedSurfaceRep:
    """Twist along the non-separating loop b1 by v in the centralizer of B_1."""
    if loop != "b1":
        raise ValueError(f"unsupported loop {loop!r}; only 'b1' is exposed")
    a1, b1 = r.pairs[0]
    if v @ b1 != b1 @ v:
        raise ValueError("twist element does not commute with the loop monodromy")
    return ClosedSurfaceRep(((a1 @ v, b1),) + r.pairs[1:])


def vee(b1: BoundedSurfaceRep, b2: BoundedSurfaceRep) -> BoundedSurfaceRep:
    """Boundary connected sum; the new boundary monodromy is W W'."""
    return BoundedSurfaceRep(b1.pairs + b2.pairs)


def conjugate_rep(r: ClosedSurfaceRep, a: Mat2) -> ClosedSurfaceRep:
    return ClosedSurfaceRep(tuple((conj(a, x), conj(a, y)) for x, y in r.pairs))


def closed_from_pairs(pairs: Sequence[tuple[Mat2, Mat2]]) -> ClosedSurfaceRep:
    return ClosedSurfaceRep(tuple(pairs))


__all__ = [
    "BoundaryMismatch", "BoundedSurfaceRep", "ClosedSurfaceRep", "ExtElem", "MatrixError",
    "RelatorError", "RepFormatError", "conjugate_rep", "edge_word", "evaluate_closed",
    "evaluate_closed_delta", "ext_commutator", "ext_inv", "ext_mul", "genus1_relative_formula",
    "glue_closed", "lift", "load_rep", "relative_class", "rep_from_json", "twist_bounded",
    "twist_closed", "twist_shift", "vee",
]
