"""Exact SL(2,Q) arithmetic and the three W(Q)-valued cochains on SL(2,Q).

* ``witt_cocycle``        w(x, y) = [-x21 (xy)21 y21]
* ``moore_witt_cocycle``  image of Moore's cocycle in I^2(Q), by normal-form case
* ``nekovar_cochain``     n(g), with  moore_witt_cocycle = w + coboundary_n
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .qforms import FormError, RationalLike, format_rational, mul_classes, square_class, to_rational
from .witt import WittClass, pfister2

F0 = Fraction(0)
F1 = Fraction(1)


class MatrixError(ValueError):
    """A matrix that is not in SL(2,Q), or malformed matrix data."""


@dataclass(frozen=True)
class Mat2:
    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                try:
                    object.__setattr__(self, name, to_rational(v))
                except FormError as exc:
                    raise MatrixError(str(exc)) from exc
        if self.a11 * self.a22 - self.a12 * self.a21 != 1:
            raise MatrixError(f"determinant is not 1: {self.to_json()}")

    @classmethod
    def of(cls, a11: RationalLike, a12: RationalLike, a21: RationalLike, a22: RationalLike) -> "Mat2":
        return cls(to_rational(a11), to_rational(a12), to_rational(a21), to_rational(a22))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(F1, F0, F0, F1)

    @classmethod
    def diag(cls, z: RationalLike) -> "Mat2":
        z = to_rational(z)
        return cls(z, F0, F0, 1 / z)

    @classmethod
    def from_json(cls, data) -> "Mat2":
        try:
            (a11, a12), (a21, a22) = data
        except (TypeError, ValueError) as exc:
            raise MatrixError(f"matrix must be [[a11,a12],[a21,a22]], got {data!r}") from exc
        return cls.of(*(str(x) for x in (a11, a12, a21, a22)))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(self.a11), format_rational(self.a12)],
                [format_rational(self.a21), format_rational(self.a22)]]

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a11 * o.a11 + self.a12 * o.a21, self.a11 * o.a12 + self.a12 * o.a22,
                    self.a21 * o.a11 + self.a22 * o.a21, self.a21 * o.a12 + self.a22 * o.a22)

    __mul__ = __matmul__

    def inv(self) -> "Mat2":
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def __pow__(self, k: int) -> "Mat2":
        base = self if k >= 0 else self.inv()
        out = Mat2.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def trace(self) -> Fraction:
        return self.a11 + self.a22

    def is_identity(self) -> bool:
        return self.a11 == 1 and self.a22 == 1 and self.a12 == 0 and self.a21 == 0

    def is_diagonal(self) -> bool:
        return self.a12 == 0 and self.a21 == 0

    def __str__(self) -> str:
        (a, b), (c, d) = self.to_json()
        return f"[[{a}, {b}], [{c}, {d}]]"


I = Mat2.identity()


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return x @ y


def mat_inv(x: Mat2) -> Mat2:
    return x.inv()


def conj(a: Mat2, x: Mat2) -> Mat2:
    """a x a^-1"""
    return a @ x @ a.inv()


def commutator(x: Mat2, y: Mat2) -> Mat2:
    """x y x^-1 y^-1"""
    return x @ y @ x.inv() @ y.inv()


# ---------------------------------------------------------------------------
# Moore normal forms

@dataclass(frozen=True)
class G1:
    """x(u) h(t) = [[t, u/t], [0, 1/t]]"""

    u: Fraction
    t: Fraction

    def matrix(self) -> Mat2:
        return Mat2(self.t, self.u / self.t, F0, 1 / self.t)


@dataclass(frozen=True)
class G2:
    """x(u) w(t) x(v) = [[-u/t, t - uv/t], [-1/t, -v/t]]"""

    u: Fraction
    t: Fraction
    v: Fraction

    def matrix(self) -> Mat2:
        u, t, v = self.u, self.t, self.v
        return Mat2(-u / t, t - u * v / t, -1 / t, -v / t)


NormalForm = Union[G1, G2]


def g1(u: RationalLike, t: RationalLike) -> Mat2:
    return G1(to_rational(u), to_rational(t)).matrix()


def g2(u: RationalLike, t: RationalLike, v: RationalLike) -> Mat2:
    return G2(to_rational(u), to_rational(t), to_rational(v)).matrix()


def decompose(g: Mat2) -> NormalForm:
    if g.a21 == 0:
        return G1(g.a12 * g.a11, g.a11)
    return G2(g.a11 / g.a21, -1 / g.a21, g.a22 / g.a21)


def decode(nf: NormalForm) -> Mat2:
    return nf.matrix()


# ---------------------------------------------------------------------------
# cochains

def witt_cocycle(x: Mat2, y: Mat2) -> WittClass:
    """[-x21 (xy)21 y21], with [0] = 0."""
    if x.a21 == 0 or y.a21 == 0:
        return WittClass()
    xy21 = x.a21 * y.a11 + x.a22 * y.a21
    if xy21 == 0:
        return WittClass()
    # square classes of the factors are cheaper than that of the product
    s = mul_classes(mul_classes(square_class(-x.a21), square_class(xy21)), square_class(y.a21))
    return WittClass.symbol(s)


def moore_witt_cocycle(g: Mat2, h: Mat2) -> WittClass:
    a, b = decompose(g), decompose(h)
    if isinstance(a, G2) and isinstance(b, G2):
        t, t2 = a.t, b.t
        w = -(a.v + b.u)
        if w != 0:
            return (WittClass.symbol(w) - WittClass.symbol(t) - WittClass.symbol(t2)
                    + WittClass.symbol(t * t2 * w))
        return -(WittClass.symbol(1) + WittClass.symbol(t) + WittClass.symbol(t2)
                 + WittClass.symbol(t * t2))
    return pfister2(a.t, b.t)


def nekovar_cochain(g: Mat2) -> WittClass:
    # |e, ge| = g.a21 with |u, v| the determinant of the columns u, v
    if g.a21 != 0:
        return WittClass.symbol(g.a21)
    return WittClass.symbol(1) - WittClass.symbol(g.a11)


def coboundary_n(g: Mat2, h: Mat2) -> WittClass:
    return nekovar_cochain(g) - nekovar_cochain(g @ h) + nekovar_cochain(h)
