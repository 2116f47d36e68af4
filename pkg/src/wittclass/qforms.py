"""Square classes, Hilbert symbols and local invariants of diagonal forms over Q.

Square classes of Q* are represented by signed squarefree integers, so that
equality of classes is plain integer equality.  Places are either ``REAL``
or ``Place(p)`` for a prime ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Union

from sympy import factorint, isprime, primerange

RationalLike = Union[int, Fraction, str]


class FormError(ValueError):
    """Invalid input to a quadratic-form operation."""


# ---------------------------------------------------------------------------
# rationals and square classes

def to_rational(x: RationalLike) -> Fraction:
    """Parse ``x`` ("p/q", "p", int or Fraction) as an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormError(f"not a rational: {x!r}") from exc
    raise FormError(f"not a rational: {x!r}")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# Large primes met so far, and their product.  Entries produced by matrix
# products share big prime factors, so splitting those off first with one gcd
# avoids most repeated factoring.
_seen_primes: list[int] = []
_seen_product = 1
_SEEN_MIN = 10**6
_BIG = 10**20

_SMALL_PRIMES = tuple(int(p) for p in primerange(2, 1000))
_SMALL_PRODUCT = prod(_SMALL_PRIMES)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n > 0 as sorted (prime, exponent) pairs."""
    global _seen_product
    out: dict[int, int] = {}
    if n > _BIG and gcd(n, _seen_product) > 1:
        for p in _seen_primes:
            while n % p == 0:
                n //= p
                out[p] = out.get(p, 0) + 1
    g = gcd(n, _SMALL_PRODUCT)
    if g > 1:
        for p in _SMALL_PRIMES:
            if g % p == 0:
                while n % p == 0:
                    n //= p
                    out[p] = out.get(p, 0) + 1
    if n > 1 and (n < 10**6 or isprime(n)):
        out[n] = out.get(n, 0) + 1
        n = 1
    if n > 1:
        for p, e in factorint(n).items():
            p = int(p)
            if p >= _SEEN_MIN and p not in out:
                _seen_primes.append(p)
                _seen_product *= p
            out[p] = out.get(p, 0) + int(e)
    return tuple(sorted(out.items()))


def _squarefree_part(n: int) -> int:
    # n > 0
    if n < 4:
        return n
    out = 1
    for p, e in factorize(n):
        if e & 1:
            out *= p
    return out


def prime_divisors(n: int) -> tuple[int, ...]:
    n = abs(n)
    if n < 2:
        return ()
    return tuple(p for p, _ in factorize(n))


def square_class(r: RationalLike) -> int:
    """The signed squarefree integer ``s`` with ``r/s`` a nonzero square."""
    r = to_rational(r)
    if r == 0:
        raise FormError("square class of 0 is undefined")
    # r = n/d ~ n*d modulo squares
    # numerator and denominator are coprime, so the product is squarefree
    s = _squarefree_part(abs(r.numerator)) * _squarefree_part(r.denominator)
    return s if r > 0 else -s


def mul_classes(a: int, b: int) -> int:
    """Product of two square classes, without refactoring."""
    g = gcd(a, b)
    return (a // g) * (b // g)


# ---------------------------------------------------------------------------
# places

@dataclass(frozen=True)
class Place:
    """A place of Q: ``p is None`` for the real place, otherwise a prime."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not (self.p >= 2 and isprime(self.p)):
            raise FormError(f"{self.p} is not a prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


REAL = Place()


def as_place(v: Place | int | str) -> Place:
    """Accept a Place, a prime, or the strings "inf"/"real"/"<prime>"."""
    if isinstance(v, Place):
        return v
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "real", "oo", "infinity"):
            return REAL
        try:
            v = int(s)
        except ValueError as exc:
            raise FormError(f"bad place {v!r}") from exc
    if isinstance(v, int):
        return Place(v)
    raise FormError(f"bad place {v!r}")


# ---------------------------------------------------------------------------
# Hilbert symbols

def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p and a prime to p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_int(a: int, b: int, p: int | None) -> int:
    """Hilbert symbol of nonzero integers at a prime p (or the real place for None)."""
    if p is None:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p != 2:
        s = 1
        if alpha & 1 and beta & 1 and p % 4 == 3:
            s = -s
        if beta & 1:
            s *= legendre(u, p)
        if alpha & 1:
            s *= legendre(v, p)
        return s
    eps_u = ((u - 1) // 2) & 1
    eps_v = ((v - 1) // 2) & 1
    om_u = ((u * u - 1) // 8) & 1
    om_v = ((v * v - 1) // 8) & 1
    e = eps_u * eps_v + (alpha & 1) * om_v + (beta & 1) * om_u
    return -1 if e & 1 else 1


def hilbert_symbol(a: RationalLike, b: RationalLike, v: Place | int | str) -> int:
    """+1 if z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v, else -1."""
    v = as_place(v)
    return hilbert_int(square_class(a), square_class(b), v.p)


def relevant_primes(*classes: int) -> list[int]:
    """2 together with every prime dividing one of the given square classes."""
    ps = {2}
    for c in classes:
        ps.update(prime_divisors(c))
    return sorted(ps)


def is_local_square(d: int, p: int | None) -> bool:
    """Whether the square class ``d`` is trivial in Q_v."""
    if p is None:
        return d > 0
    if p == 2:
        return d % 2 == 1 and d % 8 == 1
    return d % p != 0 and legendre(d, p) == 1


# ---------------------------------------------------------------------------
# diagonal forms

@dataclass(frozen=True)
class DiagonalForm:
    """A diagonal form <a_1, ..., a_n> with entries stored as square classes."""

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        ents = tuple(self.entries)
        for a in ents:
            if not isinstance(a, int) or a == 0:
                raise FormError(f"bad diagonal entry {a!r}")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "DiagonalForm":
        return cls(tuple(square_class(x) for x in values))

    @classmethod
    def parse(cls, text: str) -> "DiagonalForm":
        text = text.strip()
        if not text:
            return cls()
        return cls.of(part for part in text.split(","))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(self.entries + tuple(other.entries))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.entries)

    def determinant(self) -> int:
        d = 1
        for a in self.entries:
            d = mul_classes(d, a)
        return d


def as_form(f: DiagonalForm | Iterable[RationalLike]) -> DiagonalForm:
    return f if isinstance(f, DiagonalForm) else DiagonalForm.of(f)


def hasse_invariant(f, v: Place | int | str) -> int:
    """Product of the Hilbert symbols (a_i, a_j)_v over i < j."""
    f = as_form(f)
    p = as_place(v).p
    s = 1
    ents = f.entries
    for i in range(len(ents)):
        for j in range(i + 1, len(ents)):
            s *= hilbert_int(ents[i], ents[j], p)
    return s


def signed_discriminant(f) -> int:
    f = as_form(f)
    n = len(f)
    d = f.determinant()
    return -d if (n * (n - 1) // 2) & 1 else d


def signature(f) -> int:
    f = as_form(f)
    return sum(1 if a > 0 else -1 for a in f.entries)


def local_dim_from_invariants(n: int, det: int, hasse: int, p: int) -> int:
    """Anisotropic dimension over Q_p of a form with dimension n, determinant det
    and Hasse invariant ``hasse`` at p (p a prime)."""
    if n % 2 == 1:
        # f + <-d±> is even-dimensional with trivial discriminant
        dpm = -det if (n * (n - 1) // 2) & 1 else det
        det2 = mul_classes(det, -dpm)
        hasse2 = hasse * hilbert_int(det, -dpm, p)
        return 1 if local_dim_from_invariants(n + 1, det2, hasse2, p) == 0 else 3
    if n == 0:
        return 0
    dpm = -det if (n // 2) & 1 else det
    if not is_local_square(dpm, p):
        return 2
    k = n // 2
    hyperbolic = hilbert_int(-1, -1, p) ** (k * (k - 1) // 2)
    return 0 if hasse == hyperbolic else 4


def local_anisotropic_dim(f, v: Place | int | str) -> int:
    """Dimension of the anisotropic kernel of f over the completion at v."""
    f = as_form(f)
    v = as_place(v)
    if v.is_real:
        return abs(signature(f))
    return local_dim_from_invariants(len(f), f.determinant(), hasse_invariant(f, v), v.p)
