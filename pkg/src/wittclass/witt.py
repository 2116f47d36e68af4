"""The Witt group W(Q) and the monomial fragment of W(Q((x))).

A Witt class over Q is determined by its anisotropic dimension, signature,
determinant and the finite set of primes at which the Hasse invariant of its
anisotropic representative is -1 (Hasse-Minkowski).  ``WittClass`` stores
exactly these invariants, so equality of classes is equality of fields, and
synthesizes a diagonal representative on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .qforms import (
    DiagonalForm,
    FormError,
    RationalLike,
    as_form,
    factorize,
    hilbert_int,
    is_local_square,
    local_dim_from_invariants,
    mul_classes,
    prime_divisors,
    signature,
    square_class,
    to_rational,
)

# real place in Hasse bookkeeping
INF = None

_MAX_CANDIDATE = 10**7


def _real_hasse(n: int, sig: int) -> int:
    r = (n - sig) // 2
    return -1 if (r * (r - 1) // 2) & 1 else 1


def _hyperbolic_hasse(k: int, p) -> int:
    # Hasse invariant of k copies of <1,-1>
    return hilbert_int(-1, -1, p) ** ((k * (k - 1) // 2) & 1)


def _support(det: int, minus: Iterable[int]) -> set[int]:
    s = {2}
    s.update(prime_divisors(det))
    s.update(minus)
    return s


def _reduce(dim: int, sig: int, det: int, hasse: dict[int, int]) -> "WittClass":
    """Anisotropic invariants of the class of a form with the given invariants.

    ``hasse`` maps primes to local Hasse invariants and must contain every
    prime where the invariant is -1.
    """
    primes = _support(det, (p for p, h in hasse.items() if h == -1))
    n = abs(sig)
    for p in primes:
        n = max(n, local_dim_from_invariants(dim, det, hasse.get(p, 1), p))
    k = (dim - n) // 2
    sgn = -1 if k & 1 else 1
    det2 = det * sgn
    minus = set()
    for p in primes:
        h = hasse.get(p, 1) * _hyperbolic_hasse(k, p) * hilbert_int(det2, sgn, p)
        if h == -1:
            minus.add(p)
    return WittClass(n, sig, det2, frozenset(minus))


@dataclass(frozen=True)
class WittClass:
    """An element of W(Q), held by the invariants of its anisotropic representative.

    dim:     anisotropic dimension (the norm)
    sig:     signature
    det:     determinant of the anisotropic representative, as a square class
    minus:   primes where its Hasse invariant is -1
    """

    dim: int = 0
    sig: int = 0
    det: int = 1
    minus: frozenset = field(default_factory=frozenset)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "WittClass":
        return cls()

    @classmethod
    def symbol(cls, a: RationalLike) -> "WittClass":
        """The class [a] of the one-dimensional form a x^2; [0] is zero."""
        if to_rational(a) == 0:
            return cls()
        s = square_class(a)
        return cls(1, 1 if s > 0 else -1, s, frozenset())

    @classmethod
    def from_form(cls, f) -> "WittClass":
        f = as_form(f)
        ents = f.entries
        det = f.determinant()
        primes = {2}
        for a in ents:
            primes.update(prime_divisors(a))
        hasse = {}
        for p in primes:
            h = 1
            for i in range(len(ents)):
                for j in range(i + 1, len(ents)):
                    h *= hilbert_int(ents[i], ents[j], p)
            hasse[p] = h
        return _reduce(len(ents), signature(f), det, hasse)

    @classmethod
    def parse(cls, text: str) -> "WittClass":
        return cls.from_form(DiagonalForm.parse(text))

    # -- invariants -------------------------------------------------------

    def hasse(self, p) -> int:
        """Hasse invariant of the anisotropic representative at p (None = real)."""
        if p is INF:
            return _real_hasse(self.dim, self.sig)
        return -1 if p in self.minus else 1

    @property
    def norm(self) -> int:
        return self.dim

    @property
    def signature(self) -> int:
        return self.sig

    @property
    def discriminant(self) -> int:
        """Signed discriminant d± of the anisotropic representative."""
        n = self.dim
        return -self.det if (n * (n - 1) // 2) & 1 else self.det

    def in_I2(self) -> bool:
        return self.dim % 2 == 0 and self.discriminant == 1

    def is_zero(self) -> bool:
        return self.dim == 0

    def __bool__(self) -> bool:
        return self.dim != 0

    def places(self) -> list:
        """Real place followed by the primes where the class may be locally nontrivial."""
        return [INF] + sorted(_support(self.det, self.minus))

    def local_dim(self, p) -> int:
        if p is INF:
            return abs(self.sig)
        return local_dim_from_invariants(self.dim, self.det, self.hasse(p), p)

    # -- group law --------------------------------------------------------

    def __add__(self, other: "WittClass") -> "WittClass":
        if not isinstance(other, WittClass):
            return NotImplemented
        if not other.dim:
            return self
        if not self.dim:
            return other
        det = mul_classes(self.det, other.det)
        primes = _support(self.det, self.minus) | _support(other.det, other.minus)
        hasse = {p: self.hasse(p) * other.hasse(p) * hilbert_int(self.det, other.det, p)
                 for p in primes}
        return _reduce(self.dim + other.dim, self.sig + other.sig, det, hasse)

    def __neg__(self) -> "WittClass":
        return self.scale(-1)

    def __sub__(self, other: "WittClass") -> "WittClass":
        if not isinstance(other, WittClass):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k: int) -> "WittClass":
        if not isinstance(k, int):
            return NotImplemented
        out = WittClass()
        base = self if k >= 0 else -self
        for _ in range(abs(k)):
            out = out + base
        return out

    def scale(self, a: RationalLike) -> "WittClass":
        """The class of a·q for q the anisotropic representative."""
        a = square_class(a)
        n = self.dim
        if n == 0 or a == 1:
            return self
        det = self.det if n % 2 == 0 else mul_classes(self.det, a)
        primes = _support(self.det, self.minus) | set(prime_divisors(a))
        minus = set()
        pairs = (n * (n - 1) // 2) & 1
        for p in primes:
            h = self.hasse(p) * hilbert_int(a, a, p) ** pairs * hilbert_int(a, self.det, p) ** ((n - 1) & 1)
            if h == -1:
                minus.add(p)
        sig = self.sig if a > 0 else -self.sig
        return WittClass(n, sig, det, frozenset(minus))

    # -- representative ---------------------------------------------------

    @cached_property
    def rep(self) -> DiagonalForm:
        """The canonical anisotropic diagonal representative."""
        return DiagonalForm(_synthesize(self.dim, self.sig, self.det, self.minus))

    def __str__(self) -> str:
        return str(self.rep)

    def __repr__(self) -> str:
        return f"WittClass<{self.rep}>"


# ---------------------------------------------------------------------------
# synthesis of a diagonal representative from invariants

def _is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def _candidates():
    a = 1
    while a < _MAX_CANDIDATE:
        if _is_squarefree(a):
            yield a
            yield -a
        a += 1
    raise FormError("no diagonal entry found below the search bound")


def _exists(m: int, sig: int, det: int, minus: frozenset) -> bool:
    """Whether a form over Q with these invariants exists.

    ``minus`` holds the places (primes, or INF) with Hasse invariant -1.
    """
    if abs(sig) > m or (m - sig) % 2:
        return False
    r = (m - sig) // 2
    if (det < 0) != bool(r & 1):
        return False
    if (INF in minus) != (_real_hasse(m, sig) == -1):
        return False
    if len(minus) % 2:
        return False
    if m == 0:
        return det == 1 and not minus
    if m == 1:
        return not minus
    if m == 2:
        return all(not is_local_square(-det, v) for v in minus)
    return True


def _synthesize(n: int, sig: int, det: int, minus: frozenset) -> tuple[int, ...]:
    minus = set(minus)
    if _real_hasse(n, sig) == -1:
        minus.add(INF)
    entries = []
    m = n
    while m > 1:
        places = {INF} | _support(det, (p for p in minus if p is not INF))
        for a in _candidates():
            det_g = mul_classes(det, a)
            sig_g = sig - (1 if a > 0 else -1)
            minus_g = set()
            for v in places | set(prime_divisors(a)):
                h = (-1 if v in minus else 1) * hilbert_int(a, det_g, v)
                if h == -1:
                    minus_g.add(v)
            if _exists(m - 1, sig_g, det_g, frozenset(minus_g)):
                break
        entries.append(a)
        m, sig, det, minus = m - 1, sig_g, det_g, minus_g
    if m == 1:
        entries.append(det)
    return tuple(sorted(entries, key=lambda a: (a < 0, abs(a))))


# ---------------------------------------------------------------------------
# functional interface

def symbol(a: RationalLike) -> WittClass:
    return WittClass.symbol(a)


def witt_add(x: WittClass, y: WittClass) -> WittClass:
    return x + y


def witt_neg(x: WittClass) -> WittClass:
    return -x


def scale(x: WittClass, a: RationalLike) -> WittClass:
    return x.scale(a)


def pfister2(a: RationalLike, b: RationalLike) -> WittClass:
    """The 2-fold Pfister form <<a,b>> = [1] - [a] - [b] + [ab]."""
    a, b = to_rational(a), to_rational(b)
    if a == 0 or b == 0:
        raise FormError("Pfister form needs nonzero entries")
    return WittClass.from_form(DiagonalForm((1, square_class(-a), square_class(-b), square_class(a * b))))


def norm(x: WittClass) -> int:
    return x.norm


def in_I2(x: WittClass) -> bool:
    return x.in_I2()


def witt_sum(classes: Iterable[WittClass]) -> WittClass:
    out = WittClass()
    for c in classes:
        out = out + c
    return out


# ---------------------------------------------------------------------------
# Q((x)): monomial forms c·x^k

@dataclass(frozen=True)
class LaurentForm:
    """A diagonal form over Q((x)) with monomial entries c·x^e, e in {0, 1}."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        ents = []
        for c, e in self.entries:
            if c == 0:
                raise FormError("zero coefficient in Laurent form")
            ents.append((square_class(c), e % 2))
        object.__setattr__(self, "entries", tuple(ents))

    @classmethod
    def parse(cls, text: str) -> "LaurentForm":
        """Parse "coeff:exponent" pairs, e.g. "1:0,7:0,1:1,-7:1"."""
        out = []
        for part in filter(None, (s.strip() for s in text.split(","))):
            try:
                c, e = part.split(":")
                out.append((square_class(c), int(e)))
            except ValueError as exc:
                raise FormError(f"bad Laurent entry {part!r}") from exc
        return cls(tuple(out))

    def __add__(self, other: "LaurentForm") -> "LaurentForm":
        return LaurentForm(self.entries + other.entries)

    def __str__(self) -> str:
        return ",".join(f"{c}:{e}" for c, e in self.entries)

    def residue_forms(self) -> tuple[DiagonalForm, DiagonalForm]:
        """The split q1 + x·q2 by exponent parity."""
        q1 = DiagonalForm(tuple(c for c, e in self.entries if e == 0))
        q2 = DiagonalForm(tuple(c for c, e in self.entries if e == 1))
        return q1, q2

    def in_I2(self) -> bool:
        n = len(self.entries)
        q1, q2 = self.residue_forms()
        if n % 2 or len(q2) % 2:
            return False
        d = mul_classes(q1.determinant(), q2.determinant())
        d = -d if (n * (n - 1) // 2) & 1 else d
        return d == 1


def laurent_anisotropic_dim(f: LaurentForm) -> int:
    """Anisotropic dimension over Q((x)) via the two residue forms."""
    q1, q2 = f.residue_forms()
    return WittClass.from_form(q1).norm + WittClass.from_form(q2).norm
