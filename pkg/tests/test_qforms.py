from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

import oracles as O
from wittclass.qforms import (
    REAL,
    DiagonalForm,
    FormError,
    Place,
    as_place,
    factorize,
    hasse_invariant,
    hilbert_symbol,
    local_anisotropic_dim,
    relevant_primes,
    signature,
    signed_discriminant,
    square_class,
)

ENTRIES = [1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 10, -10]


@pytest.mark.parametrize("r,want", [
    (1, 1), (18, 2), (Fraction(-50, 8), -1), (-12, -3), ("9/4", 1), (Fraction(2, 3), 6),
])
def test_square_class(r, want):
    assert square_class(r) == want


def test_square_class_rejects_zero():
    with pytest.raises(FormError):
        square_class(0)


def test_factorize_large():
    p, q = 1000000007, 998244353
    assert factorize(p * q * q) == ((q, 2), (p, 1))
    assert square_class(p * q * q) == p


def test_places():
    assert as_place("inf") == REAL
    assert as_place(7) == Place(7)
    with pytest.raises(FormError):
        as_place(6)
    with pytest.raises(FormError):
        as_place("x")


def test_hilbert_examples():
    for v in ("inf", 2, 3, 5, 7):
        assert hilbert_symbol(1, 11, v) == 1
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol("1", "5", "7") == 1


def test_hilbert_matches_oracle():
    vals = [a for a in ENTRIES] + [6, -6, 14, -14, 15, 21, -35]
    for a in vals:
        for b in vals:
            for p in (None, 2, 3, 5, 7):
                v = "inf" if p is None else p
                assert hilbert_symbol(a, b, v) == O.hilbert(a, b, p), (a, b, p)


def test_hilbert_rational_arguments():
    # squares in numerator and denominator do not matter
    assert hilbert_symbol(Fraction(-4, 9), Fraction(-1, 25), 2) == -1
    assert hilbert_symbol(Fraction(2, 3), 5, 5) == O.hilbert(6, 5, 5)


def test_hasse_examples():
    for v in ("inf", 2, 3, 7):
        assert hasse_invariant([1, 1, 1, 1], v) == 1
    assert hasse_invariant([-1, -1], "inf") == -1
    # oracle value: six symbols at 7
    assert hasse_invariant([1, 7, -2, -14], 7) == 1
    assert hasse_invariant([1, 7, -2, -14], 7) == O.hasse([1, 7, -2, -14], 7)


def test_discriminant_and_signature():
    assert signed_discriminant([1, -1]) == 1
    assert signed_discriminant([1, 7, -2, -14]) == 1
    assert signed_discriminant([12]) == 3
    assert signed_discriminant([1, -2]) == 2
    assert signature([1, 1, 1, 1]) == 4
    assert signature([1, -1]) == 0
    assert signature([1, 7, -2, -14]) == 0


def test_local_dim_examples():
    for v in ("inf", 2, 3, 7):
        assert local_anisotropic_dim([1, -1], v) == 0
    assert local_anisotropic_dim([1, 1, 1, 1], "inf") == 4
    assert local_anisotropic_dim([1, 1], 7) == 2


def test_local_dim_grid_matches_oracle():
    for n in range(1, 5):
        for ents in combinations_with_replacement(ENTRIES, n):
            for p in [None] + relevant_primes(2, *ents):
                v = "inf" if p is None else p
                assert local_anisotropic_dim(list(ents), v) == O.local_aniso_dim(ents, p), (ents, p)


def test_diagonal_form():
    f = DiagonalForm.parse("1, 7/4, -2")
    assert len(f) == 3
    # entries are kept as square classes
    assert str(f) == "1,7,-2"
    assert f.determinant() == -14
    assert (f + DiagonalForm.of([3])).entries[-1] == 3
    with pytest.raises(FormError):
        DiagonalForm.parse("1,0")
    with pytest.raises(FormError):
        DiagonalForm.parse("1,a")
