import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fctheory.cyclo import (ONE, ZERO, Cyclotomic, compare_real, cyc, rank, reconstruct, sqrt2,
                            totient)
from fctheory.io import parse_literal

CONDUCTORS = [1, 3, 4, 5, 8, 12, 15, 16, 24]
UNITS = [1, -1, 7, 11, 13, 17, 19, 23, 29, 31]

coef = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def cyclotomics(draw, nonzero=False):
    N = draw(st.sampled_from(CONDUCTORS))
    terms = draw(st.lists(st.tuples(st.integers(0, 47), coef), min_size=1, max_size=4))
    x = Cyclotomic.from_exponents(N, terms)
    if nonzero and x.is_zero():
        x = x + 1
    return x


def value(x):
    return complex(x.embed(80))


def close(a, b):
    return abs(a - b) < 1e-9 * (1 + abs(a) + abs(b))


@given(cyclotomics(), cyclotomics())
def test_arithmetic_agrees_with_complex_embedding(x, y):
    assert close(value(x + y), value(x) + value(y))
    assert close(value(x - y), value(x) - value(y))
    assert close(value(x * y), value(x) * value(y))


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO


@settings(max_examples=60)
@given(cyclotomics(nonzero=True))
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert (ONE / x) * x == ONE


@given(cyclotomics(), cyclotomics(), st.sampled_from(UNITS), st.sampled_from(UNITS))
def test_galois_is_a_field_automorphism(x, y, l, m):
    assert (x * y).galois(l) == x.galois(l) * y.galois(l)
    assert (x + y).galois(l) == x.galois(l) + y.galois(l)
    assert x.galois(l).galois(m) == x.galois(l * m)
    assert x.galois(1) == x


@given(cyclotomics())
def test_conj_is_complex_conjugation(x):
    assert close(value(x.conj()), value(x).conjugate())
    a = x.abs_squared()
    assert a.is_real()
    assert compare_real(a, 0) >= 0


@given(cyclotomics(), st.sampled_from([1, 2, 3, 5, 7]))
def test_representation_is_canonical(x, k):
    """The same number written in a larger field normalizes to an equal, equally hashed value."""
    M = x.N * k
    lifted = Cyclotomic.from_fractions(M, x.coeffs_at(M))
    assert lifted == x
    assert hash(lifted) == hash(x)
    assert lifted.N == x.N


@given(cyclotomics())
def test_literal_round_trip(x):
    M = 240
    assert parse_literal(x.literal(M), M) == x
    assert parse_literal(x.literal(), x.N) == x


@settings(max_examples=30, deadline=None)
@given(cyclotomics())
def test_reconstruct_recovers_exact_value(x):
    assert reconstruct(x.embed(512), x.N * 2, denom_bound=1000, precision_bits=512) == x


@settings(max_examples=40, deadline=None)
@given(cyclotomics())
def test_reconstruct_real_values_at_default_precision(x):
    """Real targets (such as quantum dimensions) are searched in the real subfield."""
    y = x + x.conj()
    assert reconstruct(y.embed(192), y.N, denom_bound=1000) == y


@pytest.mark.parametrize("x, N", [
    (Cyclotomic.zeta(8) ** 2, 4),
    (Cyclotomic.zeta(6), 3),
    (Cyclotomic.zeta(12) ** 4, 3),
    (Cyclotomic.zeta(5) + Cyclotomic.zeta(5, 4), 5),
    (Cyclotomic.zeta(3) + Cyclotomic.zeta(3, 2), 1),
    (sqrt2(), 8),
])
def test_minimal_conductor(x, N):
    assert x.N == N


def test_known_values():
    assert sqrt2() ** 2 == cyc(2)
    phi = -Cyclotomic.zeta(5, 2) - Cyclotomic.zeta(5, 3)
    assert phi * phi == phi + 1
    assert Cyclotomic.root_of_unity(Fraction(1, 16)) ** 16 == ONE
    assert Cyclotomic.root_of_unity(Fraction(1, 16)).root_order() == 16
    assert Cyclotomic.root_of_unity(Fraction(1, 2)) == cyc(-1)
    assert sqrt2().galois(3) == -sqrt2()
    assert totient(16) == 8 and totient(15) == 8


def test_algebraic_integer_flag():
    assert sqrt2().is_algebraic_integer()
    assert not (sqrt2() / 2).is_algebraic_integer()
    assert (sqrt2() / 2).abs_squared() == Fraction(1, 2)


def test_galois_rejects_non_units():
    with pytest.raises(ValueError):
        Cyclotomic.zeta(8).galois(2)


def test_rank_exact():
    s = sqrt2()
    assert rank([[1, s], [s, 2]]) == 1
    assert rank([[1, s], [s, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


def test_compare_real():
    assert compare_real(sqrt2(), Fraction(141, 100)) == 1
    assert compare_real(sqrt2(), Fraction(142, 100)) == -1
    assert compare_real(sqrt2() * sqrt2(), 2) == 0


def test_constructor_checks_length():
    with pytest.raises(ValueError):
        Cyclotomic(5, (1, 2))


def test_complex_value():
    assert cmath.isclose(complex(Cyclotomic.zeta(4)), 1j, abs_tol=1e-15)
