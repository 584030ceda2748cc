from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgltheta.coeffdom import (
    QQ,
    ZZ,
    NotAUnit,
    PadicApprox,
    PadicRing,
    PolyRing,
    QuotientRing,
    WittF4,
    WittRing,
    padic_inv,
    witt_frobenius,
    witt_inv,
)
from fgltheta.series import SeriesRing
from oracles import egcd_inverse, f4_mul

ints = st.integers(min_value=-(10**30), max_value=10**30)
precisions = st.integers(min_value=1, max_value=80)


def test_inverse_of_three_mod_64():
    assert padic_inv(PadicApprox.of(3, 6)).value == 43


@given(ints, precisions)
def test_inverse_matches_extended_euclid(n, N):
    x = PadicApprox.of(2 * n + 1, N)
    assert padic_inv(x).value == egcd_inverse(2 * n + 1, 1 << N)
    assert (x * padic_inv(x)).value == 1 % (1 << N)


def test_even_has_no_inverse():
    with pytest.raises(NotAUnit):
        padic_inv(PadicApprox.of(6, 8))


@given(ints, ints, ints, precisions)
def test_ring_axioms(a, b, c, N):
    x, y, z = (PadicApprox.of(v, N) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == PadicApprox(0, N)
    assert (x * y).value == (a * b) % (1 << N)


@given(ints, precisions, precisions)
def test_precision_is_minimum(a, N, M):
    x, y = PadicApprox.of(a, N), PadicApprox.of(a, M)
    assert (x + y).precision == min(N, M)
    assert (x * y).precision == min(N, M)


@given(ints, precisions)
def test_signed_representative(a, N):
    x = PadicApprox.of(a, N)
    s = x.signed()
    assert (s - a) % (1 << N) == 0
    assert -(1 << (N - 1)) <= s < (1 << (N - 1)) or N == 0


def test_valuation_and_halve():
    x = PadicApprox.of(-48, 16)
    assert x.valuation() == 4
    h = x.halve()
    assert h.signed() == -24 and h.precision == 15
    assert PadicApprox(0, 9).valuation() == 9
    with pytest.raises(NotAUnit):
        PadicApprox.of(3, 8).halve()


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        PadicApprox(256, 8)


def test_fraction_coercion():
    x = PadicApprox.of(1, 16) * Fraction(1, 3)
    assert (x * 3).value == 1
    with pytest.raises(NotAUnit):
        PadicApprox.of(1, 16) * Fraction(1, 2)


def test_padic_ring_protocol():
    R = PadicRing(10)
    assert R.zero.is_zero() and R.one.value == 1
    assert R(-1).value == 1023
    assert R(PadicApprox.of(5, 20)).precision == 10
    assert R.inv(R(5)) * 5 == R.one


# W(F4) ---------------------------------------------------------------------

small = st.integers(min_value=-50, max_value=50)


@given(small, small, small, small)
def test_witt_product_matches_polynomial_remainder(a, b, c, d):
    N = 20
    x, y = WittF4.of(a, b, N), WittF4.of(c, d, N)
    re, im = f4_mul((a, b), (c, d))
    assert x * y == WittF4.of(re, im, N)


@given(small, small, small, small)
def test_frobenius_is_ring_automorphism(a, b, c, d):
    N = 16
    x, y = WittF4.of(a, b, N), WittF4.of(c, d, N)
    assert witt_frobenius(x * y) == witt_frobenius(x) * witt_frobenius(y)
    assert witt_frobenius(x + y) == witt_frobenius(x) + witt_frobenius(y)
    assert witt_frobenius(witt_frobenius(x)) == x


def test_omega_relations():
    W = WittRing(8)
    w = W.omega
    assert w * w + w + 1 == W.zero
    assert w * w * w == W.one
    assert witt_frobenius(w) == w * w


def test_witt_units_by_brute_force():
    """At N = 2 the units are exactly the elements with odd norm, and inverses are unique."""
    W = WittRing(2)
    elements = list(W.elements())
    assert len(elements) == 16
    for x in elements:
        partners = [y for y in elements if x * y == W.one]
        if x.norm().value % 2:
            assert partners == [witt_inv(x)]
        else:
            assert partners == []


# d^3 = t d + 2 -----------------------------------------------------------------


def test_quotient_relation_and_inverse_over_series():
    B = SeriesRing(QQ, 6, "t")
    t = B.gen
    Q = QuotientRing(B, t)
    d = Q.gen
    assert Q.is_zero(Q.relation_residual())
    dinv = Q.inv(d)
    assert Q.is_zero(d * dinv - 1)
    # d^-1 = (d^2 - t) / 2 from the relation
    assert Q.is_zero(dinv - (d * d - Q(t)) * Fraction(1, 2))


def test_quotient_over_integers_has_no_inverse_of_d():
    Q = QuotientRing(ZZ, 5)
    d = Q.gen
    assert Q.norm(d) == 2
    assert not Q.is_unit(d)
    with pytest.raises(NotAUnit):
        Q.inv(d)


@given(st.tuples(small, small, small), st.tuples(small, small, small), small)
def test_quotient_is_associative_commutative(p, q, t):
    Q = QuotientRing(ZZ, t)
    x, y = Q(0) + p[0] + Q.gen * p[1] + Q.gen * Q.gen * p[2], Q(q[0]) + Q.gen * q[1] + Q.gen * Q.gen * q[2]
    z = Q.gen + 1
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)


# Z[a, b] -------------------------------------------------------------------------


def test_poly_ring_grading():
    A = PolyRing(["a", "b"], [2, 6])
    a, b = A.gens
    assert A.homogeneous_degree(a**3 + a * b) is None
    assert A.homogeneous_degree(a**3 + b) == 6
    assert sorted(A.monomials_of_degree(12)) == [(0, 2), (3, 1), (6, 0)]
    assert A.mod(3 * a + 2 * b, 2) == a
