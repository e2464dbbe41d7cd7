from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qgs.ncpoly import (GeneratorMismatch, NcPoly, PolySyntaxError, commutator, deglex_compare,
                        deglex_key, format_poly, involution, parse_poly)
from strategies import PROPERTY, polys, scalars, words

N = 4
LABELS = [f"X[{i},{j}]" for i in (1, 2) for j in (1, 2)]


def X(i, j):
    return NcPoly.gen((i - 1) * 2 + (j - 1), N)


def test_mul_concatenates():
    p = X(1, 1) * X(1, 2)
    assert dict(p.items()) == {(0, 1): 1}


def test_unit_and_cancellation():
    p = X(1, 1) * X(2, 1) + Fraction(3, 2) * X(2, 2)
    assert p * NcPoly.one(N) == p == NcPoly.one(N) * p
    assert (X(1, 1) + (-X(1, 1))).is_zero()
    assert not (X(1, 1) - X(1, 1))


def test_generator_mismatch():
    with pytest.raises(GeneratorMismatch):
        NcPoly.gen(0, 2) + NcPoly.gen(0, 3)
    with pytest.raises(GeneratorMismatch):
        NcPoly.gen(0, 2) * NcPoly.gen(0, 3)


def test_no_zero_coefficients_stored():
    p = NcPoly({(0,): 0, (1,): Fraction(2, 4)}, N)
    assert list(p.items()) == [((1,), Fraction(1, 2))]
    assert all(isinstance(c, Fraction) for _, c in (p * p).items())


def test_involution_examples():
    labels = [f"X[{i},{j}]" for i in range(1, 5) for j in range(1, 5)]
    p = parse_poly("X[1,2]*X[3,4]", labels)
    assert involution(p) == parse_poly("X[3,4]*X[1,2]", labels)
    assert involution(NcPoly.one(N)) == NcPoly.one(N)
    assert involution(3 * X(1, 1)) == 3 * X(1, 1)


def test_deglex_examples():
    assert deglex_compare((0,), (0, 0)) < 0
    # X11 X12 vs X11 X21 with row-major order
    assert deglex_compare((0, 1), (0, 2)) < 0
    assert deglex_compare((2, 1), (2, 1)) == 0


def test_leading_term_and_monic():
    p = 2 * X(1, 1) * X(2, 2) - X(2, 2) + 5
    assert p.leading_word() == (0, 3)
    assert p.leading_coeff() == 2
    assert p.monic().leading_coeff() == 1
    assert p.degree() == 2


def test_parse_grammar():
    labels = [f"X[{i},{j}]" for i in range(1, 5) for j in range(1, 5)]
    p = parse_poly("3/2*X[1,2]*X[3,4] + 1", labels)
    assert p.coeff((1, 11)) == Fraction(3, 2)
    assert p.coeff(()) == 1
    assert parse_poly("X[ 1 , 2 ]", labels) == parse_poly("X[1,2]", labels)
    assert parse_poly("(X[1,1] - 1)^2", labels) == parse_poly("X[1,1]*X[1,1] - 2*X[1,1] + 1", labels)
    assert parse_poly("y3", [f"y{i}" for i in range(1, 9)]) == NcPoly.gen(2, 8)
    assert parse_poly("-x[2,1]", ["x[1,1]", "x[1,2]", "x[2,1]", "x[2,2]"]) == -NcPoly.gen(2, 4)
    assert parse_poly("0", labels).is_zero()


@pytest.mark.parametrize("text", ["X[1,1] +", "X[9,9]", "2 ** X[1,1]", "(X[1,1]", "1/0", "X[1,1]^-1", ""])
def test_parse_errors(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text, LABELS)


def test_format_highest_term_first():
    assert format_poly(X(1, 1) - X(2, 2), LABELS) == "-X[2,2] + X[1,1]"
    assert format_poly(NcPoly.zero(N), LABELS) == "0"


def test_commutator():
    assert commutator(X(1, 1), X(1, 1)).is_zero()
    assert commutator(X(1, 1), X(1, 2)) == X(1, 1) * X(1, 2) - X(1, 2) * X(1, 1)


# -- properties --------------------------------------------------------------------

P = polys(N)


@PROPERTY
@given(P, P, P)
def test_mul_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@PROPERTY
@given(P, P, P)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@PROPERTY
@given(P)
def test_unit(a):
    one = NcPoly.one(N)
    assert a * one == a == one * a
    assert a + NcPoly.zero(N) == a
    assert (a - a).is_zero()


@PROPERTY
@given(P)
def test_involution_involutive(a):
    assert involution(involution(a)) == a


@PROPERTY
@given(P, P)
def test_involution_antimultiplicative(a, b):
    assert involution(a * b) == involution(b) * involution(a)


@PROPERTY
@given(P, scalars(), P)
def test_involution_linear(a, c, b):
    assert involution(a.scale(c) + b) == involution(a).scale(c) + involution(b)


W = words(N, 4)


@PROPERTY
@given(W, W, W)
def test_deglex_total_strict(u, v, w):
    c = deglex_compare(u, v)
    assert c == -deglex_compare(v, u)
    assert (c == 0) == (u == v)
    if deglex_compare(u, v) < 0 and deglex_compare(v, w) < 0:
        assert deglex_compare(u, w) < 0


@PROPERTY
@given(W, W, W, W)
def test_deglex_admissible(u, v, w, w2):
    if deglex_compare(u, v) < 0:
        assert deglex_compare(w + u + w2, w + v + w2) < 0


@PROPERTY
@given(W, W)
def test_deglex_key_consistent(u, v):
    assert (deglex_key(u) < deglex_key(v)) == (deglex_compare(u, v) < 0)


@PROPERTY
@given(P)
def test_parse_format_round_trip(a):
    assert parse_poly(format_poly(a, LABELS), LABELS) == a


@PROPERTY
@given(P, st.integers(0, 3))
def test_power(a, k):
    expected = NcPoly.one(N)
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected
