"""Shared hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

from qgs.ncpoly import NcPoly

PROPERTY = settings(max_examples=500, derandomize=True, deadline=None)

coeffs = st.builds(Fraction, st.integers(-5, 5).filter(bool), st.integers(1, 4))


def words(ngens: int, max_len: int = 3):
    return st.lists(st.integers(0, ngens - 1), max_size=max_len).map(tuple)


def polys(ngens: int, max_terms: int = 4, max_len: int = 3):
    return st.dictionaries(words(ngens, max_len), coeffs, max_size=max_terms).map(
        lambda d: NcPoly(d, ngens))


def scalars():
    return st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))


ZERO = Fraction(0)
