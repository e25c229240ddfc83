"""Exact linear algebra kernel, cross-checked against cofactor expansion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspoly import exactnum as xn
from aspoly.errors import ShapeError


def cofactor_det(rows):
    """Independent oracle: recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = Fraction(rows[0][j]) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def gauss_rank(rows):
    """Independent oracle: Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def mat(rows):
    return xn.RatMatrix.from_rows(rows)


def test_det_identity():
    assert xn.det(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1


def test_det_vandermonde_3x3():
    assert xn.det(mat([[1, 1, 1], [1, 2, 3], [1, 4, 9]])) == 2


def test_det_equal_rows_zero():
    assert xn.det(mat([[2, 5], [2, 5]])) == 0


def test_det_rational_entries():
    m = mat([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
    assert xn.det(m) == Fraction(1, 14) - Fraction(1, 15)


def test_det_nonsquare_rejected():
    with pytest.raises(ShapeError):
        xn.det(mat([[1, 2, 3], [4, 5, 6]]))


def test_rank_examples():
    assert xn.rank(mat([[1, 2], [2, 4]])) == 1
    assert xn.rank(mat([[1, 0], [0, 1]])) == 2
    assert xn.rank(mat([[0, 0], [0, 0]])) == 0
    assert xn.rank(mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 2


def test_rank_of_zero_width():
    assert xn.int_rank([]) == 0


def test_vandermonde_values():
    assert xn.vandermonde([0, 1, 2]) == 2
    assert xn.vandermonde([-1, 0, 1]) == 2
    assert xn.vandermonde([1, 2, 3, 4]) == 12
    assert xn.vandermonde([5]) == 1
    assert xn.vandermonde([]) == 1


def test_vandermonde_increasing_positive():
    assert xn.vandermonde([Fraction(-7, 2), -1, Fraction(1, 3), 4]) > 0


def test_matrix_shape_validation():
    with pytest.raises(ShapeError):
        xn.RatMatrix(2, 2, (Fraction(1),))
    with pytest.raises(ShapeError):
        xn.RatMatrix.from_rows([[1, 2], [3]])


def test_transpose_roundtrip():
    m = mat([[1, 2, 3], [4, 5, 6]])
    assert m.transpose().transpose() == m
    assert m.transpose().rows == 3


def test_parse_format_roundtrip():
    for text in ["3/4", "-7/5", "0/1", "12/1"]:
        x = xn.parse_rational(text)
        assert xn.parse_rational(xn.format_rational(x)) == x
    assert xn.parse_rational("5") == 5


rational_entries = st.fractions(
    min_value=-9, max_value=9, max_denominator=7
)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(rational_entries, min_size=n, max_size=n), min_size=n, max_size=n
    )
))
def test_det_matches_cofactor_expansion(rows):
    assert xn.det(mat(rows)) == cofactor_det(rows)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(1, 5),
    st.data(),
)
def test_rank_matches_gauss(m, n, data):
    rows = data.draw(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    assert xn.rank(mat(rows)) == gauss_rank(rows)


@settings(max_examples=40, deadline=None)
@given(st.lists(rational_entries, min_size=0, max_size=6))
def test_vandermonde_matches_matrix_det(ts):
    rows = [[Fraction(t) ** k for k in range(len(ts))] for t in ts]
    assert xn.vandermonde(ts) == cofactor_det(rows) if ts else True
    if ts:
        assert xn.vandermonde(ts) == xn.det(mat(rows))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.data())
def test_det_sign_flips_on_row_swap(n, data):
    rows = data.draw(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
    swapped = [rows[1], rows[0]] + rows[2:]
    assert xn.det(mat(swapped)) == -xn.det(mat(rows))
    assert xn.rank(mat(swapped)) == xn.rank(mat(rows))
