import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimers.errors import InexactDivision
from dimers.linalg import GaussianInt, GaussianMatrix, add, det_exact, exact_div, mul, sub

from conftest import cofactor_det

gauss = st.builds(GaussianInt, st.integers(-5, 5), st.integers(-5, 5))


def matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(gauss, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_arithmetic_examples():
    assert mul(GaussianInt(1, 1), GaussianInt(1, -1)) == GaussianInt(2, 0)
    assert exact_div(GaussianInt(2, 0), GaussianInt(1, 1)) == GaussianInt(1, -1)
    a = GaussianInt(3, -7)
    assert add(a, 0) == a
    assert sub(a, a) == 0


def test_inexact_division():
    with pytest.raises(InexactDivision):
        exact_div(GaussianInt(1, 0), GaussianInt(2, 0))
    with pytest.raises(ZeroDivisionError):
        exact_div(GaussianInt(1, 0), 0)


@given(gauss, gauss, gauss)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + b - b == a


@given(gauss, gauss)
def test_exact_div_inverts_mul(a, b):
    if b:
        assert (a * b).exact_div(b) == a


def test_det_examples():
    assert det_exact(GaussianMatrix.identity(7)) == GaussianInt(1)
    assert det_exact(GaussianMatrix(((0, 1j), (1j, 0)))) == GaussianInt(1)
    assert det_exact(GaussianMatrix.zeros(3)) == 0


def test_det_needs_row_swap():
    m = GaussianMatrix(((0, 0, 1), (0, 1, 0), (1, 0, 0)))
    assert det_exact(m) == -1


@settings(max_examples=200)
@given(matrices())
def test_det_matches_cofactor_expansion(rows):
    m = GaussianMatrix(tuple(map(tuple, rows)))
    assert det_exact(m) == cofactor_det([list(r) for r in m.entries])


@settings(max_examples=100)
@given(matrices())
def test_det_transpose_and_swap(rows):
    m = GaussianMatrix(tuple(map(tuple, rows)))
    d = det_exact(m)
    assert det_exact(m.transpose()) == d
    if m.dim > 1:
        assert det_exact(m.swap_rows(0, m.dim - 1)) == -d


@settings(max_examples=100)
@given(st.integers(2, 5).flatmap(lambda n: st.lists(st.lists(gauss, min_size=n, max_size=n), min_size=n - 1, max_size=n - 1)))
def test_repeated_row_is_singular(rows):
    rows = [rows[0]] + rows  # first row duplicated
    assert det_exact(GaussianMatrix(tuple(map(tuple, rows)))) == 0
