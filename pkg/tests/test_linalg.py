from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from ksrgroups import linalg as L

small = st.integers(-6, 6)
square3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def test_fraction_parsing_and_format():
    assert L.to_fraction("-3/6") == Fraction(-1, 2)
    assert L.fmt_fraction(Fraction(4, 2)) == "2"
    assert L.frac_mod1(Fraction(-1, 3)) == Fraction(2, 3)


def test_solve_and_inverse():
    a = [[1, 1], [1, -1]]
    assert L.solve(a, [2, 0]) == [1, 1]
    assert L.matmul(a, L.inverse(a)) == L.identity(2)
    assert L.solve([[1, 1], [2, 2]], [1, 3]) is None


def test_smith_known():
    diag, u, v = L.smith([[2, 4], [6, 8]])
    assert diag == [2, 4]
    assert L.matmul(L.matmul(u, [[2, 4], [6, 8]]), v) == [[2, 0], [0, 4]]


@given(square3)
def test_smith_factorisation(a):
    diag, u, v = L.smith(a)
    d = L.matmul(L.matmul(u, a), v)
    for i in range(3):
        for j in range(3):
            assert d[i][j] == (diag[i] if i == j and i < len(diag) else 0)
    nz = [x for x in diag if x]
    assert all(b % c == 0 for c, b in zip(nz, nz[1:]))
    assert abs(L.determinant(u)) == 1 and abs(L.determinant(v)) == 1


@given(square3)
def test_hermite_preserves_lattice(a):
    h = L.hermite_rows(a)
    for row in a:
        assert L.in_lattice(h, row)
    for row in h:
        assert L.in_lattice(a, row) or L.rank(a) < 3
