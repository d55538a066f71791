from __future__ import annotations

from math import prod

import pytest
from sympy import Rational

from toric_deform.errors import DimensionMismatchError, InputError
from toric_deform.lattice import (
    LatticeMatrix,
    as_integer,
    as_vector,
    as_vectors,
    canonical_primitive,
    hermite_normal_form,
    integral_direction,
    kernel_basis,
    primitive,
    rational_solve,
    saturated_span_basis,
    smith_normal_form,
    solve_integral,
)


def _random_matrix(rng, rows: int, cols: int) -> LatticeMatrix:
    return LatticeMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)], cols)


def test_as_integer_accepts_decimal_strings():
    assert as_integer("12345678901234567890") == 12345678901234567890
    assert as_integer(3.0) == 3
    with pytest.raises(InputError):
        as_integer(True)
    with pytest.raises(InputError):
        as_integer(2.5)
    with pytest.raises(InputError):
        as_integer("dodici")


def test_as_vector_rejects_scalars_and_strings():
    assert as_vector(["1", 2, 3.0]) == (1, 2, 3)
    assert as_vectors([[1, 0], (0, 1)]) == [(1, 0), (0, 1)]
    for grezzo in (5, "12", {"x": 1}, None):
        with pytest.raises(InputError):
            as_vector(grezzo)
    for grezzo in ([1, 2], 7, "ab"):
        with pytest.raises(InputError):
            as_vectors(grezzo)


def test_primitive_helpers():
    assert primitive((4, -6)) == (2, -3)
    assert canonical_primitive((-2, 4)) == (1, -2)
    assert integral_direction([Rational(1, 2), Rational(1, 3)]) == (3, 2)
    with pytest.raises(InputError):
        primitive((0, 0))


def test_smith_identity():
    snf = smith_normal_form(LatticeMatrix.identity(2))
    assert snf.D == LatticeMatrix.identity(2)
    assert snf.U == LatticeMatrix.identity(2)
    assert snf.V == LatticeMatrix.identity(2)


def test_smith_small_example():
    snf = smith_normal_form(LatticeMatrix.from_rows([[2, 4], [2, 6]]))
    assert snf.diagonal == (2, 2)


def test_smith_flop_chart():
    a, b = 2, 3
    e = [(1, 0, 1, 0, 0), (0, 0, 1, 0, 0), (0, 1, 0, 1, 0), (0, 0, 0, 1, 0), (-a, -b, 0, 0, 1), (0, 0, 0, 0, 1)]
    M = LatticeMatrix.from_rows([e[1], e[3], e[5], e[2], e[4]])
    snf = smith_normal_form(M)
    assert snf.diagonal == (1, 1, 1, 1, 2)
    assert abs(M.determinant()) == a


def test_smith_empty_matrix_rejected():
    with pytest.raises(DimensionMismatchError):
        smith_normal_form(LatticeMatrix((), 0, 3))


def test_smith_random_properties(rng):
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = _random_matrix(rng, rows, cols)
        snf = smith_normal_form(A)
        assert snf.U @ A @ snf.V == snf.D
        assert snf.D.is_diagonal()
        assert abs(snf.U.determinant()) == 1
        assert abs(snf.V.determinant()) == 1
        diagonale = snf.diagonal
        assert all(d >= 0 for d in diagonale)
        nonnulli = [d for d in diagonale if d]
        assert list(diagonale[: len(nonnulli)]) == nonnulli
        assert all(q % p == 0 for p, q in zip(nonnulli, nonnulli[1:]))
        assert snf.rank == A.rank()
        if rows == cols:
            assert abs(A.determinant()) == prod(diagonale)


def test_solve_integral():
    assert solve_integral(LatticeMatrix.identity(2), (3, 5)) == (3, 5)
    assert solve_integral(LatticeMatrix.from_rows([(1, 0), (2, 3)]), (1, 1)) is None
    assert rational_solve(LatticeMatrix.from_rows([(1, 0), (2, 3)]), (1, 1)) == (1, Rational(-1, 3))


def test_solve_integral_random(rng):
    for _ in range(50):
        A = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = tuple(rng.randint(-5, 5) for _ in range(A.cols))
        soluzione = solve_integral(A, A.apply(x))
        assert soluzione is not None
        assert A.apply(soluzione) == A.apply(x)


def test_kernel_basis_of_sum_functional():
    A = LatticeMatrix.from_rows([(1, 1, 1)])
    base = kernel_basis(A)
    assert len(base) == 2
    assert all(A.apply(v) == (0,) for v in base)
    assert smith_normal_form(LatticeMatrix.from_rows(base)).invariant_factors == (1, 1)


def test_kernel_basis_random_is_saturated(rng):
    for _ in range(50):
        A = _random_matrix(rng, rng.randint(1, 3), rng.randint(2, 5))
        base = kernel_basis(A)
        assert len(base) == A.cols - A.rank()
        assert all(not any(A.apply(v)) for v in base)
        if base:
            assert set(smith_normal_form(LatticeMatrix.from_rows(base)).invariant_factors) == {1}


def test_hermite_normal_form():
    assert hermite_normal_form([(2, 0), (0, 2), (1, 1)]) == ((1, 1), (0, 2))
    assert hermite_normal_form([(0, 0, 0)]) == ()


def test_saturated_span_basis():
    assert saturated_span_basis([(2, 2, 0)], 3) == ((1, 1, 0),)
    assert len(saturated_span_basis([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)) == 3
