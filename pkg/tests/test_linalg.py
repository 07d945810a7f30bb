#!/usr/bin/env python

import random
from fractions import Fraction

import pytest
from sympy import ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from zonostrat.algebra.linalg import (
    fraction_rows,
    hermite_normal_form,
    image_saturation_lattice,
    int_matrix,
    integer_kernel,
    integer_right_inverse,
    invariant_factors,
    matrix_rows,
    phi_preimage_lattice,
    rank,
    reduce_by_hnf,
    saturation_cokernel,
    smith_normal_form,
    solve_integer,
)
from zonostrat.errors import DimensionMismatch, NoSolution

HIRZEBRUCH2 = [[1, 0], [0, 1], [-1, 2], [0, -1]]


def _random_matrix(generator: random.Random):
    rows = generator.randint(1, 4)
    cols = generator.randint(1, 4)
    return int_matrix(
        [[generator.randint(-4, 4) for _ in range(cols)] for _ in range(rows)], cols
    )


def test_int_matrix_rejects_ragged_rows():
    with pytest.raises(DimensionMismatch):
        int_matrix([[1, 2], [3]])

    with pytest.raises(DimensionMismatch):
        int_matrix([])

    assert int_matrix([], 3).shape == (0, 3)


@pytest.mark.parametrize(
    "rows, factors",
    [
        ([[2, 4], [1, 3]], (1, 2)),
        ([[4, 0], [0, 6]], (2, 12)),
        ([[2]], (2,)),
        ([[0, 0], [0, 0]], ()),
        ([[1, 1], [1, -1]], (1, 2)),
    ],
)
def test_invariant_factors_examples(rows, factors):
    assert invariant_factors(int_matrix(rows)) == factors


def test_smith_normal_form_is_a_factorization():
    generator = random.Random(7)
    for _ in range(50):
        M = _random_matrix(generator)
        D, U, V = smith_normal_form(M)

        assert U * M * V == D
        assert abs(U.det()) == 1
        assert abs(V.det()) == 1

        diagonal = [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]
        assert all(d > 0 for d in diagonal)
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))
        assert sum(1 for value in D if value != 0) == len(diagonal)


def test_invariant_factors_agree_with_sympy():
    generator = random.Random(11)
    for _ in range(50):
        M = _random_matrix(generator)
        reference = [
            abs(int(value)) for value in sympy_invariant_factors(M, domain=ZZ) if value != 0
        ]

        assert list(invariant_factors(M)) == reference


def test_hermite_normal_form_shape():
    generator = random.Random(3)
    for _ in range(50):
        M = _random_matrix(generator)
        H, U = hermite_normal_form(M)

        assert U * M == H
        assert abs(U.det()) == 1

        previous_pivot = -1
        for row in matrix_rows(H):
            pivot = next((j for j, value in enumerate(row) if value != 0), None)
            if pivot is None:
                continue
            assert pivot > previous_pivot
            assert row[pivot] > 0
            previous_pivot = pivot

        assert rank(H) == rank(M)


def test_rank_of_empty_and_rational_matrices():
    assert rank(int_matrix([], 2)) == 0
    assert rank(int_matrix(HIRZEBRUCH2)) == 2
    assert rank(int_matrix([[1, 2], [2, 4]])) == 1


def test_saturation_cokernel_of_hirzebruch_surface():
    V = int_matrix(HIRZEBRUCH2)
    P = saturation_cokernel(V)

    assert matrix_rows(P) == [[1, 0, 1, 2], [0, 1, 0, 1]]
    assert P * V == int_matrix([[0, 0], [0, 0]])
    assert invariant_factors(P) == (1, 1)


def test_saturation_cokernel_kernel_is_the_column_space():
    generator = random.Random(5)
    for _ in range(50):
        V = _random_matrix(generator)
        P = saturation_cokernel(V)
        r = rank(V)

        assert P.shape == (V.rows - r, V.rows)
        assert all(value == 0 for value in P * V)
        assert rank(P) == V.rows - r
        assert all(d == 1 for d in invariant_factors(P))


def test_saturation_cokernel_of_full_rank_square_matrix_is_empty():
    P = saturation_cokernel(int_matrix([[2]]))

    assert P.shape == (0, 1)


@pytest.mark.parametrize(
    "rows, rhs",
    [
        ([[1, 0, 1, 2], [0, 1, 0, 1]], (3, 1)),
        ([[2, 4], [1, 3]], (2, 1)),
        ([[1, -1]], (5,)),
    ],
)
def test_solve_integer(rows, rhs):
    M = int_matrix(rows)
    x = solve_integer(M, rhs)

    assert all(isinstance(value, int) for value in x)
    assert tuple(int(value) for value in M * int_matrix([[value] for value in x])) == rhs


def test_solve_integer_against_another_presentation():
    assert solve_integer(int_matrix([[1, -2, 1, 0], [0, 1, 0, 1]]), (1, 0)) == (1, 0, 0, 0)


def test_solve_integer_with_an_empty_matrix():
    assert solve_integer(int_matrix([], 3), ()) == (0, 0, 0)
    assert integer_right_inverse(int_matrix([], 3)).shape == (3, 0)


def test_solve_integer_without_solution():
    with pytest.raises(NoSolution):
        solve_integer(int_matrix([[2]]), (1,))

    with pytest.raises(NoSolution):
        solve_integer(int_matrix([[1], [1]]), (1, 2))

    with pytest.raises(DimensionMismatch):
        solve_integer(int_matrix([[1, 0]]), (1, 2))


def test_integer_right_inverse():
    P = int_matrix([[1, 0, 1, 2], [0, 1, 0, 1]])
    S = integer_right_inverse(P)

    assert P * S == int_matrix([[1, 0], [0, 1]])

    with pytest.raises(NoSolution):
        integer_right_inverse(int_matrix([[2, 4]]))


def test_integer_kernel():
    kernel = integer_kernel(int_matrix([[1, 1]]))
    assert matrix_rows(kernel) == [[1, -1]]

    kernel = integer_kernel(int_matrix([[1, 0], [0, 1], [1, 1]]).T)
    assert matrix_rows(kernel) == [[1, 1, -1]]

    assert integer_kernel(int_matrix([[1, 0], [0, 1]])).shape == (0, 2)


def test_reduce_by_hnf_picks_coset_representatives():
    basis = image_saturation_lattice(int_matrix(HIRZEBRUCH2))

    assert reduce_by_hnf(basis, (1, 0, -1, 0)) == (0, 0, 0, 0)
    assert reduce_by_hnf(basis, (0, 0, 0, 0)) == (0, 0, 0, 0)
    assert reduce_by_hnf(basis, (1, 0, 0, 0)) == (0, 0, 1, 0)
    assert reduce_by_hnf(basis, (2, 1, 0, 0)) == reduce_by_hnf(basis, (3, 2, 1, -1))


def test_phi_preimage_lattice_examples():
    lattice = phi_preimage_lattice(int_matrix([[2]]))
    assert fraction_rows(lattice.lattice) == [[Fraction(1, 2)]]
    assert lattice.factors == (2,)
    assert not lattice.is_integral

    lattice = phi_preimage_lattice(int_matrix([[1, 1], [1, -1]]))
    assert fraction_rows(lattice.lattice) == [
        [Fraction(1, 2), Fraction(1, 2)],
        [Fraction(0), Fraction(1)],
    ]
    assert not lattice.is_integral

    lattice = phi_preimage_lattice(int_matrix([[1, 0]]))
    assert matrix_rows(lattice.kernel) == [[0, 1]]
    assert fraction_rows(lattice.lattice) == [[Fraction(1), Fraction(0)]]
    assert not lattice.is_integral

    lattice = phi_preimage_lattice(int_matrix(HIRZEBRUCH2))
    assert lattice.is_integral
    assert fraction_rows(lattice.lattice) == [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
    ]


def test_image_saturation_lattice_examples():
    assert matrix_rows(image_saturation_lattice(int_matrix(HIRZEBRUCH2))) == [
        [1, 0, -1, 0],
        [0, 1, 2, -1],
    ]
    assert matrix_rows(image_saturation_lattice(int_matrix([[2]]))) == [[1]]
    assert matrix_rows(image_saturation_lattice(int_matrix([[1], [-1]]))) == [[1, -1]]
    assert image_saturation_lattice(int_matrix([[0], [0]])).shape == (0, 2)
