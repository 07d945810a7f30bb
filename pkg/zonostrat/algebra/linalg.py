#!/usr/bin/env python

"""
zonostrat.algebra.linalg
~~~~~~~~~~~~~~~~~~~~~~~~

Exact integer and rational matrix algebra: normal forms, ranks, saturations
and integer linear solves.

Matrices are exchanged as `sympy.ImmutableMatrix` objects. The normal form
algorithms run on plain lists of Python integers and convert at the boundary.

"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy import ImmutableMatrix, Integer, Matrix, Rational

from zonostrat.errors import DimensionMismatch, NoSolution

IntMatrix = ImmutableMatrix
RatMatrix = ImmutableMatrix
IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]
Rows = List[List[int]]


def int_matrix(rows: Sequence[Sequence[int]], cols: int = -1) -> IntMatrix:
    """
    Builds an integer matrix from a list of rows.

    Parameters:
        `rows` (list): rows of the matrix
        `cols` (int): column count, required when `rows` is empty

    Returns:
        IntMatrix: created matrix
    """
    if cols < 0:
        if not rows:
            raise DimensionMismatch("Column count is required for an empty matrix!")
        cols = len(rows[0])

    entries: list = []
    for row in rows:
        if len(row) != cols:
            raise DimensionMismatch("All matrix rows must have the same length!")
        entries.extend(Integer(int(value)) for value in row)

    return ImmutableMatrix(len(rows), cols, entries)


def rat_matrix(rows: Sequence[Sequence[Fraction]], cols: int = -1) -> RatMatrix:
    """
    Builds a rational matrix from a list of rows of fractions.

    Parameters:
        `rows` (list): rows of the matrix
        `cols` (int): column count, required when `rows` is empty

    Returns:
        RatMatrix: created matrix
    """
    if cols < 0:
        if not rows:
            raise DimensionMismatch("Column count is required for an empty matrix!")
        cols = len(rows[0])

    entries: list = []
    for row in rows:
        if len(row) != cols:
            raise DimensionMismatch("All matrix rows must have the same length!")
        for value in row:
            value = Fraction(value)
            entries.append(Rational(value.numerator, value.denominator))

    return ImmutableMatrix(len(rows), cols, entries)


def matrix_rows(matrix: IntMatrix) -> Rows:
    """Returns the entries of an integer matrix as lists of Python integers."""
    return [[int(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def fraction_rows(matrix: RatMatrix) -> List[List[Fraction]]:
    """Returns the entries of a rational matrix as lists of fractions."""
    rows = []
    for i in range(matrix.rows):
        row = []
        for j in range(matrix.cols):
            value = Rational(matrix[i, j])
            row.append(Fraction(int(value.p), int(value.q)))
        rows.append(row)

    return rows


def transpose_rows(rows: Sequence[Sequence[int]], cols: int) -> Rows:
    """Transposes a list of rows with `cols` columns."""
    return [[row[j] for row in rows] for j in range(cols)]


def apply_rows(rows: Sequence[Sequence], vector: Sequence) -> tuple:
    """Multiplies a matrix given by its rows with a column vector."""
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in rows)


def _identity(size: int) -> Rows:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _hnf_rows(rows: Sequence[Sequence[int]], cols: int) -> Tuple[Rows, Rows]:
    """Row-style Hermite normal form on lists, returning (H, U) with H = U·M."""
    H = [list(row) for row in rows]
    U = _identity(len(H))
    row_count = len(H)

    pivot_row = 0
    for col in range(cols):
        if pivot_row == row_count:
            break

        # Euclid on the column until a single nonzero entry remains at pivot_row.
        while True:
            nonzero = [i for i in range(pivot_row, row_count) if H[i][col] != 0]
            if not nonzero:
                break

            best = min(nonzero, key=lambda i: (abs(H[i][col]), i))
            H[pivot_row], H[best] = H[best], H[pivot_row]
            U[pivot_row], U[best] = U[best], U[pivot_row]

            reduced = True
            for i in range(pivot_row + 1, row_count):
                if H[i][col] == 0:
                    continue

                q = H[i][col] // H[pivot_row][col]
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
                if H[i][col] != 0:
                    reduced = False

            if reduced:
                break

        if H[pivot_row][col] == 0:
            continue

        if H[pivot_row][col] < 0:
            H[pivot_row] = [-a for a in H[pivot_row]]
            U[pivot_row] = [-a for a in U[pivot_row]]

        pivot = H[pivot_row][col]
        for i in range(pivot_row):
            q = H[i][col] // pivot
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]

        pivot_row += 1

    return H, U


@dataclass
class _SmithDecomposition:
    """Smith decomposition D = U·M·V together with the inverses of U and V."""

    D: Rows
    U: Rows
    U_inverse: Rows
    V: Rows
    V_inverse: Rows
    factors: List[int]
    """The nonzero diagonal entries of D in divisibility order."""


def _smith_rows(rows: Sequence[Sequence[int]], row_count: int, cols: int) -> _SmithDecomposition:
    D = [list(row) for row in rows]
    U, U_inverse = _identity(row_count), _identity(row_count)
    V, V_inverse = _identity(cols), _identity(cols)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inverse:
            row[i], row[j] = row[j], row[i]

    def add_row(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        D[i] = [a + q * b for a, b in zip(D[i], D[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for row in U_inverse:
            row[j] -= q * row[i]

    def negate_row(i: int) -> None:
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in U_inverse:
            row[i] = -row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inverse[i], V_inverse[j] = V_inverse[j], V_inverse[i]

    def add_col(i: int, j: int, q: int) -> None:
        # col_i += q * col_j
        for row in D:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]
        V_inverse[j] = [a - q * b for a, b in zip(V_inverse[j], V_inverse[i])]

    factors: List[int] = []
    for t in range(min(row_count, cols)):
        while True:
            candidates = [
                (abs(D[i][j]), i, j)
                for i in range(t, row_count)
                for j in range(t, cols)
                if D[i][j] != 0
            ]
            if not candidates:
                break

            _, i, j = min(candidates)
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)

            cleared = True
            for i in range(t + 1, row_count):
                q = D[i][t] // D[t][t]
                if q:
                    add_row(i, t, -q)
                if D[i][t] != 0:
                    cleared = False
            for j in range(t + 1, cols):
                q = D[t][j] // D[t][t]
                if q:
                    add_col(j, t, -q)
                if D[t][j] != 0:
                    cleared = False
            if not cleared:
                continue

            offending = next(
                (
                    i
                    for i in range(t + 1, row_count)
                    for j in range(t + 1, cols)
                    if D[i][j] % D[t][t] != 0
                ),
                None,
            )
            if offending is None:
                break
            add_row(t, offending, 1)

        if D[t][t] == 0:
            break

        if D[t][t] < 0:
            negate_row(t)
        factors.append(D[t][t])

    return _SmithDecomposition(
        D=D, U=U, U_inverse=U_inverse, V=V, V_inverse=V_inverse, factors=factors
    )


def hermite_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Computes the row-style Hermite normal form of an integer matrix.

    H is in row echelon form with positive pivots, every entry above a pivot
    lies in [0, pivot) and zero rows are at the bottom.

    Parameters:
        `matrix` (IntMatrix): matrix M

    Returns:
        tuple: (H, U) with U unimodular and H = U·M
    """
    H, U = _hnf_rows(matrix_rows(matrix), matrix.cols)
    return int_matrix(H, matrix.cols), int_matrix(U, matrix.rows)


def smith_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Computes the Smith normal form of an integer matrix.

    Parameters:
        `matrix` (IntMatrix): matrix M

    Returns:
        tuple: (D, U, V) with U, V unimodular and D = U·M·V diagonal with
        nonnegative entries d_1 | d_2 | ...
    """
    decomposition = _smith_rows(matrix_rows(matrix), matrix.rows, matrix.cols)
    return (
        int_matrix(decomposition.D, matrix.cols),
        int_matrix(decomposition.U, matrix.rows),
        int_matrix(decomposition.V, matrix.cols),
    )


def invariant_factors(matrix: IntMatrix) -> Tuple[int, ...]:
    """Returns the nonzero diagonal entries of the Smith normal form of a matrix."""
    return tuple(_smith_rows(matrix_rows(matrix), matrix.rows, matrix.cols).factors)


def rank(matrix: Matrix) -> int:
    """
    Computes the rank of an integer or rational matrix over the rationals.

    Parameters:
        `matrix` (Matrix): integer or rational matrix

    Returns:
        int: rank
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return 0

    return int(Matrix(matrix).rank())


def rows_rank(rows: Sequence[Sequence], cols: int) -> int:
    """Computes the rank of a list of integer or fractional rows."""
    if not rows or cols == 0:
        return 0

    return rank(rat_matrix(rows, cols))


def saturation_cokernel(vectors: IntMatrix) -> IntMatrix:
    """
    Computes an integral presentation P of the cokernel of the map given by V.

    Parameters:
        `vectors` (IntMatrix): k×n matrix V

    Returns:
        IntMatrix: (k−r)×k matrix P in Hermite normal form whose rational kernel is
        the column space of V and which maps Z^k onto Z^{k−r}
    """
    k = vectors.rows
    decomposition = _smith_rows(matrix_rows(vectors), k, vectors.cols)
    r = len(decomposition.factors)

    cokernel_rows = decomposition.U[r:]
    H, _ = _hnf_rows(cokernel_rows, k)

    return int_matrix(H, k)


def solve_integer(matrix: IntMatrix, rhs: Sequence[int]) -> IntVector:
    """
    Finds an integer solution x of M·x = b.

    Parameters:
        `matrix` (IntMatrix): matrix M
        `rhs` (list): integer vector b

    Returns:
        tuple: integer vector x with M·x = b

    Raises:
        NoSolution: b is not in the image lattice of M
    """
    if len(rhs) != matrix.rows:
        raise DimensionMismatch("Right-hand side length does not match matrix rows!")

    # Row HNF of the transpose: H = U·M^T, hence M·U^T = H^T is column echelon.
    H, U = _hnf_rows(transpose_rows(matrix_rows(matrix), matrix.cols), matrix.rows)

    residual = [int(value) for value in rhs]
    z = [0] * matrix.cols
    for i, row in enumerate(H):
        pivot_col = next((j for j, value in enumerate(row) if value != 0), None)
        if pivot_col is None:
            break

        if residual[pivot_col] % row[pivot_col] != 0:
            raise NoSolution("Right-hand side is outside the image lattice!")

        z[i] = residual[pivot_col] // row[pivot_col]
        residual = [a - z[i] * b for a, b in zip(residual, row)]

    if any(residual):
        raise NoSolution("Right-hand side is outside the image lattice!")

    return tuple(
        sum(U[i][j] * z[i] for i in range(matrix.cols)) for j in range(matrix.cols)
    )


def integer_right_inverse(matrix: IntMatrix) -> IntMatrix:
    """
    Finds an integer matrix S with M·S = I for a matrix mapping onto Z^rows.

    Raises:
        NoSolution: M is not onto Z^rows
    """
    columns = []
    for i in range(matrix.rows):
        unit = [1 if j == i else 0 for j in range(matrix.rows)]
        columns.append(solve_integer(matrix, unit))

    return int_matrix(transpose_rows(columns, matrix.cols), matrix.rows)


def integer_kernel(matrix: IntMatrix) -> IntMatrix:
    """
    Computes a basis of the integer kernel {x ∈ Z^cols : M·x = 0}.

    Returns:
        IntMatrix: basis vectors as rows, in Hermite normal form
    """
    decomposition = _smith_rows(matrix_rows(matrix), matrix.rows, matrix.cols)
    r = len(decomposition.factors)

    basis = transpose_rows(decomposition.V, matrix.cols)[r:]
    H, _ = _hnf_rows(basis, matrix.cols)

    return int_matrix(H, matrix.cols)


def reduce_by_hnf(basis: IntMatrix, vector: Sequence[int]) -> IntVector:
    """
    Reduces a vector modulo the lattice spanned by the rows of an HNF basis.

    The result has every pivot coordinate in [0, pivot), which makes it the
    unique representative of the coset of `vector`.
    """
    reduced = [int(value) for value in vector]
    for row in matrix_rows(basis):
        pivot_col = next((j for j, value in enumerate(row) if value != 0), None)
        if pivot_col is None:
            continue

        q = reduced[pivot_col] // row[pivot_col]
        if q:
            reduced = [a - q * b for a, b in zip(reduced, row)]

    return tuple(reduced)


def _hnf_rational_rows(rows: Sequence[Sequence[Fraction]], cols: int) -> List[List[Fraction]]:
    denominators = [Fraction(value).denominator for row in rows for value in row]
    scale = math.lcm(*denominators) if denominators else 1

    scaled = [[int(Fraction(value) * scale) for value in row] for row in rows]
    H, _ = _hnf_rows(scaled, cols)

    return [[Fraction(value, scale) for value in row] for row in H if any(row)]


@dataclass(frozen=True)
class PreimageLattice:
    """Class describing the translation lattice φ^{-1}(Z^k) of a vector list."""

    kernel: IntMatrix
    """The integer basis of ker φ, one vector per row."""

    lattice: RatMatrix
    """The rational basis of Λ_0 with φ^{-1}(Z^k) = Λ_0 ⊕ ker φ, one vector per row."""

    factors: Tuple[int, ...]
    """The invariant factors of the matrix of φ."""

    @property
    def is_integral(self) -> bool:
        """True when φ^{-1}(Z^k) equals Z^n."""
        return self.kernel.rows == 0 and all(d == 1 for d in self.factors)


def phi_preimage_lattice(vectors: IntMatrix) -> PreimageLattice:
    """
    Computes a basis of Λ = φ^{-1}(Z^k) modulo ker φ.

    With D = U·V·W, the vector u = W·w has V·u integral iff d_i·w_i is
    integral for every nonzero invariant factor d_i, the remaining
    coordinates of w spanning ker φ.

    Parameters:
        `vectors` (IntMatrix): k×n matrix V

    Returns:
        PreimageLattice: kernel basis and lattice basis, rows in Hermite normal form
    """
    n = vectors.cols
    decomposition = _smith_rows(matrix_rows(vectors), vectors.rows, n)
    r = len(decomposition.factors)
    columns = transpose_rows(decomposition.V, n)

    lattice_rows = [
        [Fraction(value, d) for value in columns[i]]
        for i, d in enumerate(decomposition.factors)
    ]
    kernel_rows, _ = _hnf_rows(columns[r:], n)

    return PreimageLattice(
        kernel=int_matrix(kernel_rows, n),
        lattice=rat_matrix(_hnf_rational_rows(lattice_rows, n), n),
        factors=tuple(decomposition.factors),
    )


def image_saturation_lattice(vectors: IntMatrix) -> IntMatrix:
    """
    Computes an integer basis of the saturated lattice L = col-space(V)_R ∩ Z^k.

    With D = U·V·W, the column space of V is spanned by the first r columns
    of the unimodular matrix U^{-1}, which therefore span its saturation.

    Parameters:
        `vectors` (IntMatrix): k×n matrix V

    Returns:
        IntMatrix: basis of L as rows, in Hermite normal form
    """
    k = vectors.rows
    decomposition = _smith_rows(matrix_rows(vectors), k, vectors.cols)
    r = len(decomposition.factors)

    basis = transpose_rows(decomposition.U_inverse, k)[:r]
    H, _ = _hnf_rows(basis, k)

    return int_matrix(H[:r], k)
