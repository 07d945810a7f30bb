#!/usr/bin/env python

"""
zonostrat.geometry.zonotope
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Components for building an instance from a vector list and enumerating the
lattice points of its closed and half-open zonotopes.

"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar

from sympy import ImmutableMatrix

from zonostrat.algebra.linalg import (
    IntMatrix,
    IntVector,
    PreimageLattice,
    apply_rows,
    image_saturation_lattice,
    int_matrix,
    integer_kernel,
    integer_right_inverse,
    invariant_factors,
    matrix_rows,
    phi_preimage_lattice,
    rank,
    rows_rank,
    saturation_cokernel,
    solve_integer,
    transpose_rows,
)
from zonostrat.algebra.polyhedra import (
    HalfOpenPolyhedron,
    LinearConstraint,
    implicit_equalities,
    is_feasible,
)
from zonostrat.errors import (
    DimensionMismatch,
    EmptyFiber,
    EmptySystem,
    NoSolution,
    NotInImageLattice,
)

_Item = TypeVar("_Item")
_Result = TypeVar("_Result")


def parallel_map(
    function: Callable[[_Item], _Result], items: Iterable[_Item], workers: int = 1
) -> List[_Result]:
    """
    Applies a function to every item, in worker threads when `workers` > 1.

    The result list always follows the order of `items`.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


@dataclass(frozen=True)
class Instance:
    """Class describing a vector list A together with its derived lattices and maps."""

    vectors: Tuple[IntVector, ...]
    """The ordered vectors v_1, ..., v_k of Z^n."""

    ambient_dim: int
    """The dimension n of the ambient lattice."""

    matrix: IntMatrix
    """The k×n matrix V of φ, one row per vector."""

    rank: int
    """The rank r of V."""

    cokernel: IntMatrix
    """The (k−r)×k presentation P of π in Hermite normal form."""

    image_lattice: IntMatrix
    """The basis of L = im(φ)_R ∩ Z^k, one vector per row."""

    preimage_lattice: PreimageLattice
    """The translation lattice φ^{-1}(Z^k)."""

    cokernel_rows: Tuple[IntVector, ...]
    """The rows of P as integer tuples."""

    name: str = ""
    """The optional name of the instance."""

    @property
    def k(self) -> int:
        """The number of vectors."""
        return len(self.vectors)

    @property
    def n(self) -> int:
        """The ambient dimension."""
        return self.ambient_dim

    @property
    def codim(self) -> int:
        """The dimension k − r of the cokernel."""
        return self.k - self.rank

    def generator(self, j: int) -> IntVector:
        """Returns π(e_j), the j-th column of P."""
        return tuple(row[j] for row in self.cokernel_rows)


@dataclass(frozen=True)
class ZonotopePoint:
    """Class describing a lattice point of the closed zonotope."""

    p: IntVector
    """The coordinates in the basis of π(Z^k) given by P."""

    preimage_m: IntVector
    """An integer vector m with P·m = p."""

    in_half_open: bool
    """True when the point lies in the half-open zonotope Z."""


@dataclass(frozen=True)
class ZonotopeFace:
    """Class describing the minimal face of Z containing a lattice point."""

    zero_set: FrozenSet[int]
    """The 0-based indices j with x_j = 0 on the whole cube fiber."""

    dim: int
    """The dimension of the face."""


def _assemble(vectors: Sequence[Sequence[int]], ambient_dim: int, name: str = "") -> Instance:
    vectors = tuple(tuple(int(value) for value in vector) for vector in vectors)
    matrix = int_matrix(vectors, ambient_dim)
    cokernel = saturation_cokernel(matrix)
    r = rank(matrix)

    logging.debug(
        "Built instance '%s' with k=%d, n=%d, r=%d.", name, len(vectors), ambient_dim, r
    )

    return Instance(
        vectors=vectors,
        ambient_dim=ambient_dim,
        matrix=matrix,
        rank=r,
        cokernel=cokernel,
        image_lattice=image_saturation_lattice(matrix),
        preimage_lattice=phi_preimage_lattice(matrix),
        cokernel_rows=tuple(tuple(row) for row in matrix_rows(cokernel)),
        name=name,
    )


def build_instance(vectors: Sequence[Sequence[int]], name: str = "") -> Instance:
    """
    Builds an instance from an ordered list of integer vectors.

    Parameters:
        `vectors` (list): vectors v_1, ..., v_k of the same dimension n
        `name` (str): optional name used in logs and reports

    Returns:
        Instance: created instance

    Raises:
        DimensionMismatch: vectors of different dimensions or an empty list
    """
    if not vectors:
        raise DimensionMismatch("At least one vector is required!")

    ambient_dim = len(vectors[0])
    if any(len(vector) != ambient_dim for vector in vectors):
        raise DimensionMismatch("All vectors must have the same dimension!")

    instance = _assemble(vectors, ambient_dim, name)
    if instance.rank == ambient_dim and not instance.preimage_lattice.is_integral:
        logging.warning(
            "Preimage lattice of '%s' differs from Z^%d, invariant factors: %s.",
            name,
            ambient_dim,
            instance.preimage_lattice.factors,
        )

    return instance


def build_restricted_instance(vectors: Sequence[Sequence[int]], ambient_dim: int) -> Instance:
    """Builds an instance which may have no vectors at all, as restrictions to vertices do."""
    if any(len(vector) != ambient_dim for vector in vectors):
        raise DimensionMismatch("All vectors must have the same dimension!")

    return _assemble(vectors, ambient_dim)


@dataclass(frozen=True)
class ZonotopeRealization:
    """Class describing an instance realizing a given Minkowski sum of segments."""

    instance: Instance
    """The instance whose closed zonotope is identified with the Minkowski sum."""

    identification: IntMatrix
    """The m×(k−r) matrix T sending the P-coordinates of π(e_j) to w_j."""

    saturated: bool
    """False when the w_j generate a lattice coarser than Z^m ∩ span(w_j)."""


def from_zonotope_generators(generators: Sequence[Sequence[int]]) -> ZonotopeRealization:
    """
    Realizes the Minkowski sum of segments [0, w_j] as the zonotope of an instance.

    The vectors v_j are the rows of the matrix whose columns form an integer
    basis of the kernel of e_j ↦ w_j.

    Parameters:
        `generators` (list): vectors w_1, ..., w_k of Z^m

    Returns:
        ZonotopeRealization: instance, identification map and lattice flag
    """
    if not generators:
        raise DimensionMismatch("At least one generator is required!")

    m = len(generators[0])
    if any(len(w) != m for w in generators):
        raise DimensionMismatch("All generators must have the same dimension!")

    k = len(generators)
    generator_matrix = int_matrix(transpose_rows(generators, m), k)

    kernel_rows = matrix_rows(integer_kernel(generator_matrix))
    vectors = transpose_rows(kernel_rows, k)
    instance = _assemble(vectors, len(kernel_rows))

    right_inverse = integer_right_inverse(instance.cokernel)
    identification = ImmutableMatrix(generator_matrix * right_inverse)

    saturated = all(d == 1 for d in invariant_factors(generator_matrix))
    if not saturated:
        logging.warning(
            "Generators span a non-saturated lattice, the identification preserves "
            "π(Z^k) only."
        )

    return ZonotopeRealization(
        instance=instance, identification=identification, saturated=saturated
    )


def change_of_basis(instance: Instance, pi_rows: Sequence[Sequence[int]]) -> IntMatrix:
    """
    Finds the unimodular T with Q = T·P for another presentation Q of π.

    Parameters:
        `instance` (Instance): instance
        `pi_rows` (list): the (k−r)×k matrix Q

    Returns:
        IntMatrix: matrix T converting P-coordinates into Q-coordinates

    Raises:
        NotInImageLattice: Q does not present the same cokernel lattice
    """
    if len(pi_rows) != instance.codim or any(len(row) != instance.k for row in pi_rows):
        raise DimensionMismatch(
            f"Explicit π must be a {instance.codim}×{instance.k} matrix!"
        )

    pi_matrix = int_matrix(pi_rows, instance.k)
    if any(pi_matrix * instance.matrix):
        raise NotInImageLattice("Explicit π does not annihilate the vectors!")

    transform = ImmutableMatrix(pi_matrix * integer_right_inverse(instance.cokernel))
    if transform * instance.cokernel != pi_matrix or abs(transform.det()) != 1:
        raise NotInImageLattice("Explicit π is not unimodularly equivalent to P!")

    return transform


def phi_fiber(instance: Instance, m: Sequence[int], closed: bool = False) -> HalfOpenPolyhedron:
    """
    Builds the Φ-fiber {y ∈ R^n : m_j − 1 < ⟨y, v_j⟩ ≤ m_j}.

    Constraint j < k is the upper bound for v_j, constraint k + j its lower bound.
    With `closed`, the lower bounds are non-strict.
    """
    upper = [LinearConstraint.at_most(v, m_j) for v, m_j in zip(instance.vectors, m)]
    if closed:
        lower = [
            LinearConstraint.at_least(v, m_j - 1) for v, m_j in zip(instance.vectors, m)
        ]
    else:
        lower = [
            LinearConstraint.greater_than(v, m_j - 1)
            for v, m_j in zip(instance.vectors, m)
        ]

    return HalfOpenPolyhedron(instance.n, tuple(upper + lower))


def cube_fiber(instance: Instance, p: Sequence[int], closed: bool = False, open_cube: bool = False) -> HalfOpenPolyhedron:
    """
    Builds the cube fiber {x ∈ [0,1)^k : P·x = p}.

    Constraint j < k is x_j >= 0, constraint k + j is x_j < 1 and the equalities
    follow. With `closed` the cube is [0,1]^k, with `open_cube` it is (0,1)^k.
    """
    k = instance.k
    units = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]

    if open_cube:
        lower = [LinearConstraint.greater_than(unit, 0) for unit in units]
    else:
        lower = [LinearConstraint.at_least(unit, 0) for unit in units]

    if closed:
        upper = [LinearConstraint.at_most(unit, 1) for unit in units]
    else:
        upper = [LinearConstraint.less_than(unit, 1) for unit in units]

    equalities = [
        LinearConstraint.equal(row, value) for row, value in zip(instance.cokernel_rows, p)
    ]

    return HalfOpenPolyhedron(k, tuple(lower + upper + equalities))


def _check_point(instance: Instance, p: Sequence[int]) -> None:
    if len(p) != instance.codim:
        raise DimensionMismatch(
            f"Lattice point must have {instance.codim} coordinates!"
        )


def preimage(instance: Instance, p: Sequence[int]) -> IntVector:
    """
    Finds an integer m with P·m = p.

    Raises:
        NotInImageLattice: p is outside π(Z^k)
    """
    _check_point(instance, p)
    try:
        return solve_integer(instance.cokernel, p)
    except NoSolution as exception:
        raise NotInImageLattice("Point is outside the lattice π(Z^k)!") from exception


def _bounding_box(instance: Instance) -> List[range]:
    return [
        range(sum(min(0, a) for a in row), sum(max(0, a) for a in row) + 1)
        for row in instance.cokernel_rows
    ]


def half_open_membership(instance: Instance, p: Sequence[int]) -> bool:
    """
    Decides whether a lattice point lies in the half-open zonotope Z.

    p lies in Z iff the Φ-fiber of any integer preimage m of p is nonempty.

    Raises:
        NotInImageLattice: p is outside π(Z^k)
    """
    m = preimage(instance, p)
    return bool(is_feasible(phi_fiber(instance, m)))


def closed_lattice_points(instance: Instance, workers: int = 1) -> List[ZonotopePoint]:
    """
    Enumerates the lattice points of the closed zonotope.

    Candidates are scanned over the bounding box of the generators and kept
    when the closed cube fiber is feasible.

    Parameters:
        `instance` (Instance): instance
        `workers` (int): number of worker threads

    Returns:
        list: points sorted lexicographically
    """

    def evaluate(p: IntVector) -> Optional[ZonotopePoint]:
        if not is_feasible(cube_fiber(instance, p, closed=True)):
            return None

        m = solve_integer(instance.cokernel, p)
        return ZonotopePoint(
            p=p,
            preimage_m=m,
            in_half_open=bool(is_feasible(phi_fiber(instance, m))),
        )

    candidates = [tuple(p) for p in itertools.product(*_bounding_box(instance))]
    points = [
        point for point in parallel_map(evaluate, candidates, workers) if point is not None
    ]
    points.sort(key=lambda point: point.p)

    logging.debug(
        "Found %d closed lattice points among %d candidates.", len(points), len(candidates)
    )

    return points


def half_open_lattice_points(instance: Instance, workers: int = 1) -> List[ZonotopePoint]:
    """Enumerates the lattice points of the half-open zonotope Z, sorted lexicographically."""
    return [
        point for point in closed_lattice_points(instance, workers) if point.in_half_open
    ]


def interior_lattice_points(instance: Instance, workers: int = 1) -> List[ZonotopePoint]:
    """Enumerates the lattice points whose cube fiber meets the open cube (0,1)^k."""
    return [
        point
        for point in closed_lattice_points(instance, workers)
        if is_feasible(cube_fiber(instance, point.p, open_cube=True))
    ]


def stanley_count(instance: Instance) -> int:
    """
    Counts the lattice points of the closed zonotope with Stanley's formula.

    The count is the sum, over linearly independent subsets of the generators
    π(e_j), of the gcd of the maximal minors of the subset, which equals the
    product of its invariant factors. The empty subset contributes 1.
    """
    generators = [instance.generator(j) for j in range(instance.k)]
    height = instance.codim

    def contribution(subset: Tuple[int, ...]) -> Optional[int]:
        if not subset:
            return 1

        columns = [generators[j] for j in subset]
        factors = invariant_factors(int_matrix(transpose_rows(columns, height), len(subset)))
        if len(factors) < len(subset):
            return None

        return math.prod(factors)

    total = 0
    stack: List[Tuple[int, ...]] = [()]
    while stack:
        subset = stack.pop()
        value = contribution(subset)
        if value is None:
            continue

        total += value
        if len(subset) < height:
            start = subset[-1] + 1 if subset else 0
            stack.extend(subset + (j,) for j in range(start, instance.k))

    return total


def fiber_j_set(instance: Instance, p: Sequence[int]) -> FrozenSet[int]:
    """
    Computes the indices j with x_j = 0 on the whole cube fiber of p.

    Raises:
        EmptyFiber: p is not in the half-open zonotope
    """
    _check_point(instance, p)
    try:
        return implicit_equalities(cube_fiber(instance, p), candidates=range(instance.k))
    except EmptySystem as exception:
        raise EmptyFiber("Point is not in the half-open zonotope!") from exception


def face_dimension(instance: Instance, zero_set: Iterable[int]) -> int:
    """Returns the rank of the generators π(e_j) with j outside `zero_set`."""
    excluded = set(zero_set)
    columns = [instance.generator(j) for j in range(instance.k) if j not in excluded]

    return rows_rank(columns, instance.codim)


def minimal_face(instance: Instance, p: Sequence[int]) -> ZonotopeFace:
    """
    Computes the minimal face of Z containing a lattice point.

    Raises:
        EmptyFiber: p is not in the half-open zonotope
    """
    zero_set = fiber_j_set(instance, p)
    return ZonotopeFace(zero_set=zero_set, dim=face_dimension(instance, zero_set))


def to_basis(transform: Optional[IntMatrix], p: Sequence[int]) -> IntVector:
    """Converts P-coordinates into the coordinates of another presentation."""
    if transform is None:
        return tuple(p)

    return apply_rows(matrix_rows(transform), p)
