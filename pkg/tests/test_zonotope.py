#!/usr/bin/env python

import pytest
from sympy import ImmutableMatrix

from tests.conftest import HIRZEBRUCH2_POINTS
from zonostrat.algebra.linalg import matrix_rows
from zonostrat.errors import DimensionMismatch, EmptyFiber, NotInImageLattice
from zonostrat.geometry.zonotope import (
    build_instance,
    build_restricted_instance,
    change_of_basis,
    closed_lattice_points,
    face_dimension,
    fiber_j_set,
    from_zonotope_generators,
    half_open_lattice_points,
    half_open_membership,
    interior_lattice_points,
    minimal_face,
    parallel_map,
    preimage,
    stanley_count,
    to_basis,
)

HIRZEBRUCH2_PI = [[1, -2, 1, 0], [0, 1, 0, 1]]


def test_build_instance_derives_lattices(hirzebruch2):
    assert hirzebruch2.k == 4
    assert hirzebruch2.n == 2
    assert hirzebruch2.rank == 2
    assert hirzebruch2.codim == 2
    assert hirzebruch2.cokernel_rows == ((1, 0, 1, 2), (0, 1, 0, 1))
    assert hirzebruch2.preimage_lattice.is_integral
    assert hirzebruch2.generator(3) == (2, 1)


@pytest.mark.parametrize("vectors", [[], [[1, 0], [1]], [[1], [1, 2]]])
def test_build_instance_rejects_malformed_lists(vectors):
    with pytest.raises(DimensionMismatch):
        build_instance(vectors)


def test_build_instance_accepts_degenerate_vectors():
    instance = build_instance([[0, 0], [1, 0], [1, 0]])

    assert instance.rank == 1
    assert instance.codim == 2


def test_restricted_instance_may_be_empty():
    instance = build_restricted_instance([], 0)

    assert instance.k == 0
    assert instance.codim == 0
    assert [point.p for point in half_open_lattice_points(instance)] == [()]


@pytest.mark.parametrize(
    "vectors, count",
    [
        ([[1], [-1]], 3),
        ([[1, 0], [0, 1], [-1, 2], [0, -1]], 11),
        ([[1]], 1),
        ([[2]], 1),
        ([[1, 0], [0, 1], [-1, 2], [0, -1], [-1, -1]], None),
    ],
)
def test_closed_points_match_stanley_formula(vectors, count):
    instance = build_instance(vectors)
    points = closed_lattice_points(instance)

    assert len(points) == stanley_count(instance)
    if count is not None:
        assert len(points) == count


def test_half_open_points_of_a_segment():
    instance = build_instance([[1], [-1]])

    assert [point.p for point in closed_lattice_points(instance)] == [(0,), (1,), (2,)]
    assert [point.p for point in half_open_lattice_points(instance)] == [(0,), (1,)]


def test_half_open_points_of_hirzebruch_surface(hirzebruch2):
    points = half_open_lattice_points(hirzebruch2)

    assert [point.p for point in points] == HIRZEBRUCH2_POINTS
    for point in points:
        assert half_open_membership(hirzebruch2, point.p)

    assert not half_open_membership(hirzebruch2, (2, 0))
    assert not half_open_membership(hirzebruch2, (4, 2))


def test_half_open_point_counts(blowup_hirzebruch2):
    assert len(half_open_lattice_points(blowup_hirzebruch2)) == 8
    assert len(half_open_lattice_points(build_instance([[1], [-1]]))) == 2


def test_enumeration_does_not_depend_on_workers(blowup_hirzebruch2):
    assert closed_lattice_points(blowup_hirzebruch2, workers=1) == closed_lattice_points(
        blowup_hirzebruch2, workers=4
    )


def test_interior_points_of_hirzebruch_surface(hirzebruch2):
    interior = [point.p for point in interior_lattice_points(hirzebruch2)]

    assert interior == [(1, 1), (2, 1), (3, 1)]


def test_preimage(hirzebruch2):
    m = preimage(hirzebruch2, (3, 1))

    assert tuple(
        sum(a * b for a, b in zip(row, m)) for row in hirzebruch2.cokernel_rows
    ) == (3, 1)

    with pytest.raises(DimensionMismatch):
        preimage(hirzebruch2, (1,))


def test_fiber_j_sets_of_hirzebruch_surface(hirzebruch2):
    assert fiber_j_set(hirzebruch2, (0, 0)) == frozenset({0, 1, 2, 3})
    assert fiber_j_set(hirzebruch2, (1, 0)) == frozenset({1, 3})
    assert fiber_j_set(hirzebruch2, (2, 1)) == frozenset()

    with pytest.raises(EmptyFiber):
        fiber_j_set(hirzebruch2, (2, 0))


def test_minimal_faces_of_hirzebruch_surface(hirzebruch2):
    assert minimal_face(hirzebruch2, (0, 0)).dim == 0
    assert minimal_face(hirzebruch2, (1, 0)).dim == 1
    assert minimal_face(hirzebruch2, (3, 1)).dim == 2

    assert face_dimension(hirzebruch2, []) == 2
    assert face_dimension(hirzebruch2, [0, 1, 2, 3]) == 0


def test_zonotope_of_a_segment_with_multiplicity():
    realization = from_zonotope_generators([[1], [1]])

    assert realization.instance.vectors == ((1,), (-1,))
    assert realization.saturated


def test_zonotope_of_a_hexagon():
    realization = from_zonotope_generators([[1, 0], [0, 1], [1, 1]])
    instance = realization.instance

    assert instance.vectors == ((1,), (1,), (-1,))
    assert stanley_count(instance) == 7

    T = matrix_rows(realization.identification)
    generators = [[1, 0], [0, 1], [1, 1]]
    for j, w in enumerate(generators):
        image = [sum(a * b for a, b in zip(row, instance.generator(j))) for row in T]
        assert image == w


def test_zonotope_of_a_single_segment():
    realization = from_zonotope_generators([[1, 0]])
    instance = realization.instance

    assert instance.n == 0
    assert [point.p for point in closed_lattice_points(instance)] == [(0,), (1,)]
    assert [point.p for point in half_open_lattice_points(instance)] == [(0,)]


def test_non_saturated_generators_are_flagged():
    assert not from_zonotope_generators([[2]]).saturated


def test_change_of_basis(hirzebruch2):
    transform = change_of_basis(hirzebruch2, HIRZEBRUCH2_PI)

    assert transform == ImmutableMatrix([[1, -2], [0, 1]])
    assert to_basis(transform, (1, 0)) == (1, 0)
    assert to_basis(transform, (3, 1)) == (1, 1)
    assert to_basis(None, (3, 1)) == (3, 1)


def test_change_of_basis_rejects_other_lattices(hirzebruch2):
    with pytest.raises(NotInImageLattice):
        change_of_basis(hirzebruch2, [[1, 0, 0, 0], [0, 1, 0, 0]])

    with pytest.raises(NotInImageLattice):
        change_of_basis(hirzebruch2, [[2, -4, 2, 0], [0, 1, 0, 1]])

    with pytest.raises(DimensionMismatch):
        change_of_basis(hirzebruch2, [[1, -2, 1, 0]])


def test_parallel_map_keeps_order():
    items = list(range(20))

    assert parallel_map(lambda x: x * x, items, workers=4) == [x * x for x in items]
    assert parallel_map(lambda x: x, [], workers=4) == []
