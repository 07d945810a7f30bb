#!/usr/bin/env python

import pytest

from zonostrat.errors import EmptyFiber, RankDeficient
from zonostrat.geometry.toric import (
    bondal_thomsen,
    class_group,
    effective_cone,
    minimal_eff_face,
    verify_corollary,
)
from zonostrat.geometry.zonotope import build_instance


def test_class_group_of_hirzebruch_surface(hirzebruch2):
    group = class_group(hirzebruch2)

    assert group.free_rank == 2
    assert group.torsion == ()
    assert group.order == 1
    assert group.project((0, 0, 0, 1)).free == (2, 1)


@pytest.mark.parametrize(
    "vectors, torsion",
    [
        ([[2]], (2,)),
        ([[1, 1], [1, -1]], (2,)),
        ([[2, 0], [0, 3]], (6,)),
        ([[1], [-1]], ()),
    ],
)
def test_class_group_torsion(vectors, torsion):
    assert class_group(build_instance(vectors)).torsion == torsion


def test_class_group_projection_is_a_homomorphism():
    instance = build_instance([[1, 1], [1, -1], [0, 1]])
    group = class_group(instance)

    a, b = (1, 0, 2), (0, 1, -1)
    total = tuple(x + y for x, y in zip(a, b))
    assert group.add(group.project(a), group.project(b)) == group.project(total)

    # The image of φ is the zero class.
    for column in range(instance.n):
        image = tuple(vector[column] for vector in instance.vectors)
        element = group.project(image)
        assert not any(element.free)
        assert not any(element.torsion)


def test_bondal_thomsen_collections(hirzebruch2):
    theta = bondal_thomsen(hirzebruch2)

    assert [element.free_part for element in theta] == [
        (-3, -1),
        (-2, -1),
        (-1, -1),
        (-1, 0),
        (0, 0),
    ]
    assert all(element.torsion_part == () for element in theta)

    assert len(bondal_thomsen(build_instance([[2]]))) == 2
    assert len(bondal_thomsen(build_instance([[1, 1], [1, -1]]))) == 2


def test_bondal_thomsen_torsion_parts():
    theta = bondal_thomsen(build_instance([[2]]))

    assert [element.torsion_part for element in theta] == [(0,), (1,)]
    assert theta[0].stratum == theta[1].stratum


def test_effective_cone_of_hirzebruch_surface(hirzebruch2):
    cone = effective_cone(hirzebruch2)

    assert cone.rays == ((0, 1), (1, 0))
    assert cone.pointed
    assert cone.dim == 2
    assert cone.zero == ()
    assert cone.duplicates == (2,)
    assert cone.non_extremal == (3,)


def test_effective_cone_of_a_segment():
    cone = effective_cone(build_instance([[1], [-1]]))

    assert cone.rays == ((1,),)
    assert cone.duplicates == (1,)
    assert cone.non_extremal == ()
    assert cone.dim == 1


def test_effective_cone_in_dimension_zero():
    cone = effective_cone(build_instance([[1]]))

    assert cone.generators == ((),)
    assert cone.zero == (0,)
    assert cone.rays == ()
    assert cone.dim == 0
    assert cone.pointed


def test_minimal_effective_faces(hirzebruch2):
    assert minimal_eff_face(hirzebruch2, (1, 0)).indices == (0, 2)
    assert minimal_eff_face(hirzebruch2, (1, 0)).dim == 1
    assert minimal_eff_face(hirzebruch2, (0, 0)).indices == ()
    assert minimal_eff_face(hirzebruch2, (0, 0)).dim == 0
    assert minimal_eff_face(hirzebruch2, (2, 1)).dim == 2

    with pytest.raises(EmptyFiber):
        minimal_eff_face(hirzebruch2, (2, 0))


def test_corollary_of_hirzebruch_surface(hirzebruch2):
    report = verify_corollary(hirzebruch2)

    assert report.passed
    assert report.theta_count == 5
    assert report.torsion_order == 1

    red = next(g for g in report.groupings if g.zero_set == frozenset({1, 3}))
    assert red.count_by_zero_set == 2
    assert red.count_by_span == 2
    assert red.face_point_count == 2


def test_corollary_of_blown_up_hirzebruch_surface(blowup_hirzebruch2):
    report = verify_corollary(blowup_hirzebruch2)

    assert report.passed
    assert report.theta_count == 8


@pytest.mark.parametrize("vectors", [[[2]], [[1, 1], [1, -1]], [[2, 0], [0, 3], [-1, -1]]])
def test_corollary_with_torsion(vectors):
    instance = build_instance(vectors)
    report = verify_corollary(instance)

    assert report.passed
    assert report.theta_count == len(bondal_thomsen(instance))


def test_corollary_requires_full_rank():
    with pytest.raises(RankDeficient):
        verify_corollary(build_instance([[1, 0]]))


def test_corollary_with_a_non_primitive_generator():
    report = verify_corollary(build_instance([[2], [-2], [1]]))

    assert report.passed
    grouping = next(g for g in report.groupings if g.zero_set == frozenset({0, 1}))
    assert grouping.strata_count == 2
    assert grouping.face_point_count == 2
