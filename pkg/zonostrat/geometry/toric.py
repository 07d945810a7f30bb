#!/usr/bin/env python

"""
zonostrat.geometry.toric
~~~~~~~~~~~~~~~~~~~~~~~~

Components for the toric side: the class group with its torsion, the
Bondal-Thomsen collection and the effective cone with its faces.

Only the ray data A is consumed. Whether the rays come from a semiprojective
fan is the caller's responsibility.

"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from zonostrat.algebra.linalg import (
    IntVector,
    apply_rows,
    matrix_rows,
    rows_rank,
    smith_normal_form,
)
from zonostrat.algebra.polyhedra import HalfOpenPolyhedron, LinearConstraint, is_feasible
from zonostrat.errors import RankDeficient
from zonostrat.geometry.strata import (
    Stratum,
    enumerate_strata,
    report_failure,
    restrict,
    restriction_lattice_points,
)
from zonostrat.geometry.zonotope import (
    Instance,
    face_dimension,
    fiber_j_set,
    half_open_lattice_points,
)


@dataclass(frozen=True)
class ClassElement:
    """Class describing an element of the class group."""

    free: IntVector
    """The coordinates in Z^{k−r}, equal to P·a for a preimage a ∈ Z^k."""

    torsion: IntVector
    """The residues modulo the torsion invariant factors."""


@dataclass(frozen=True)
class ClassGroup:
    """Class describing the class group Z^k / φ(Z^n) as Z^{k−r} ⊕ ⊕ Z/d_i."""

    free_rank: int
    torsion: Tuple[int, ...]
    """The invariant factors d_i > 1 in divisibility order."""

    cokernel_rows: Tuple[IntVector, ...]
    torsion_rows: Tuple[IntVector, ...]
    """The rows of the Smith transform U paired with the torsion factors."""

    @property
    def order(self) -> int:
        """The order of the torsion subgroup."""
        return math.prod(self.torsion)

    def project(self, a: Sequence[int]) -> ClassElement:
        """Returns the class of a ∈ Z^k."""
        return ClassElement(
            free=apply_rows(self.cokernel_rows, a),
            torsion=tuple(
                value % d for value, d in zip(apply_rows(self.torsion_rows, a), self.torsion)
            ),
        )

    def add(self, first: ClassElement, second: ClassElement) -> ClassElement:
        return ClassElement(
            free=tuple(a + b for a, b in zip(first.free, second.free)),
            torsion=tuple((a + b) % d for a, b, d in zip(first.torsion, second.torsion, self.torsion)),
        )


def class_group(instance: Instance) -> ClassGroup:
    """
    Presents the class group through the Smith form D = U·V·W of the matrix of φ.

    The free coordinates are the P-coordinates and the torsion coordinates are
    the rows of U belonging to invariant factors greater than one.
    """
    D, U, _ = smith_normal_form(instance.matrix)
    diagonal = [int(D[i, i]) for i in range(min(D.rows, D.cols)) if D[i, i] != 0]
    u_rows = matrix_rows(U)

    torsion = tuple(d for d in diagonal if d > 1)
    torsion_rows = tuple(tuple(u_rows[i]) for i, d in enumerate(diagonal) if d > 1)

    return ClassGroup(
        free_rank=instance.codim,
        torsion=torsion,
        cokernel_rows=instance.cokernel_rows,
        torsion_rows=torsion_rows,
    )


@dataclass(frozen=True)
class ThetaElement:
    """Class describing an element of the Bondal-Thomsen collection."""

    free_part: IntVector
    """Minus the lattice point of the corresponding stratum."""

    torsion_part: IntVector
    stratum: Stratum


def bondal_thomsen(
    instance: Instance, strata: Optional[List[Stratum]] = None, workers: int = 1
) -> List[ThetaElement]:
    """
    Lists the class group elements whose real image lies in −Z.

    Every lattice point p of Z contributes one element with free part −p for
    every torsion residue tuple.

    Returns:
        list: elements sorted by free part, then torsion part
    """
    if strata is None:
        strata = enumerate_strata(instance, workers)

    group = class_group(instance)
    residues = list(itertools.product(*(range(d) for d in group.torsion)))

    elements = [
        ThetaElement(
            free_part=tuple(-value for value in stratum.point.p),
            torsion_part=tuple(residue),
            stratum=stratum,
        )
        for stratum in strata
        for residue in residues
    ]
    elements.sort(key=lambda element: (element.free_part, element.torsion_part))

    logging.debug(
        "Bondal-Thomsen collection has %d elements, torsion order %d.",
        len(elements),
        group.order,
    )

    return elements


@dataclass(frozen=True)
class EffectiveCone:
    """Class describing the cone generated by the images π(e_j)."""

    generators: Tuple[IntVector, ...]
    """The generators π(e_1), ..., π(e_k) in P-coordinates."""

    rays: Tuple[IntVector, ...]
    """The primitive extremal rays, sorted."""

    pointed: bool
    dim: int

    zero: Tuple[int, ...]
    """The 0-based indices of zero generators."""

    duplicates: Tuple[int, ...]
    """The 0-based indices of generators on the same ray as an earlier generator."""

    non_extremal: Tuple[int, ...]
    """The 0-based indices of nonzero generators not spanning an extremal ray."""


def _primitive(vector: Sequence[int]) -> IntVector:
    divisor = math.gcd(*vector) if vector else 0
    if divisor == 0:
        return tuple(vector)

    return tuple(value // divisor for value in vector)


def _in_cone(target: Sequence[int], generators: Sequence[Sequence[int]], dim: int) -> bool:
    count = len(generators)
    if count == 0:
        return not any(target)

    units = [tuple(1 if i == j else 0 for i in range(count)) for j in range(count)]
    constraints = [LinearConstraint.at_least(unit, 0) for unit in units] + [
        LinearConstraint.equal(tuple(g[i] for g in generators), target[i]) for i in range(dim)
    ]

    return bool(is_feasible(HalfOpenPolyhedron(count, tuple(constraints))))


def effective_cone(instance: Instance) -> EffectiveCone:
    """
    Describes the effective cone π(R_{≥0}^k) generated by the images π(e_j).

    The cone is pointed iff no convex combination of its nonzero generators
    vanishes. A generator spans an extremal ray of a pointed cone iff it is
    not in the cone of the generators off its ray.
    """
    dim = instance.codim
    generators = tuple(instance.generator(j) for j in range(instance.k))
    zero = tuple(j for j, g in enumerate(generators) if not any(g))
    nonzero = [g for g in generators if any(g)]

    pointed = True
    if nonzero:
        count = len(nonzero)
        units = [tuple(1 if i == j else 0 for i in range(count)) for j in range(count)]
        constraints = (
            [LinearConstraint.at_least(unit, 0) for unit in units]
            + [LinearConstraint.equal((1,) * count, 1)]
            + [
                LinearConstraint.equal(tuple(g[i] for g in nonzero), 0)
                for i in range(dim)
            ]
        )
        pointed = not is_feasible(HalfOpenPolyhedron(count, tuple(constraints)))

    seen: Dict[IntVector, int] = {}
    duplicates = []
    for j, g in enumerate(generators):
        if j in zero:
            continue
        ray = _primitive(g)
        if ray in seen:
            duplicates.append(j)
        else:
            seen[ray] = j

    extremal = set()
    if pointed:
        for ray, j in seen.items():
            others = [g for g in nonzero if _primitive(g) != ray]
            if not _in_cone(ray, others, dim):
                extremal.add(ray)

    non_extremal = tuple(
        j for j, g in enumerate(generators) if j not in zero and _primitive(g) not in extremal
    )

    return EffectiveCone(
        generators=generators,
        rays=tuple(sorted(extremal)),
        pointed=pointed,
        dim=rows_rank(nonzero, dim),
        zero=zero,
        duplicates=tuple(duplicates),
        non_extremal=non_extremal,
    )


@dataclass(frozen=True)
class EffectiveConeFace:
    """Class describing a face of the effective cone."""

    indices: Tuple[int, ...]
    """The 0-based indices j with π(e_j) among the face generators."""

    generators: Tuple[IntVector, ...]
    dim: int


def minimal_eff_face(instance: Instance, p: Sequence[int]) -> EffectiveConeFace:
    """
    Returns the minimal face of the effective cone containing a lattice point of Z.

    The face is generated by the π(e_j) with j outside the zero set of p.

    Raises:
        EmptyFiber: p is not in the half-open zonotope
    """
    zero_set = fiber_j_set(instance, p)
    indices = tuple(j for j in range(instance.k) if j not in zero_set)

    return EffectiveConeFace(
        indices=indices,
        generators=tuple(instance.generator(j) for j in indices),
        dim=face_dimension(instance, zero_set),
    )


@dataclass(frozen=True)
class CorollaryRecord:
    """Class describing the dimension checks of one Θ element."""

    element: ThetaElement
    face: EffectiveConeFace

    identity_holds: bool
    """dim τ + dim_lift = k − |J|."""

    dims_agree: bool
    """dim τ equals the dimension of the zonotope face of the point."""

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.dims_agree


@dataclass(frozen=True)
class FaceGrouping:
    """Class describing the Θ elements lying on one face τ."""

    zero_set: FrozenSet[int]
    count_by_zero_set: int
    """Θ elements whose stratum zero set contains the face's zero set."""

    count_by_span: int
    """Θ elements whose point lies in the linear span of τ."""

    strata_count: int
    """Strata whose zero set contains the face's zero set."""

    face_point_count: int
    """Points of the restricted zonotope in the lattice pulled back from the face."""

    torsion_order: int

    @property
    def passed(self) -> bool:
        return (
            self.count_by_zero_set == self.count_by_span
            and self.count_by_zero_set // self.torsion_order
            == self.strata_count
            == self.face_point_count
        )


@dataclass
class CorollaryReport:
    """Class describing the verification of the toric dimension formula."""

    theta_count: int = 0
    torsion_order: int = 1
    records: List[CorollaryRecord] = field(default_factory=list)
    groupings: List[FaceGrouping] = field(default_factory=list)

    @property
    def count_matches(self) -> bool:
        return self.theta_count == len(self.records)

    @property
    def passed(self) -> bool:
        return (
            self.count_matches
            and all(record.passed for record in self.records)
            and all(grouping.passed for grouping in self.groupings)
        )


def verify_corollary(
    instance: Instance,
    strata: Optional[List[Stratum]] = None,
    workers: int = 1,
    strict: bool = True,
) -> CorollaryReport:
    """
    Verifies dim τ + dim S = k − |J_S| for every Θ element and groups Θ by faces.

    For every face τ, the Θ elements on it are counted by zero set containment
    and by span membership. Both counts, divided by the torsion order, must
    equal the number of strata on the face and the number of points of the
    restricted zonotope in the face lattice.

    Raises:
        RankDeficient: the vectors do not span R^n
        VerificationFailure: a check failed and `strict` is set
    """
    if instance.rank != instance.n:
        raise RankDeficient("The toric dimension formula requires a full-rank instance!")

    if strata is None:
        strata = enumerate_strata(instance, workers)

    elements = bondal_thomsen(instance, strata)
    group = class_group(instance)
    report = CorollaryReport(
        theta_count=len(half_open_lattice_points(instance, workers)) * group.order,
        torsion_order=group.order,
    )

    faces: Dict[IntVector, EffectiveConeFace] = {}
    for element in elements:
        stratum = element.stratum
        p = stratum.point.p
        if p not in faces:
            faces[p] = minimal_eff_face(instance, p)
        face = faces[p]

        zonotope_face_dim = face_dimension(instance, stratum.j_set)
        record = CorollaryRecord(
            element=element,
            face=face,
            identity_holds=face.dim + stratum.dim_lift == instance.k - len(stratum.j_set),
            dims_agree=face.dim == zonotope_face_dim,
        )
        report.records.append(record)
        if not record.passed:
            report_failure(
                f"Dimension formula fails for the Θ element {element.free_part}!",
                strict,
                report,
                record,
            )

    representatives: Dict[FrozenSet[int], Stratum] = {}
    for stratum in strata:
        representatives.setdefault(stratum.j_set, stratum)

    for zero_set, stratum in sorted(
        representatives.items(), key=lambda item: (len(item[0]), sorted(item[0]))
    ):
        face = faces[stratum.point.p]
        span_rank = rows_rank(face.generators, instance.codim)

        grouping = FaceGrouping(
            zero_set=zero_set,
            count_by_zero_set=sum(
                1 for element in elements if element.stratum.j_set >= zero_set
            ),
            count_by_span=sum(
                1
                for element in elements
                if rows_rank(
                    list(face.generators) + [element.stratum.point.p], instance.codim
                )
                == span_rank
            ),
            strata_count=sum(1 for s in strata if s.j_set >= zero_set),
            face_point_count=len(restriction_lattice_points(restrict(instance, stratum))),
            torsion_order=group.order,
        )
        report.groupings.append(grouping)
        if not grouping.passed:
            report_failure(
                f"Θ grouping fails on the face with zero set {sorted(zero_set)}!",
                strict,
                report,
                grouping,
            )

    return report
