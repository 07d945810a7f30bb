#!/usr/bin/env python

"""
zonostrat.geometry.strata
~~~~~~~~~~~~~~~~~~~~~~~~~

Components for enumerating the oriented strata of the toric arrangement,
checking their correspondence with the lattice points of the half-open
zonotope and restricting an instance to the face of a stratum.

"""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from zonostrat.algebra.linalg import (
    IntMatrix,
    IntVector,
    RatMatrix,
    RatVector,
    apply_rows,
    fraction_rows,
    int_matrix,
    integer_kernel,
    integer_right_inverse,
    matrix_rows,
    phi_preimage_lattice,
    rat_matrix,
    reduce_by_hnf,
    rows_rank,
)
from zonostrat.algebra.polyhedra import (
    HalfOpenPolyhedron,
    LinearConstraint,
    analyze_system,
    implicit_equalities,
    is_feasible,
)
from zonostrat.errors import RankDeficient, VerificationFailure
from zonostrat.geometry.zonotope import (
    Instance,
    ZonotopeFace,
    ZonotopePoint,
    build_restricted_instance,
    cube_fiber,
    face_dimension,
    fiber_j_set,
    half_open_lattice_points,
    parallel_map,
    phi_fiber,
    preimage,
)


@dataclass(frozen=True)
class Stratum:
    """Class describing a Φ-stratum of the oriented toric arrangement."""

    label: IntVector
    """The canonical representative m of the stratum label modulo L."""

    j_set: FrozenSet[int]
    """The 0-based indices j whose hyperplane contains the stratum."""

    dim_lift: int
    """The affine dimension of the lift of the stratum to R^n."""

    quotient_dim: int
    """The dimension of the stratum in the quotient torus, dim_lift − (n − r)."""

    witness: RatVector
    """A point of the lift with Φ(witness) = label."""

    point: ZonotopePoint
    """The corresponding lattice point of the half-open zonotope."""


def canonicalize_mod_L(instance: Instance, m: Sequence[int]) -> IntVector:
    """
    Returns the canonical representative of the coset m + L.

    Two labels give the same output iff they differ by an element of L.
    """
    return reduce_by_hnf(instance.image_lattice, m)


def stratum_dimension(instance: Instance, j_set: Iterable[int]) -> int:
    """Returns n minus the rank of the vectors v_j with j in `j_set`."""
    rows = [instance.vectors[j] for j in sorted(j_set)]
    return instance.n - rows_rank(rows, instance.n)


def _build_stratum(instance: Instance, m: Sequence[int], point: Optional[ZonotopePoint] = None) -> Stratum:
    label = canonicalize_mod_L(instance, m)

    # A hyperplane contains the lift iff its upper bound is an implicit
    # equality of the closed fiber: the half-open fiber is dense in it.
    j_set = implicit_equalities(phi_fiber(instance, label, closed=True), range(instance.k))
    _, dim_lift, witness = analyze_system(phi_fiber(instance, label))

    if point is None:
        p = apply_rows(instance.cokernel_rows, label)
        point = ZonotopePoint(p=p, preimage_m=preimage(instance, p), in_half_open=True)

    return Stratum(
        label=label,
        j_set=j_set,
        dim_lift=dim_lift,
        quotient_dim=dim_lift - (instance.n - instance.rank),
        witness=witness,
        point=point,
    )


def enumerate_strata(instance: Instance, workers: int = 1) -> List[Stratum]:
    """
    Enumerates the strata, one per lattice point of the half-open zonotope.

    Parameters:
        `instance` (Instance): instance
        `workers` (int): number of worker threads

    Returns:
        list: strata sorted by the coordinates of their lattice points
    """
    points = half_open_lattice_points(instance, workers)
    strata = parallel_map(
        lambda point: _build_stratum(instance, point.preimage_m, point), points, workers
    )

    logging.debug("Enumerated %d strata of instance '%s'.", len(strata), instance.name)

    return strata


def stratum_from_point(instance: Instance, u: Sequence) -> Stratum:
    """Returns the stratum containing the image of a rational point u ∈ R^n."""
    u = tuple(Fraction(value) for value in u)
    m = tuple(
        math.ceil(sum((a * b for a, b in zip(u, vector)), Fraction(0)))
        for vector in instance.vectors
    )

    return _build_stratum(instance, m)


@dataclass(frozen=True)
class CorrespondenceRecord:
    """Class describing the checks of one stratum against its lattice point."""

    stratum: Stratum
    point: ZonotopePoint
    face: ZonotopeFace

    identity_holds: bool
    """dim F_p + dim_lift = k − |J| + (n − r)."""

    kernel_contained: bool
    """ker φ lies in the span of the lift."""

    j_sets_agree: bool
    """Strata-side J equals the cube-side zero set of p."""

    witness_valid: bool
    """Φ(witness) equals the label and non-J constraints hold strictly."""

    @property
    def passed(self) -> bool:
        return (
            self.identity_holds
            and self.kernel_contained
            and self.j_sets_agree
            and self.witness_valid
        )


@dataclass(frozen=True)
class InclusionCheck:
    """Class describing the check of a pair of strata with J_smaller ⊆ J_larger."""

    smaller: int
    """The index of the stratum with the smaller zero set."""

    larger: int
    """The index of the stratum with the larger zero set."""

    face_contained: bool
    """The point of the larger stratum lies on the face of the smaller one."""

    dimension_ordered: bool
    """dim F_larger <= dim F_smaller."""

    span_contained: bool
    """W_larger ⊆ W_smaller."""

    @property
    def passed(self) -> bool:
        return self.face_contained and self.dimension_ordered and self.span_contained


@dataclass
class CorrespondenceReport:
    """Class describing the verification of the strata/lattice point bijection."""

    records: List[CorrespondenceRecord] = field(default_factory=list)
    inclusion_checks: List[InclusionCheck] = field(default_factory=list)

    point_count: int = 0
    """The number of lattice points of the half-open zonotope."""

    labels_distinct: bool = True
    """Canonical labels and lattice points are pairwise distinct."""

    summary: Dict[Tuple[int, int], int] = field(default_factory=dict)
    """The number of strata per (dim_lift, face dim) pair."""

    @property
    def identity_checks(self) -> List[bool]:
        return [record.identity_holds for record in self.records]

    @property
    def counts_match(self) -> bool:
        return len(self.records) == self.point_count

    @property
    def passed(self) -> bool:
        return (
            self.counts_match
            and self.labels_distinct
            and all(record.passed for record in self.records)
            and all(check.passed for check in self.inclusion_checks)
        )


def _span_basis(instance: Instance, j_set: Iterable[int]) -> List[List[int]]:
    rows = [instance.vectors[j] for j in sorted(j_set)]
    return matrix_rows(integer_kernel(int_matrix(rows, instance.n)))


def _witness_valid(instance: Instance, stratum: Stratum) -> bool:
    values = [
        sum((a * b for a, b in zip(stratum.witness, vector)), Fraction(0))
        for vector in instance.vectors
    ]
    if tuple(math.ceil(value) for value in values) != stratum.label:
        return False

    return all(
        value < m for j, (value, m) in enumerate(zip(values, stratum.label))
        if j not in stratum.j_set
    )


def _on_face(instance: Instance, p: Sequence[int], zero_set: FrozenSet[int]) -> bool:
    units = [
        LinearConstraint.equal(tuple(1 if i == j else 0 for i in range(instance.k)), 0)
        for j in sorted(zero_set)
    ]
    return bool(is_feasible(cube_fiber(instance, p).extended(units)))


def report_failure(message: str, strict: bool, report, record=None) -> None:
    logging.error(message)
    if strict:
        raise VerificationFailure(message, report=report, record=record)


def verify_main_theorem(
    instance: Instance,
    strata: Optional[List[Stratum]] = None,
    workers: int = 1,
    strict: bool = True,
) -> CorrespondenceReport:
    """
    Verifies the bijection between strata and lattice points of the half-open zonotope.

    For every stratum the dimension identity, the kernel containment, the
    agreement of both zero sets and the witness are checked; for every pair
    with nested zero sets the inclusion reversal is checked.

    Parameters:
        `instance` (Instance): instance
        `strata` (list): strata of the instance, enumerated when omitted
        `workers` (int): number of worker threads
        `strict` (bool): raise on the first failed check instead of reporting it

    Returns:
        CorrespondenceReport: report of every check

    Raises:
        VerificationFailure: a check failed and `strict` is set
    """
    if strata is None:
        strata = enumerate_strata(instance, workers)

    report = CorrespondenceReport(point_count=len(half_open_lattice_points(instance, workers)))
    kernel_rows = matrix_rows(instance.preimage_lattice.kernel)
    lack = instance.n - instance.rank

    def check(stratum: Stratum) -> CorrespondenceRecord:
        face_zero_set = fiber_j_set(instance, stratum.point.p)
        face = ZonotopeFace(zero_set=face_zero_set, dim=face_dimension(instance, face_zero_set))
        span = _span_basis(instance, stratum.j_set)

        return CorrespondenceRecord(
            stratum=stratum,
            point=stratum.point,
            face=face,
            identity_holds=face.dim + stratum.dim_lift
            == instance.k - len(stratum.j_set) + lack
            and stratum.dim_lift == stratum_dimension(instance, stratum.j_set),
            kernel_contained=rows_rank(span + kernel_rows, instance.n) == stratum.dim_lift,
            j_sets_agree=face_zero_set == stratum.j_set,
            witness_valid=_witness_valid(instance, stratum),
        )

    report.records = parallel_map(check, strata, workers)
    report.labels_distinct = len({s.label for s in strata}) == len(strata) and len(
        {s.point.p for s in strata}
    ) == len(strata)

    if not report.counts_match:
        report_failure(
            f"Found {len(strata)} strata for {report.point_count} lattice points!",
            strict,
            report,
        )
    if not report.labels_distinct:
        report_failure("Stratum labels or lattice points repeat!", strict, report)

    for record in report.records:
        if not record.passed:
            report_failure(
                f"Stratum at {record.point.p} fails the correspondence checks!",
                strict,
                report,
                record,
            )

    report.summary = dict(
        sorted(Counter((r.stratum.dim_lift, r.face.dim) for r in report.records).items())
    )

    on_face: Dict[Tuple[FrozenSet[int], IntVector], bool] = {}
    for a, first in enumerate(report.records):
        for b, second in enumerate(report.records):
            zero_a, zero_b = first.stratum.j_set, second.stratum.j_set
            if a == b or not zero_a <= zero_b:
                continue

            key = (zero_a, second.point.p)
            if key not in on_face:
                on_face[key] = not zero_a or _on_face(instance, second.point.p, zero_a)

            span_b = _span_basis(instance, zero_b)
            inclusion = InclusionCheck(
                smaller=a,
                larger=b,
                face_contained=on_face[key],
                dimension_ordered=second.face.dim <= first.face.dim,
                span_contained=all(
                    sum(x * y for x, y in zip(w, instance.vectors[j])) == 0
                    for w in span_b
                    for j in zero_a
                ),
            )
            report.inclusion_checks.append(inclusion)
            if not inclusion.passed:
                report_failure(
                    f"Inclusion reversal fails for {first.point.p} and {second.point.p}!",
                    strict,
                    report,
                    inclusion,
                )

    logging.debug(
        "Checked %d strata and %d nested pairs of instance '%s'.",
        len(report.records),
        len(report.inclusion_checks),
        instance.name,
    )

    return report


def brute_force_strata(instance: Instance) -> List[IntVector]:
    """
    Enumerates the canonical stratum labels by scanning a fundamental domain.

    The domain is the half-open parallelepiped of the basis of φ^{-1}(Z^k); a
    label m is kept when its Φ-fiber meets the domain.

    Returns:
        list: sorted canonical labels

    Raises:
        RankDeficient: the vectors do not span R^n
    """
    if instance.rank != instance.n:
        raise RankDeficient("Brute-force strata require a full-rank instance!")

    n = instance.n
    basis = fraction_rows(instance.preimage_lattice.lattice)
    values = [tuple(sum(b * a for b, a in zip(row, v)) for row in basis) for v in instance.vectors]

    ranges = [
        range(
            math.ceil(sum(min(Fraction(0), c) for c in value)),
            math.ceil(sum(max(Fraction(0), c) for c in value)) + 1,
        )
        for value in values
    ]

    units = [tuple(1 if i == t else 0 for i in range(n)) for t in range(n)]
    domain = [LinearConstraint.at_least(unit, 0) for unit in units] + [
        LinearConstraint.less_than(unit, 1) for unit in units
    ]

    labels: Set[IntVector] = set()
    stack: List[Tuple[Tuple[int, ...], HalfOpenPolyhedron]] = [
        ((), HalfOpenPolyhedron(n, tuple(domain)))
    ]
    while stack:
        m, system = stack.pop()
        j = len(m)
        if j == instance.k:
            labels.add(canonicalize_mod_L(instance, m))
            continue

        for m_j in ranges[j]:
            extended = system.extended(
                [
                    LinearConstraint.at_most(values[j], m_j),
                    LinearConstraint.greater_than(values[j], m_j - 1),
                ]
            )
            if is_feasible(extended):
                stack.append((m + (m_j,), extended))

    return sorted(labels)


@dataclass(frozen=True)
class RestrictionData:
    """Class describing the restriction of an instance to the face of a stratum."""

    parent: Instance
    stratum: Stratum

    w_basis: IntMatrix
    """The basis of W_S ∩ Z^n, one vector per row."""

    kept: Tuple[int, ...]
    """The 0-based indices j outside J, in order."""

    sub: Instance
    """The instance of the vectors v_j, j outside J, restricted to W_S."""

    embedding: IntMatrix
    """The matrix sending P̃-coordinates of the sub-instance to P-coordinates of the face."""

    face_lattice: RatMatrix
    """The basis of the preimage of π(Z^k) under the embedding, one vector per row."""

    def embed(self, y: Sequence) -> tuple:
        values = (Fraction(value) for value in apply_rows(matrix_rows(self.embedding), y))
        return tuple(int(value) if value.denominator == 1 else value for value in values)


def restrict(instance: Instance, stratum: Stratum) -> RestrictionData:
    """
    Restricts an instance to the face of a stratum.

    The vectors v_j with j outside J are expressed as linear forms in a basis
    of the saturated lattice W_S ∩ Z^n, and the lattice points of the resulting
    zonotope are embedded through the coordinate inclusion into Z^k.

    The embedding maps π̃(Z^k′) into π(Z^k), but a kept generator which is not
    primitive in π(Z^k) leaves face points outside the image. The lattice
    points of the face are therefore pulled back into `face_lattice`, which
    contains π̃(Z^k′).
    """
    w_rows = _span_basis(instance, stratum.j_set)
    kept = tuple(j for j in range(instance.k) if j not in stratum.j_set)
    vectors = [apply_rows(w_rows, instance.vectors[j]) for j in kept]

    sub = build_restricted_instance(vectors, len(w_rows))
    right_inverse = matrix_rows(integer_right_inverse(sub.cokernel))

    embedding = int_matrix(
        [
            [
                sum(row[kept[t]] * right_inverse[t][c] for t in range(len(kept)))
                for c in range(sub.codim)
            ]
            for row in instance.cokernel_rows
        ],
        sub.codim,
    )
    face_lattice = phi_preimage_lattice(embedding)

    return RestrictionData(
        parent=instance,
        stratum=stratum,
        w_basis=int_matrix(w_rows, instance.n),
        kept=kept,
        sub=sub,
        embedding=embedding,
        face_lattice=face_lattice.lattice,
    )


def restriction_lattice_points(data: RestrictionData) -> List[RatVector]:
    """
    Enumerates the points of the restricted half-open zonotope lying in the face lattice.

    Candidates are the integer combinations of the face lattice basis inside
    the bounding box of the generators π̃(e_j); a candidate is kept when its
    half-open cube fiber is feasible.

    Returns:
        list: points in P̃-coordinates, sorted
    """
    sub = data.sub
    d = sub.codim
    basis = fraction_rows(data.face_lattice)

    ranges: List[range] = []
    if d:
        inverse = fraction_rows(rat_matrix(basis, d).inv())
        coordinates = [
            [sum((g[s] * inverse[s][t] for s in range(d)), Fraction(0)) for t in range(d)]
            for g in (sub.generator(j) for j in range(sub.k))
        ]
        ranges = [
            range(
                math.ceil(sum(min(Fraction(0), c[t]) for c in coordinates)),
                math.floor(sum(max(Fraction(0), c[t]) for c in coordinates)) + 1,
            )
            for t in range(d)
        ]

    points = []
    for c in itertools.product(*ranges):
        y = tuple(sum((c[s] * basis[s][t] for s in range(d)), Fraction(0)) for t in range(d))
        if is_feasible(cube_fiber(sub, y)):
            points.append(y)

    return sorted(points)


@dataclass
class RestrictionReport:
    """Class describing the checks of a restriction against the face of a stratum."""

    data: RestrictionData
    sub_points: List[RatVector] = field(default_factory=list)
    """The points of the restricted zonotope in the face lattice, in P̃-coordinates."""

    face_points: List[IntVector] = field(default_factory=list)
    images: List[tuple] = field(default_factory=list)

    injective: bool = False
    image_matches: bool = False

    codimension_zero: bool = False
    """The stratum point pulls back to a point with an empty zero set."""

    lift_dimension_matches: Optional[bool] = None
    """Set when ker φ = 0: the pulled back stratum has the parent's lift dimension."""

    @property
    def passed(self) -> bool:
        return (
            self.injective
            and self.image_matches
            and self.codimension_zero
            and self.lift_dimension_matches is not False
        )


def verify_restriction(
    instance: Instance,
    stratum: Stratum,
    strata: Optional[List[Stratum]] = None,
    strict: bool = True,
) -> RestrictionReport:
    """
    Verifies that the restriction embeds its lattice points onto the face of a stratum.

    The image must be exactly the points of the strata whose zero set contains
    the zero set of `stratum`.

    Raises:
        VerificationFailure: a check failed and `strict` is set
    """
    if strata is None:
        strata = enumerate_strata(instance)

    data = restrict(instance, stratum)
    report = RestrictionReport(data=data)

    report.sub_points = restriction_lattice_points(data)
    report.images = [data.embed(p) for p in report.sub_points]
    report.face_points = sorted(s.point.p for s in strata if s.j_set >= stratum.j_set)

    report.injective = len(set(report.images)) == len(report.images)
    report.image_matches = sorted(report.images) == report.face_points

    pulled_back = [
        p for p, image in zip(report.sub_points, report.images) if image == stratum.point.p
    ]
    if len(pulled_back) == 1:
        y = pulled_back[0]
        report.codimension_zero = not fiber_j_set(data.sub, y)
        # Only points of π̃(Z^k′) carry a stratum of the restricted arrangement.
        if instance.rank == instance.n and all(value.denominator == 1 for value in y):
            sub_stratum = _build_stratum(data.sub, preimage(data.sub, tuple(map(int, y))))
            report.lift_dimension_matches = sub_stratum.dim_lift == stratum.dim_lift

    if not report.passed:
        report_failure(
            f"Restriction to the face of {stratum.point.p} fails its checks!",
            strict,
            report,
            stratum,
        )

    return report
