#!/usr/bin/env python

"""
zonostrat.algebra.polyhedra
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Exact feasibility, implicit equalities, witness points and affine dimension of
systems of linear constraints mixing strict and non-strict inequalities.

Feasibility is decided by Fourier-Motzkin elimination over fractions. Every
derived inequality carries a strictness flag which is the OR of the flags of
its parents, so no epsilon perturbation is ever needed.

"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from zonostrat.algebra.linalg import RatVector, rows_rank
from zonostrat.errors import DimensionMismatch, EmptySystem

LESS_EQUAL = "<="
LESS = "<"
EQUAL = "="

_KINDS = (LESS_EQUAL, LESS, EQUAL)


@dataclass(frozen=True)
class LinearConstraint:
    """Class describing a single constraint `coefficients · x (kind) rhs`."""

    coefficients: Tuple[Fraction, ...]
    """The coefficient vector, its length is the ambient dimension."""

    rhs: Fraction
    """The right-hand side."""

    kind: str = LESS_EQUAL
    """The relation. Allowed values: `<=`, `<`, `=`."""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"Unknown constraint kind '{self.kind}' provided!")

        object.__setattr__(
            self, "coefficients", tuple(Fraction(a) for a in self.coefficients)
        )
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @staticmethod
    def at_most(coefficients: Sequence, rhs) -> "LinearConstraint":
        """Creates `coefficients · x <= rhs`."""
        return LinearConstraint(tuple(coefficients), rhs, LESS_EQUAL)

    @staticmethod
    def less_than(coefficients: Sequence, rhs) -> "LinearConstraint":
        """Creates `coefficients · x < rhs`."""
        return LinearConstraint(tuple(coefficients), rhs, LESS)

    @staticmethod
    def at_least(coefficients: Sequence, rhs) -> "LinearConstraint":
        """Creates `coefficients · x >= rhs`, stored as `-coefficients · x <= -rhs`."""
        return LinearConstraint(tuple(-Fraction(a) for a in coefficients), -Fraction(rhs))

    @staticmethod
    def greater_than(coefficients: Sequence, rhs) -> "LinearConstraint":
        """Creates `coefficients · x > rhs`, stored as `-coefficients · x < -rhs`."""
        return LinearConstraint(
            tuple(-Fraction(a) for a in coefficients), -Fraction(rhs), LESS
        )

    @staticmethod
    def equal(coefficients: Sequence, rhs) -> "LinearConstraint":
        """Creates `coefficients · x = rhs`."""
        return LinearConstraint(tuple(coefficients), rhs, EQUAL)

    @property
    def is_strict(self) -> bool:
        """True for `<` constraints."""
        return self.kind == LESS

    def evaluate(self, point: Sequence) -> Fraction:
        """Returns `coefficients · point`."""
        return sum((a * Fraction(x) for a, x in zip(self.coefficients, point)), Fraction(0))

    def is_satisfied(self, point: Sequence) -> bool:
        """Checks the constraint at a point exactly as typed."""
        value = self.evaluate(point)
        if self.kind == LESS_EQUAL:
            return value <= self.rhs
        if self.kind == LESS:
            return value < self.rhs

        return value == self.rhs

    def is_satisfied_strictly(self, point: Sequence) -> bool:
        """Checks `coefficients · point < rhs` regardless of the kind."""
        return self.evaluate(point) < self.rhs

    def tightened(self) -> "LinearConstraint":
        """Returns the strict version of this constraint."""
        return LinearConstraint(self.coefficients, self.rhs, LESS)


@dataclass(frozen=True)
class HalfOpenPolyhedron:
    """Class describing the feasible set of a list of linear constraints."""

    ambient_dim: int
    """The dimension of the ambient space."""

    constraints: Tuple[LinearConstraint, ...] = field(default_factory=tuple)
    """The constraints, indexed by position."""

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for constraint in self.constraints:
            if len(constraint.coefficients) != self.ambient_dim:
                raise DimensionMismatch(
                    "Constraint length does not match the ambient dimension!"
                )

    def contains(self, point: Sequence) -> bool:
        """Checks every constraint at a point."""
        return all(constraint.is_satisfied(point) for constraint in self.constraints)

    def replaced(self, index: int, constraint: LinearConstraint) -> "HalfOpenPolyhedron":
        """Returns a copy with the constraint at `index` replaced."""
        constraints = list(self.constraints)
        constraints[index] = constraint
        return HalfOpenPolyhedron(self.ambient_dim, tuple(constraints))

    def extended(self, constraints: Iterable[LinearConstraint]) -> "HalfOpenPolyhedron":
        """Returns a copy with additional constraints appended."""
        return HalfOpenPolyhedron(
            self.ambient_dim, self.constraints + tuple(constraints)
        )


@dataclass
class Feasibility:
    """Class describing the outcome of a feasibility test."""

    feasible: bool = False
    """True when some point satisfies every constraint."""

    witness: Optional[RatVector] = None
    """A feasible point when `feasible` is true."""

    def __bool__(self) -> bool:
        return self.feasible


# An inequality row `coefficients · x <= rhs`, strict when the flag is set.
_Row = Tuple[Tuple[Fraction, ...], Fraction, bool]


def _normalized(row: _Row) -> _Row:
    coefficients, rhs, strict = row
    scale = next((abs(a) for a in coefficients if a != 0), None)
    if scale is None or scale == 1:
        return row

    return tuple(a / scale for a in coefficients), rhs / scale, strict


def _pruned(rows: Iterable[_Row]) -> Optional[List[_Row]]:
    """Drops trivial and dominated rows, returns None on a violated trivial row."""
    tightest: Dict[Tuple[Fraction, ...], Tuple[Fraction, bool]] = {}
    for row in rows:
        coefficients, rhs, strict = _normalized(row)
        if not any(coefficients):
            if rhs < 0 or (strict and rhs == 0):
                return None
            continue

        current = tightest.get(coefficients)
        if (
            current is None
            or rhs < current[0]
            or (rhs == current[0] and strict and not current[1])
        ):
            tightest[coefficients] = (rhs, strict)

    return [(key, rhs, strict) for key, (rhs, strict) in tightest.items()]


@dataclass
class _Substitution:
    variable: int
    coefficients: Tuple[Fraction, ...]
    rhs: Fraction


def _substitute(row: _Row, substitution: _Substitution) -> _Row:
    coefficients, rhs, strict = row
    factor = coefficients[substitution.variable] / substitution.coefficients[
        substitution.variable
    ]
    if factor == 0:
        return row

    return (
        tuple(a - factor * b for a, b in zip(coefficients, substitution.coefficients)),
        rhs - factor * substitution.rhs,
        strict,
    )


def _solve(system: HalfOpenPolyhedron) -> Feasibility:
    """Fourier-Motzkin elimination with back-substitution of a midpoint witness."""
    dim = system.ambient_dim

    inequalities: List[_Row] = []
    equalities: List[Tuple[Tuple[Fraction, ...], Fraction]] = []
    for constraint in system.constraints:
        if constraint.kind == EQUAL:
            equalities.append((constraint.coefficients, constraint.rhs))
        else:
            inequalities.append(
                (constraint.coefficients, constraint.rhs, constraint.is_strict)
            )

    #
    # Remove equalities by Gaussian substitution.
    #
    substitutions: List[_Substitution] = []
    pending = list(equalities)
    while pending:
        coefficients, rhs = pending.pop(0)
        for substitution in substitutions:
            coefficients, rhs, _ = _substitute((coefficients, rhs, False), substitution)

        pivot = next((j for j, a in enumerate(coefficients) if a != 0), None)
        if pivot is None:
            if rhs != 0:
                return Feasibility()
            continue

        substitution = _Substitution(pivot, coefficients, rhs)
        substitutions.append(substitution)
        inequalities = [_substitute(row, substitution) for row in inequalities]

    rows = _pruned(inequalities)
    if rows is None:
        return Feasibility()

    #
    # Eliminate variables one at a time, keeping the tower for back-substitution.
    #
    tower: List[Tuple[int, List[_Row]]] = []
    while True:
        active = [j for j in range(dim) if any(row[0][j] != 0 for row in rows)]
        if not active:
            break

        def cost(j: int) -> Tuple[int, int]:
            positive = sum(1 for row in rows if row[0][j] > 0)
            negative = sum(1 for row in rows if row[0][j] < 0)
            return positive * negative - positive - negative, -j

        variable = min(active, key=cost)
        tower.append((variable, rows))

        upper = [row for row in rows if row[0][variable] > 0]
        lower = [row for row in rows if row[0][variable] < 0]
        derived = [row for row in rows if row[0][variable] == 0]
        for p_coefficients, p_rhs, p_strict in upper:
            for n_coefficients, n_rhs, n_strict in lower:
                p_scale = -n_coefficients[variable]
                n_scale = p_coefficients[variable]
                derived.append(
                    (
                        tuple(
                            p_scale * a + n_scale * b
                            for a, b in zip(p_coefficients, n_coefficients)
                        ),
                        p_scale * p_rhs + n_scale * n_rhs,
                        p_strict or n_strict,
                    )
                )

        rows = _pruned(derived)
        if rows is None:
            return Feasibility()

    values: List[Fraction] = [Fraction(0)] * dim
    for variable, level_rows in reversed(tower):
        low: Optional[Tuple[Fraction, bool]] = None
        high: Optional[Tuple[Fraction, bool]] = None
        for coefficients, rhs, strict in level_rows:
            a = coefficients[variable]
            if a == 0:
                continue

            rest = sum(
                (c * values[j] for j, c in enumerate(coefficients) if j != variable and c),
                Fraction(0),
            )
            bound = (rhs - rest) / a
            if a > 0:
                if high is None or bound < high[0] or (bound == high[0] and strict):
                    high = (bound, strict)
            else:
                if low is None or bound > low[0] or (bound == low[0] and strict):
                    low = (bound, strict)

        if low is not None and high is not None:
            values[variable] = (low[0] + high[0]) / 2
        elif low is not None:
            values[variable] = low[0] + 1
        elif high is not None:
            values[variable] = high[0] - 1

    for substitution in reversed(substitutions):
        variable = substitution.variable
        rest = sum(
            (
                c * values[j]
                for j, c in enumerate(substitution.coefficients)
                if j != variable and c
            ),
            Fraction(0),
        )
        values[variable] = (substitution.rhs - rest) / substitution.coefficients[variable]

    return Feasibility(feasible=True, witness=tuple(values))


def is_feasible(system: HalfOpenPolyhedron) -> Feasibility:
    """
    Decides whether a rational point satisfies every constraint.

    Parameters:
        `system` (HalfOpenPolyhedron): constraints to satisfy

    Returns:
        Feasibility: outcome, with a witness point satisfying every constraint
        exactly as typed when feasible
    """
    return _solve(system)


@dataclass
class _ImplicitAnalysis:
    implicit: FrozenSet[int]
    witnesses: List[RatVector]


def _analyze(system: HalfOpenPolyhedron, candidates: Optional[Iterable[int]]) -> _ImplicitAnalysis:
    base = _solve(system)
    if not base:
        raise EmptySystem("System of constraints is infeasible!")

    indices = range(len(system.constraints)) if candidates is None else candidates

    implicit = set()
    witnesses: List[RatVector] = [base.witness]  # type: ignore
    for index in indices:
        constraint = system.constraints[index]
        if constraint.kind == EQUAL:
            implicit.add(index)
            continue
        if constraint.is_strict:
            continue
        if constraint.is_satisfied_strictly(base.witness):  # type: ignore
            continue

        outcome = _solve(system.replaced(index, constraint.tightened()))
        if outcome:
            witnesses.append(outcome.witness)  # type: ignore
        else:
            implicit.add(index)

    logging.debug(
        "Analyzed %d constraints in dimension %d, %d implicit equalities.",
        len(system.constraints),
        system.ambient_dim,
        len(implicit),
    )

    return _ImplicitAnalysis(implicit=frozenset(implicit), witnesses=witnesses)


def implicit_equalities(
    system: HalfOpenPolyhedron, candidates: Optional[Iterable[int]] = None
) -> FrozenSet[int]:
    """
    Finds the constraints holding with equality on the whole feasible set.

    A non-strict constraint is an implicit equality iff the system becomes
    infeasible once that constraint is made strict.

    Parameters:
        `system` (HalfOpenPolyhedron): feasible system
        `candidates` (iterable): restricts the search to these indices, all by default

    Returns:
        frozenset: indices of implicit equalities

    Raises:
        EmptySystem: the system is infeasible
    """
    return _analyze(system, candidates).implicit


def affine_dimension(system: HalfOpenPolyhedron) -> int:
    """
    Computes the dimension of the affine hull of the feasible set.

    Raises:
        EmptySystem: the system is infeasible
    """
    implicit = implicit_equalities(system)
    normals = [system.constraints[i].coefficients for i in sorted(implicit)]

    return system.ambient_dim - rows_rank(normals, system.ambient_dim)


def relative_interior_witness(system: HalfOpenPolyhedron) -> RatVector:
    """
    Finds a point satisfying every constraint that is not an implicit equality strictly.

    The point is the average of the feasible witnesses found while testing each
    constraint for strictness; a convex combination with positive weight on a
    strict point is strict.

    Raises:
        EmptySystem: the system is infeasible
    """
    witnesses = _analyze(system, None).witnesses
    count = len(witnesses)

    return tuple(
        sum((witness[j] for witness in witnesses), Fraction(0)) / count
        for j in range(system.ambient_dim)
    )


def analyze_system(system: HalfOpenPolyhedron) -> Tuple[FrozenSet[int], int, RatVector]:
    """
    Computes implicit equalities, affine dimension and a relative interior point at once.

    Equivalent to calling `implicit_equalities`, `affine_dimension` and
    `relative_interior_witness`, sharing the elimination runs between them.

    Raises:
        EmptySystem: the system is infeasible
    """
    analysis = _analyze(system, None)
    normals = [system.constraints[i].coefficients for i in sorted(analysis.implicit)]
    dimension = system.ambient_dim - rows_rank(normals, system.ambient_dim)

    count = len(analysis.witnesses)
    witness = tuple(
        sum((w[j] for w in analysis.witnesses), Fraction(0)) / count
        for j in range(system.ambient_dim)
    )

    return analysis.implicit, dimension, witness
