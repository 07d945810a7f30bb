#!/usr/bin/env python

"""
zonostrat.report
~~~~~~~~~~~~~~~~

Report structures written by the command drivers and their JSON form.

Rational numbers are written as strings `a/b`, index sets are 1-based.

"""

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from dacite import Config, from_dict

SCHEMA_VERSION = 1


@dataclass
class InstanceSummary:
    """Class describing the instance a report was computed for."""

    name: str = ""
    k: int = 0
    n: int = 0
    r: int = 0

    torsion: List[int] = field(default_factory=list)
    """The invariant factors d_i > 1 of the matrix of φ."""

    cokernel: List[List[int]] = field(default_factory=list)
    """The canonical presentation P of π."""

    paper_pi: Optional[List[List[int]]] = None
    """The explicit presentation used for `paper_point` columns."""

    preimage_integral: bool = True
    """False when φ^{-1}(Z^k) differs from Z^n."""


@dataclass
class StratumRow:
    """Class describing a stratum together with its lattice point."""

    index: int = 0
    label: List[int] = field(default_factory=list)
    j_set: List[int] = field(default_factory=list)
    dim_lift: int = 0
    quotient_dim: int = 0
    witness: List[str] = field(default_factory=list)
    point: List[int] = field(default_factory=list)
    paper_point: Optional[List[int]] = None
    face_dim: int = 0


@dataclass
class ThetaRow:
    """Class describing an element of the Bondal-Thomsen collection."""

    free_part: List[int] = field(default_factory=list)
    torsion_part: List[int] = field(default_factory=list)
    stratum: int = 0
    face_dim: int = 0


@dataclass
class ConeSummary:
    """Class describing the effective cone."""

    rays: List[List[int]] = field(default_factory=list)
    pointed: bool = True
    dim: int = 0
    zero: List[int] = field(default_factory=list)
    duplicates: List[int] = field(default_factory=list)
    non_extremal: List[int] = field(default_factory=list)


@dataclass
class CheckRow:
    """Class describing the outcome of one verification."""

    name: str = ""
    passed: bool = True
    detail: str = ""


@dataclass
class OracleRow:
    """Class describing the comparison of a computed value with an independent oracle."""

    name: str = ""
    expected: int = 0
    found: int = 0
    passed: bool = True


@dataclass
class RestrictionSection:
    """Class describing the restriction of an instance to the face of a stratum."""

    stratum: int = 0
    kept: List[int] = field(default_factory=list)
    w_basis: List[List[int]] = field(default_factory=list)
    sub_vectors: List[List[int]] = field(default_factory=list)
    embedding: List[List[int]] = field(default_factory=list)
    sub_points: List[List[str]] = field(default_factory=list)
    """Points of the restricted zonotope in the face lattice, as `a/b` strings."""

    face_points: List[List[int]] = field(default_factory=list)


@dataclass
class Report:
    """Class describing the result of a command."""

    schema: int = SCHEMA_VERSION
    command: str = ""
    instance: InstanceSummary = field(default_factory=InstanceSummary)
    strata: List[StratumRow] = field(default_factory=list)
    summary: List[List[int]] = field(default_factory=list)
    """Rows (dim_lift, face dim, stratum count)."""

    theta: List[ThetaRow] = field(default_factory=list)
    cone: Optional[ConeSummary] = None
    restriction: Optional[RestrictionSection] = None
    checks: List[CheckRow] = field(default_factory=list)
    oracles: List[OracleRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check and every oracle comparison passed."""
        return all(check.passed for check in self.checks) and all(
            oracle.passed for oracle in self.oracles
        )


def rational_strings(values: Iterable[Fraction]) -> List[str]:
    """Converts fractions to strings `a/b`, integers without denominator."""
    return [str(Fraction(value)) for value in values]


def one_based(indices: Iterable[int]) -> List[int]:
    return sorted(index + 1 for index in indices)


def int_lists(rows: Iterable[Sequence[int]]) -> List[List[int]]:
    return [[int(value) for value in row] for row in rows]


def report_to_json(report: Report) -> str:
    """Serializes a report with a fixed field order."""
    return json.dumps(asdict(report), indent=4, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> Report:
    """Parses a report written by `report_to_json`."""
    return from_dict(data_class=Report, data=json.loads(text), config=Config(strict=True))
