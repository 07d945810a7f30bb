#!/usr/bin/env python

"""
zonostrat.errors
~~~~~~~~~~~~~~~~

Exceptions raised by zonostrat components.

"""

from typing import Any, Optional


class ZonostratError(ValueError):
    """
    A base class for all errors raised by zonostrat.
    """


class DimensionMismatch(ZonostratError):
    """
    Vectors or matrices of incompatible sizes were combined.
    """


class NoSolution(ZonostratError):
    """
    An integer linear system has no integer solution.
    """


class EmptySystem(ZonostratError):
    """
    A system of linear constraints has no feasible point.
    """


class NotInImageLattice(ZonostratError):
    """
    A point does not belong to the lattice spanned by the cokernel presentation.
    """


class EmptyFiber(ZonostratError):
    """
    A point does not belong to the half-open zonotope.
    """


class RankDeficient(ZonostratError):
    """
    An operation requiring a full-rank vector list received a rank-deficient one.
    """


class UnsupportedDimension(ZonostratError):
    """
    A picture can not be drawn in the dimension of the instance.
    """


class InstanceFileError(ZonostratError):
    """
    An instance file could not be parsed.
    """

    def __init__(self, message: str, field: str = "", line: int = 0):
        super().__init__(message)
        self.field = field
        self.line = line

    def __str__(self) -> str:
        location = ""
        if self.line:
            location += f"line {self.line}: "
        if self.field:
            location += f"field '{self.field}': "

        return location + super().__str__()


class VerificationFailure(ZonostratError):
    """
    A verifier found a record violating one of its checks.
    """

    def __init__(
        self, message: str, report: Optional[Any] = None, record: Optional[Any] = None
    ):
        super().__init__(message)
        self.report = report
        self.record = record
