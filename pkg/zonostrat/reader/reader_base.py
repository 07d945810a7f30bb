#!/usr/bin/env python

"""
zonostrat.reader.reader_base
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Base components of instance file readers.

"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional

from zonostrat.errors import DimensionMismatch, InstanceFileError


@dataclass
class InstanceFile:
    """Class describing the content of an instance file."""

    vectors: List[List[int]] = field(default_factory=list)
    """The ordered vectors v_1, ..., v_k, all of the same dimension."""

    paper_pi: Optional[List[List[int]]] = None
    """The optional (k−r)×k matrix used for printing points in another basis."""

    name: str = ""
    """The optional name of the instance."""


class InstanceReaderBase(ABC):
    """
    A base class for instance file readers.
    """

    def __init__(self, filepath: str):
        if not filepath:
            raise ValueError("Instance file path is required!")

        self._filepath = filepath

    def read(self) -> InstanceFile:
        """
        Reads and validates the instance file.

        Returns:
            InstanceFile: parsed content

        Raises:
            InstanceFileError: the file is malformed
            DimensionMismatch: the vectors have different dimensions
        """
        try:
            with open(self._filepath, "r", encoding="utf-8") as instance_file:
                text = instance_file.read()
        except OSError as exception:
            raise InstanceFileError(f"Instance file can not be read: {exception}!") from exception

        instance_file = self._parse(text)
        self._validate(instance_file)

        return instance_file

    @abstractmethod
    def _parse(self, text: str) -> InstanceFile:
        pass

    @staticmethod
    def _validate_matrix(rows: list, field_name: str) -> None:
        if not isinstance(rows, list):
            raise InstanceFileError("A list of integer lists is expected!", field=field_name)

        for index, row in enumerate(rows):
            if not isinstance(row, list) or any(
                isinstance(value, bool) or not isinstance(value, int) for value in row
            ):
                raise InstanceFileError(
                    f"Row {index + 1} is not a list of integers!", field=field_name
                )

    def _validate(self, instance_file: InstanceFile) -> None:
        self._validate_matrix(instance_file.vectors, "vectors")
        if not instance_file.vectors:
            raise InstanceFileError("At least one vector is required!", field="vectors")

        dimension = len(instance_file.vectors[0])
        if any(len(vector) != dimension for vector in instance_file.vectors):
            raise DimensionMismatch("All vectors must have the same dimension!")

        if instance_file.paper_pi is not None:
            self._validate_matrix(instance_file.paper_pi, "paper_pi")
            if any(len(row) != len(instance_file.vectors) for row in instance_file.paper_pi):
                raise InstanceFileError(
                    "Every row must have one entry per vector!", field="paper_pi"
                )
