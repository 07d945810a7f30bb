#!/usr/bin/env python

"""
zonostrat.reader.reader_factory
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Components for creation of instance file readers.

"""

from zonostrat.reader.json_reader import JsonInstanceReader
from zonostrat.reader.plain_reader import PlainInstanceReader
from zonostrat.reader.reader_base import InstanceReaderBase


class InstanceReaderFactory:
    """
    A factory class for creating instance file readers.
    """

    __supported_formats = {
        "json": JsonInstanceReader,
        "plain": PlainInstanceReader,
    }

    @staticmethod
    def create(file_format: str, filepath: str) -> InstanceReaderBase:
        """
        Creates a reader for the given file format.

        Parameters:
            `file_format` (str): format name. Allowed values: `json`, `plain`.
            `filepath` (str): path to the instance file

        Returns:
            InstanceReaderBase: created reader
        """
        if file_format not in InstanceReaderFactory.__supported_formats:
            if not file_format:
                raise ValueError("Empty instance file format provided!")

            raise ValueError("Unknown instance file format provided!")

        return InstanceReaderFactory.__supported_formats[file_format](filepath=filepath)
