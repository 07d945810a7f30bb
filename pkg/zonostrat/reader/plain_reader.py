#!/usr/bin/env python

"""
zonostrat.reader.plain_reader
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Reader of plain-text instance files with one vector per line.

"""

import os
import re

from zonostrat.errors import InstanceFileError
from zonostrat.reader.reader_base import InstanceFile, InstanceReaderBase


class PlainInstanceReader(InstanceReaderBase):
    """
    Reads one vector per line, entries separated by commas or whitespace.

    Text after `#` is ignored and blank lines are skipped. The instance is
    named after the file.
    """

    def _parse(self, text: str) -> InstanceFile:
        vectors = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue

            vector = []
            for token in re.split(r"[\s,]+", content):
                if not token:
                    continue
                try:
                    vector.append(int(token))
                except ValueError as exception:
                    raise InstanceFileError(
                        f"Invalid integer '{token}'!", field="vectors", line=line_number
                    ) from exception

            vectors.append(vector)

        name = os.path.splitext(os.path.basename(self._filepath))[0]

        return InstanceFile(vectors=vectors, name=name)
