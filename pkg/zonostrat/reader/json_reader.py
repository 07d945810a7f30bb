#!/usr/bin/env python

"""
zonostrat.reader.json_reader
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Reader of instance files stored as a single JSON document.

"""

import json

from dacite import Config, DaciteError, from_dict

from zonostrat.errors import InstanceFileError
from zonostrat.reader.reader_base import InstanceFile, InstanceReaderBase


class JsonInstanceReader(InstanceReaderBase):
    """
    Reads `{"name": str?, "vectors": [[int, ...], ...], "paper_pi": [[int, ...], ...]?}`.
    """

    def _parse(self, text: str) -> InstanceFile:
        try:
            content = json.loads(text)
        except json.JSONDecodeError as exception:
            raise InstanceFileError(exception.msg, line=exception.lineno) from exception

        if not isinstance(content, dict):
            raise InstanceFileError("A JSON object is expected!", line=1)

        if "vectors" not in content:
            raise InstanceFileError("Field is required!", field="vectors")

        try:
            return from_dict(
                data_class=InstanceFile,
                data=content,
                config=Config(strict=True),
            )
        except DaciteError as exception:
            raise InstanceFileError(
                str(exception), field=getattr(exception, "field_path", "") or ""
            ) from exception
