#!/usr/bin/env python

import pytest

from tests.conftest import HIRZEBRUCH2, template_path
from zonostrat.errors import DimensionMismatch, InstanceFileError
from zonostrat.reader.json_reader import JsonInstanceReader
from zonostrat.reader.plain_reader import PlainInstanceReader
from zonostrat.reader.reader_factory import InstanceReaderFactory


def test_json_reader_reads_templates():
    content = JsonInstanceReader(template_path("hirzebruch2.json")).read()

    assert content.vectors == HIRZEBRUCH2
    assert content.paper_pi == [[1, -2, 1, 0], [0, 1, 0, 1]]
    assert content.name == "hirzebruch2"


def test_json_reader_optional_fields(write_instance):
    filepath = write_instance([[1], [-1]], name="segment")
    content = JsonInstanceReader(filepath).read()

    assert content.vectors == [[1], [-1]]
    assert content.paper_pi is None


def test_json_reader_reports_syntax_errors_with_line(tmp_path):
    filepath = tmp_path / "broken.json"
    filepath.write_text('{\n  "vectors": [[1, 2],\n  [3 4]]\n}\n', encoding="utf-8")

    with pytest.raises(InstanceFileError) as error:
        JsonInstanceReader(str(filepath)).read()

    assert error.value.line == 3
    assert str(error.value).startswith("line 3")


def test_json_reader_requires_vectors(tmp_path):
    filepath = tmp_path / "empty.json"
    filepath.write_text('{"name": "nothing"}', encoding="utf-8")

    with pytest.raises(InstanceFileError) as error:
        JsonInstanceReader(str(filepath)).read()

    assert error.value.field == "vectors"


@pytest.mark.parametrize(
    "vectors",
    [
        [[1, "2"]],
        [[1, 2.5]],
        [[True, 0]],
        [],
    ],
)
def test_json_reader_rejects_non_integer_entries(write_instance, vectors):
    with pytest.raises(InstanceFileError):
        JsonInstanceReader(write_instance(vectors)).read()


def test_json_reader_rejects_unknown_fields(write_instance):
    with pytest.raises(InstanceFileError):
        JsonInstanceReader(write_instance([[1]], colour="red")).read()


def test_json_reader_rejects_mixed_dimensions(write_instance):
    with pytest.raises(DimensionMismatch):
        JsonInstanceReader(write_instance([[1, 0], [1]])).read()


def test_json_reader_checks_paper_pi_shape(write_instance):
    filepath = write_instance([[1], [-1]], paper_pi=[[1, 1, 0]])

    with pytest.raises(InstanceFileError) as error:
        JsonInstanceReader(filepath).read()

    assert error.value.field == "paper_pi"


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InstanceFileError):
        JsonInstanceReader(str(tmp_path / "missing.json")).read()


def test_plain_reader(tmp_path):
    filepath = tmp_path / "hirzebruch.txt"
    filepath.write_text(
        "# Hirzebruch surface\n1 0\n0, 1\n\n-1 2  # ray\n0 -1\n", encoding="utf-8"
    )

    content = PlainInstanceReader(str(filepath)).read()

    assert content.vectors == HIRZEBRUCH2
    assert content.name == "hirzebruch"


def test_plain_reader_reports_line_of_bad_token(tmp_path):
    filepath = tmp_path / "bad.txt"
    filepath.write_text("1 0\n0 x\n", encoding="utf-8")

    with pytest.raises(InstanceFileError) as error:
        PlainInstanceReader(str(filepath)).read()

    assert error.value.line == 2
    assert error.value.field == "vectors"


def test_reader_factory():
    assert isinstance(InstanceReaderFactory.create("json", "a.json"), JsonInstanceReader)
    assert isinstance(InstanceReaderFactory.create("plain", "a.txt"), PlainInstanceReader)

    with pytest.raises(ValueError, match="Empty"):
        InstanceReaderFactory.create("", "a.json")

    with pytest.raises(ValueError, match="Unknown"):
        InstanceReaderFactory.create("yaml", "a.yaml")

    with pytest.raises(ValueError):
        InstanceReaderFactory.create("json", "")
