#!/usr/bin/env python

import matplotlib.pyplot as plt
import numpy as np
import pytest

from zonostrat.errors import UnsupportedDimension
from zonostrat.geometry.strata import enumerate_strata
from zonostrat.geometry.zonotope import build_instance, change_of_basis
from zonostrat.picture.arrangement_picture import ArrangementPicture, _outline
from zonostrat.picture.picture_base import RenderConfiguration
from zonostrat.picture.picture_factory import PictureFactory
from zonostrat.picture.zonotope_picture import ZonotopePicture


def _render_all(instance, directory, transform=None):
    strata = enumerate_strata(instance)
    written = []
    for picture in PictureFactory.create_all(RenderConfiguration(), instance, strata, transform):
        path = directory / f"{picture.name()}.svg"
        picture.render(str(path))
        written.append(path)

    return written


def test_pictures_of_hirzebruch_surface(tmp_path, hirzebruch2):
    transform = change_of_basis(hirzebruch2, [[1, -2, 1, 0], [0, 1, 0, 1]])
    written = _render_all(hirzebruch2, tmp_path, transform)

    assert [path.name for path in written] == ["arrangement.svg", "zonotope.svg"]
    for path in written:
        text = path.read_text(encoding="utf-8")
        assert text.lstrip().startswith("<?xml")
        assert "<svg" in text


def test_pictures_are_reproducible(tmp_path, hirzebruch2):
    (tmp_path / "first").mkdir()
    (tmp_path / "second").mkdir()

    first = _render_all(hirzebruch2, tmp_path / "first")
    second = _render_all(hirzebruch2, tmp_path / "second")

    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "vectors",
    [
        [[1], [-1]],
        [[1]],
        [[1, 0]],
        [[2]],
        [[1, 1], [1, -1]],
    ],
)
def test_pictures_of_small_instances(tmp_path, vectors):
    assert len(_render_all(build_instance(vectors), tmp_path)) == 2


def test_zonotope_picture_requires_small_codimension(tmp_path, blowup_hirzebruch2):
    strata = enumerate_strata(blowup_hirzebruch2)
    picture = ZonotopePicture(RenderConfiguration(), blowup_hirzebruch2, strata)

    with pytest.raises(UnsupportedDimension):
        picture.render(str(tmp_path / "zonotope.svg"))

    ArrangementPicture(RenderConfiguration(), blowup_hirzebruch2, strata).render(
        str(tmp_path / "arrangement.svg")
    )
    assert (tmp_path / "arrangement.svg").exists()


def test_arrangement_picture_requires_small_dimension(tmp_path):
    instance = build_instance([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]])
    picture = ArrangementPicture(RenderConfiguration(), instance, enumerate_strata(instance))

    with pytest.raises(UnsupportedDimension):
        picture.render(str(tmp_path / "arrangement.svg"))


def test_picture_factory_rejects_unknown_pictures(hirzebruch2):
    with pytest.raises(ValueError, match="Empty"):
        PictureFactory.create("", RenderConfiguration(), hirzebruch2, [])

    with pytest.raises(ValueError, match="Unknown"):
        PictureFactory.create("fan", RenderConfiguration(), hirzebruch2, [])


def test_empty_palette_is_rejected(hirzebruch2):
    with pytest.raises(ValueError):
        ZonotopePicture(RenderConfiguration(palette=[]), hirzebruch2, [])


def test_zonotope_outline_is_the_zonogon(hirzebruch2):
    picture = ZonotopePicture(RenderConfiguration(), hirzebruch2, enumerate_strata(hirzebruch2))
    figure, axes = plt.subplots()
    try:
        picture._draw(axes)
        assert len(axes.patches) == 1
        # Three generator directions give a hexagon.
        assert len(np.unique(axes.patches[0].get_xy(), axis=0)) == 6
    finally:
        plt.close(figure)


def test_zonotope_of_a_segment_is_a_line():
    instance = build_instance([[1], [-1]])
    picture = ZonotopePicture(RenderConfiguration(), instance, enumerate_strata(instance))
    figure, axes = plt.subplots()
    try:
        picture._draw(axes)
        assert not axes.patches
        outline = axes.lines[0]
        assert abs(outline.get_xdata()[1] - outline.get_xdata()[0]) == 2
    finally:
        plt.close(figure)


def test_outline_drops_interior_points():
    outline = _outline([(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (1.0, 1.0), (0.0, 1.0)])

    assert sorted(map(tuple, outline)) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
