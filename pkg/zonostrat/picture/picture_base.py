#!/usr/bin/env python

"""
zonostrat.picture.picture_base
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Base components of SVG pictures.

"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

# pylint: disable=wrong-import-position
import matplotlib.pyplot as plt  # noqa: E402

from zonostrat.algebra.linalg import IntMatrix  # noqa: E402
from zonostrat.geometry.strata import Stratum  # noqa: E402
from zonostrat.geometry.zonotope import Instance  # noqa: E402

DEFAULT_PALETTE = [
    "#d62728",
    "#1f77b4",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
]


@dataclass
class RenderConfiguration:
    """Class describing parameters of rendered pictures."""

    palette: List[str] = field(default_factory=lambda: list(DEFAULT_PALETTE))
    """The colours assigned to strata and lattice points in sorted point order."""

    point_radius: float = 4.0
    """The marker radius of points in typographic points."""

    figure_inches: float = 5.0
    """The width and height of the picture in inches."""

    hair_length: float = 0.04
    """The length of orientation hairs relative to the picture extent."""


class PictureBase(ABC):
    """
    A base class for pictures of an instance.
    """

    def __init__(
        self,
        configuration: RenderConfiguration,
        instance: Instance,
        strata: List[Stratum],
        transform: Optional[IntMatrix] = None,
    ):
        if not configuration.palette:
            raise ValueError("At least one palette colour is required!")

        self._configuration = configuration
        self._instance = instance
        self._strata = sorted(strata, key=lambda stratum: stratum.point.p)
        self._transform = transform

    @staticmethod
    @abstractmethod
    def name() -> str:
        """Returns the name of the picture, used as the file name stem."""

    @abstractmethod
    def check_supported(self) -> None:
        """
        Raises:
            UnsupportedDimension: the picture can not be drawn for the instance
        """

    @abstractmethod
    def _draw(self, axes) -> None:
        pass

    def _colour(self, index: int) -> str:
        palette = self._configuration.palette
        return palette[index % len(palette)]

    @staticmethod
    def _floats(point: Sequence[Fraction]) -> Tuple[float, ...]:
        return tuple(float(value) for value in point)

    def render(self, filepath: str) -> None:
        """
        Draws the picture and writes it as a standalone SVG file.

        Parameters:
            `filepath` (str): destination path
        """
        self.check_supported()

        plt.rcParams["svg.hashsalt"] = "zonostrat"
        plt.rcParams["svg.fonttype"] = "none"

        size = self._configuration.figure_inches
        figure, axes = plt.subplots(figsize=(size, size))
        try:
            self._draw(axes)
            axes.set_aspect("equal", adjustable="datalim")
            axes.autoscale_view()
            figure.savefig(
                filepath, format="svg", bbox_inches="tight", metadata={"Date": None}
            )
        finally:
            plt.close(figure)

        logging.info("Picture '%s' was written to %s.", self.name(), filepath)
