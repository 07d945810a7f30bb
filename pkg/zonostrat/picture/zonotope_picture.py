#!/usr/bin/env python

"""
zonostrat.picture.zonotope_picture
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Picture of the closed zonotope with the lattice points of Z coloured by stratum.

"""

from typing import Tuple

import numpy as np
from scipy.spatial import ConvexHull

from zonostrat.errors import UnsupportedDimension
from zonostrat.geometry.zonotope import closed_lattice_points, to_basis
from zonostrat.picture.picture_base import PictureBase


class ZonotopePicture(PictureBase):
    """
    Draws the closed zonotope in R^{k−r} for k − r <= 2.

    Lattice points of the closure are hollow, lattice points of Z are filled
    with the colour of their stratum. Segments and points are drawn on a line.
    """

    @staticmethod
    def name() -> str:
        return "zonotope"

    def check_supported(self) -> None:
        if self._instance.codim > 2:
            raise UnsupportedDimension(
                f"Zonotope picture requires k − r <= 2, got k − r = {self._instance.codim}!"
            )

    def _plane(self, p) -> Tuple[int, int]:
        q = to_basis(self._transform, p)
        if len(q) == 2:
            return q[0], q[1]
        if len(q) == 1:
            return q[0], 0

        return 0, 0

    def _draw(self, axes) -> None:
        radius = self._configuration.point_radius
        closed = [self._plane(point.p) for point in closed_lattice_points(self._instance)]

        # The vertices of the closure are lattice points, so their hull is the closure.
        points = np.array(sorted(set(closed)), dtype=float)
        if len(points) >= 3 and np.linalg.matrix_rank(points - points[0]) == 2:
            outline = points[ConvexHull(points).vertices]
            axes.fill(
                outline[:, 0], outline[:, 1],
                facecolor="#eeeeee", edgecolor="black", linewidth=0.8, zorder=1,
            )
        elif len(points) >= 2:
            axes.plot(
                [points[0][0], points[-1][0]], [points[0][1], points[-1][1]],
                color="black", linewidth=0.8, zorder=1,
            )

        axes.plot(
            [x for x, _ in closed], [y for _, y in closed],
            linestyle="none", marker="o", markersize=radius * 1.5,
            markerfacecolor="white", markeredgecolor="black", zorder=2,
        )

        for index, stratum in enumerate(self._strata):
            x, y = self._plane(stratum.point.p)
            axes.plot(
                [x], [y], linestyle="none", marker="o", markersize=radius * 1.5,
                color=self._colour(index), zorder=3,
            )

        axes.set_axis_off()
