#!/usr/bin/env python

"""
zonostrat.picture.arrangement_picture
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Picture of the oriented toric arrangement on a fundamental domain.

"""

import itertools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull

from zonostrat.algebra.linalg import fraction_rows, matrix_rows, rat_matrix
from zonostrat.errors import UnsupportedDimension
from zonostrat.picture.picture_base import PictureBase

# A closed half-plane `coefficients · t <= rhs` in domain coordinates.
_HalfSpace = Tuple[Tuple[Fraction, ...], Fraction]


def _region_vertices(half_spaces: Sequence[_HalfSpace], dim: int) -> List[Tuple[Fraction, ...]]:
    """Enumerates the vertices of a bounded region of dimension 1 or 2."""
    vertices = set()
    for chosen in itertools.combinations(half_spaces, dim):
        if dim == 1:
            (a,), b = chosen[0]
            if a == 0:
                continue
            point = (b / a,)
        else:
            ((a1, a2), b1), ((c1, c2), b2) = chosen
            det = a1 * c2 - a2 * c1
            if det == 0:
                continue
            point = ((b1 * c2 - a2 * b2) / det, (a1 * b2 - b1 * c1) / det)

        if all(
            sum((a * x for a, x in zip(coefficients, point)), Fraction(0)) <= rhs
            for coefficients, rhs in half_spaces
        ):
            vertices.add(point)

    return sorted(vertices)


def _outline(vertices: Sequence[Tuple[float, float]]) -> np.ndarray:
    """The vertices of a full-dimensional planar region in counter-clockwise order."""
    points = np.array(vertices, dtype=float)
    return points[ConvexHull(points).vertices]


class ArrangementPicture(PictureBase):
    """
    Draws the hyperplanes ⟨y, v_j⟩ ∈ Z with orientation hairs on a fundamental
    domain of φ^{-1}(Z^k), and every stratum in its colour.

    A one-dimensional arrangement is drawn as a segment with marked points.
    """

    @staticmethod
    def name() -> str:
        return "arrangement"

    def check_supported(self) -> None:
        if self._instance.n not in (1, 2):
            raise UnsupportedDimension(
                f"Arrangement picture requires n = 2 or n = 1, got n = {self._instance.n}!"
            )

    def _domain_basis(self) -> List[List[Fraction]]:
        lattice = self._instance.preimage_lattice
        return fraction_rows(lattice.lattice) + [
            [Fraction(value) for value in row] for row in matrix_rows(lattice.kernel)
        ]

    def _to_plane(self, basis: List[List[Fraction]], t: Sequence[Fraction]) -> Tuple[float, float]:
        y = [sum((t_i * row[c] for t_i, row in zip(t, basis)), Fraction(0)) for c in range(len(basis[0]))]
        if len(y) == 1:
            return float(y[0]), 0.0

        return float(y[0]), float(y[1])

    def _unit_box(self) -> List[_HalfSpace]:
        n = self._instance.n
        box = []
        for i in range(n):
            unit = tuple(Fraction(1 if c == i else 0) for c in range(n))
            box.append((unit, Fraction(1)))
            box.append((tuple(-a for a in unit), Fraction(0)))

        return box

    def _draw(self, axes) -> None:
        n = self._instance.n
        basis = self._domain_basis()
        values = [
            tuple(sum((b * a for b, a in zip(row, v)), Fraction(0)) for row in basis)
            for v in self._instance.vectors
        ]
        box = self._unit_box()

        corners = [
            self._to_plane(basis, t) for t in itertools.product((Fraction(0), Fraction(1)), repeat=n)
        ]
        extent = max(
            max(x for x, _ in corners) - min(x for x, _ in corners),
            max(y for _, y in corners) - min(y for _, y in corners),
            1.0,
        )

        if n == 2:
            outline = _outline(corners)
            axes.fill(
                outline[:, 0], outline[:, 1],
                facecolor="none", edgecolor="black", linewidth=0.8,
            )
        else:
            axes.plot([x for x, _ in corners], [0.0, 0.0], color="black", linewidth=0.8)

        self._draw_hyperplanes(axes, basis, values, box, extent)
        self._draw_strata(axes, basis, values, box)

        axes.set_axis_off()

    def _draw_hyperplanes(self, axes, basis, values, box, extent) -> None:
        n = self._instance.n
        hair = self._configuration.hair_length * extent

        for vector, value in zip(self._instance.vectors, values):
            if not any(value):
                continue

            low = math.ceil(sum(min(Fraction(0), c) for c in value))
            high = math.floor(sum(max(Fraction(0), c) for c in value))
            norm = math.hypot(*vector) if n == 2 else abs(vector[0])
            direction = tuple(-a / norm * hair for a in vector)

            for level in range(low, high + 1):
                line = box + [(value, Fraction(level)), (tuple(-c for c in value), Fraction(-level))]
                points = [self._to_plane(basis, t) for t in _region_vertices(line, n)]
                if not points:
                    continue

                if n == 2:
                    if len(points) < 2:
                        continue
                    start, end = points[0], points[-1]
                    axes.plot([start[0], end[0]], [start[1], end[1]], color="black", linewidth=0.8)
                    anchors = [
                        (start[0] + (end[0] - start[0]) * s, start[1] + (end[1] - start[1]) * s)
                        for s in (0.25, 0.5, 0.75)
                    ]
                else:
                    anchors = [points[0]]
                    axes.plot([points[0][0]], [0.0], marker="|", color="black", markersize=12)

                for x, y in anchors:
                    dx = direction[0]
                    dy = direction[1] if n == 2 else 0.0
                    axes.plot([x, x + dx], [y, y + dy], color="black", linewidth=0.6)

    def _draw_strata(self, axes, basis, values, box) -> None:
        n = self._instance.n
        radius = self._configuration.point_radius

        inverse = fraction_rows(rat_matrix(basis, n).inv())
        ordered = sorted(enumerate(self._strata), key=lambda item: -item[1].dim_lift)
        for index, stratum in ordered:
            colour = self._colour(index)
            t_witness = [
                sum((w * inverse[r][c] for r, w in enumerate(stratum.witness)), Fraction(0))
                for c in range(n)
            ]
            centre = [-math.floor(value) for value in t_witness]

            for offset in itertools.product(range(-2, 3), repeat=n):
                shift = [c + o for c, o in zip(centre, offset)]
                region = list(box)
                for value, m in zip(values, stratum.label):
                    moved = sum((s * c for s, c in zip(shift, value)), Fraction(0))
                    region.append((value, m + moved))
                    region.append((tuple(-c for c in value), -(m - 1 + moved)))

                points = [self._to_plane(basis, t) for t in _region_vertices(region, n)]
                if not points:
                    continue

                self._draw_region(axes, points, stratum.dim_lift, colour, radius)

    @staticmethod
    def _draw_region(axes, points, dim_lift, colour, radius) -> None:
        distinct = sorted(set(points))
        if dim_lift == 0:
            x, y = distinct[0]
            axes.plot([x], [y], marker="o", color=colour, markersize=radius * 1.5, zorder=4)
        elif len(distinct) <= dim_lift:
            # Clipped to a piece of the domain boundary.
            return
        elif dim_lift == 1:
            (x0, y0), (x1, y1) = distinct[0], distinct[-1]
            axes.plot([x0, x1], [y0, y1], color=colour, linewidth=radius * 0.75, zorder=3)
        else:
            polygon = _outline(distinct)
            axes.fill(
                polygon[:, 0], polygon[:, 1],
                color=colour, alpha=0.35, linewidth=0, zorder=2,
            )
