#!/usr/bin/env python

import json
import math
import os
import random
from typing import List

import pytest

import zonostrat
from zonostrat.geometry.zonotope import Instance, build_instance, stanley_count

TEMPLATES_FOLDER = os.path.join(
    os.path.dirname(os.path.realpath(zonostrat.__file__)), "templates", "common"
)

HIRZEBRUCH2 = [[1, 0], [0, 1], [-1, 2], [0, -1]]
BLOWUP_HIRZEBRUCH2 = [[1, 0], [0, 1], [-1, 2], [0, -1], [-1, -1]]

# Canonical coordinates of the lattice points of Z for the Hirzebruch example.
HIRZEBRUCH2_POINTS = [(0, 0), (1, 0), (1, 1), (2, 1), (3, 1)]

_ENTRIES = [-3, -2, -1, 0, 1, 2, 3]
_WEIGHTS = [1, 2, 4, 6, 4, 2, 1]

MAX_STANLEY_COUNT = 40
MAX_BOX_SIZE = 300


def template_path(filename: str) -> str:
    return os.path.join(TEMPLATES_FOLDER, filename)


def _box_size(instance: Instance) -> int:
    return math.prod(
        sum(abs(a) for a in row) + 1 for row in instance.cokernel_rows
    )


def random_instance(seed: int, full_rank: bool = False) -> Instance:
    """
    Draws a small instance with n <= 3, k <= 7 and entries in [-3, 3].

    Duplicates, zero vectors and rank deficiency are allowed unless
    `full_rank` is set. Instances with many lattice points are redrawn.
    """
    generator = random.Random(seed)
    while True:
        n = generator.randint(1, 3)
        k = generator.randint(1, 7)
        vectors = [generator.choices(_ENTRIES, _WEIGHTS, k=n) for _ in range(k)]

        instance = build_instance(vectors, name=f"random-{seed}")
        if full_rank and instance.rank != n:
            continue
        if _box_size(instance) > MAX_BOX_SIZE:
            continue
        if stanley_count(instance) > MAX_STANLEY_COUNT:
            continue

        return instance


@pytest.fixture
def hirzebruch2() -> Instance:
    return build_instance(HIRZEBRUCH2, name="hirzebruch2")


@pytest.fixture
def blowup_hirzebruch2() -> Instance:
    return build_instance(BLOWUP_HIRZEBRUCH2, name="blowup_hirzebruch2")


@pytest.fixture
def write_instance(tmp_path):
    def write(vectors: List[List[int]], name: str = "instance", **fields) -> str:
        filepath = tmp_path / f"{name}.json"
        content = {"name": name, "vectors": vectors}
        content.update(fields)
        filepath.write_text(json.dumps(content), encoding="utf-8")
        return str(filepath)

    return write
