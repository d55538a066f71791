"""Fixture condivise: raggi degli esempi e generatori casuali con seme fisso."""

from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from toric_deform.polyhedra import ConeDesc, PolytopeDesc  # noqa: E402


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def orthant3() -> ConeDesc:
    return ConeDesc.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def conifold_rays():
    return [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]


@pytest.fixture
def flop_summands():
    def _build(a: int, b: int):
        return [
            PolytopeDesc.from_points([(1, 0), (0, 0)]),
            PolytopeDesc.from_points([(0, 1), (0, 0)]),
            PolytopeDesc.from_points([(-a, -b), (0, 0)]),
        ]

    return _build


@pytest.fixture
def an_summands():
    def _build(k: int):
        return [PolytopeDesc.from_points([(0,), (1,)])] * (k + 1)

    return _build


def hexagon_rays(a: int, b: int):
    return [(1, 0, 1), (0, 1, 1), (-a, -b, 1), (1, 1, 1), (-a, 1 - b, 1), (1 - a, -b, 1)]
