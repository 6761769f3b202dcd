"""Shared fixtures: tiny named networks and contractions."""

from __future__ import annotations

import pytest

from cyclebreak.corpus import (
    certification_corpus,
    corpus_fixture,
    k4_unit,
    triangle_123,
)


@pytest.fixture
def k4():
    return k4_unit()


@pytest.fixture
def triangle():
    return triangle_123()


@pytest.fixture
def parallel_pair():
    # one kept vertex, two parallel edges to the boundary (conductances 1, 1/2)
    return corpus_fixture("single-vertex-parallel")


@pytest.fixture
def pair_triangle():
    return corpus_fixture("wired-pair-triangle")


@pytest.fixture(scope="session")
def corpus():
    return certification_corpus()
