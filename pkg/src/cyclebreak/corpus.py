"""Small named fixtures used by certification and tests.

Contractions here are hand-built: vertex -1 is the boundary, every
nonnegative vertex is kept.  They stay deliberately tiny (at most 5 kept
vertices and 8 edges) so the exact oracles can enumerate every state.
"""

from __future__ import annotations

from fractions import Fraction

from .network import BOUNDARY, Network, WiredContraction

F = Fraction


def wired_fixture(edges) -> WiredContraction:
    """Contraction from (u, v, c) triples; vertex -1 is the boundary."""
    net = Network.from_edges(edges)
    kept = frozenset(v for v in net.vertices if v != BOUNDARY)
    return WiredContraction(kept, net, BOUNDARY,
                            {e.id: e.id for e in net.edges})


_B = BOUNDARY

_CORPUS: tuple[tuple[str, tuple], ...] = (
    ("single-vertex-parallel", (
        (0, _B, 1), (0, _B, F(1, 2)))),
    ("two-path", (
        (0, 1, 1), (1, _B, 2))),
    ("wired-pair-triangle", (
        (0, 1, 1), (0, _B, 2), (1, _B, 3))),
    ("parallel-mix", (
        (0, 1, 1), (0, 1, F(1, 2)), (1, _B, F(1, 3)), (0, _B, 5))),
    ("loop-decorated", (
        (0, 1, 1), (1, _B, 1), (0, 0, F(7, 3)), (0, _B, F(1, 2)))),
    ("wired-triangle-unit", (
        (0, 1, 1), (1, 2, 1), (0, 2, 1),
        (0, _B, 1), (1, _B, 1), (2, _B, 1))),
    ("triangle-pendant", (
        (0, 1, 1), (1, 2, 2), (0, 2, 3), (0, _B, 1))),
    ("weighted-star", (
        (0, 1, 1), (0, 2, F(1, 2)), (0, 3, F(1, 3)),
        (1, _B, 2), (3, _B, F(3, 4)))),
    ("wired-cycle", (
        (0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 2), (0, _B, 1))),
    ("wired-triangle-mixed", (
        (0, 1, 1), (1, 2, 2), (0, 2, 3),
        (0, _B, F(1, 2)), (1, _B, F(1, 3)), (2, _B, F(1, 5)))),
    ("odd-rationals", (
        (0, 1, F(22, 7)), (1, _B, F(355, 113)), (0, _B, F(1, 97)))),
    ("wired-five-chain", (
        (0, 1, 1), (1, 2, F(1, 2)), (2, 3, F(1, 4)), (3, 4, F(1, 8)),
        (4, _B, F(1, 16)), (0, _B, 2))),
)


def certification_corpus() -> tuple[tuple[str, WiredContraction], ...]:
    return tuple((name, wired_fixture(edges)) for name, edges in _CORPUS)


def corpus_fixture(name: str) -> WiredContraction:
    for n, edges in _CORPUS:
        if n == name:
            return wired_fixture(edges)
    raise KeyError(f"no corpus fixture named {name!r}")


# -- plain networks ------------------------------------------------------

def k4_unit() -> Network:
    """Complete graph on 4 vertices, unit conductances; 16 spanning trees."""
    return Network.from_edges([
        (0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])


def triangle_123() -> Network:
    """Triangle with conductances 1, 2, 3; tree probabilities 2/11, 3/11, 6/11."""
    return Network.from_edges([(0, 1, 1), (1, 2, 2), (0, 2, 3)])


def path_network(n: int) -> Network:
    return Network.from_edges([(i, i + 1, 1) for i in range(n - 1)])


def cycle_network(n: int, weights=None) -> Network:
    if weights is None:
        weights = [1] * n
    return Network.from_edges(
        [(i, (i + 1) % n, weights[i]) for i in range(n)])
