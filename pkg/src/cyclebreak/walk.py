"""Conductance-weighted random walk and chronological loop erasure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection

from .errors import StepBudgetExceeded, UnknownVertex
from .network import Network, OrientedEdge

DEFAULT_STEP_BUDGET = 10**8


@dataclass(frozen=True)
class Path:
    """A walk trajectory: start vertex plus the oriented edges traversed."""

    start: int
    edges: tuple[OrientedEdge, ...] = ()

    def __post_init__(self):
        prev = self.start
        for oe in self.edges:
            if oe.tail != prev:
                raise ValueError(f"edge {oe} does not chain from {prev}")
            prev = oe.head

    @property
    def vertices(self) -> tuple[int, ...]:
        seq = [self.start]
        seq.extend(oe.head for oe in self.edges)
        return tuple(seq)

    @property
    def end(self) -> int:
        return self.edges[-1].head if self.edges else self.start

    def __len__(self) -> int:
        return len(self.edges)


def walk_step(network: Network, v: int, rng) -> OrientedEdge:
    """One step of the conductance walk: P(e) = c(e)/c(v), self-loops twice."""
    return network.sample_out_edge(v, rng)


def walk_until_hit(network: Network, start: int, targets: Collection[int], rng,
                   max_steps: int = DEFAULT_STEP_BUDGET) -> Path:
    """Walk from ``start`` until the first vertex of ``targets`` is hit.

    Returns the whole trajectory; the empty path if start is already a target.
    Raises StepBudgetExceeded after ``max_steps`` steps without a hit.
    """
    if not network.has_vertex(start):
        raise UnknownVertex(f"start vertex {start} not in network")
    if start in targets:
        return Path(start)
    edges = []
    v = start
    for _ in range(max_steps):
        oe = network.sample_out_edge(v, rng)
        edges.append(oe)
        v = oe.head
        if v in targets:
            return Path(start, tuple(edges))
    raise StepBudgetExceeded(
        f"no hit within {max_steps} steps from {start}")


def loop_erase(path: Path) -> Path:
    """Chronological loop erasure, keeping the identity of surviving edges.

    Cycles are erased as they close: returning to a vertex already on the
    current erased path discards everything after its earlier visit.  The
    surviving edge into each retained vertex is the one traversed on the
    step that last entered it.
    """
    verts = [path.start]
    edges: list[OrientedEdge | None] = [None]
    pos = {path.start: 0}
    for oe in path.edges:
        w = oe.head
        j = pos.get(w)
        if j is not None:
            for k in range(len(verts) - 1, j, -1):
                del pos[verts[k]]
            del verts[j + 1:]
            del edges[j + 1:]
        else:
            pos[w] = len(verts)
            verts.append(w)
            edges.append(oe)
    return Path(path.start, tuple(e for e in edges[1:]))
