"""Weighted multigraph networks and wired contractions.

A :class:`Network` is a finite connected multigraph with positive edge
conductances.  Parallel edges and self-loops are allowed and are told apart
by integer edge ids.  Conductances are kept twice: exactly, as
``fractions.Fraction`` for the certification code, and as floats for the
samplers.  The vertex conductance c(v) counts self-loops twice.

:func:`wired_contract` collapses everything outside a kept set into a single
boundary vertex and drops the self-loops this creates at the boundary.
:func:`truncate` does the same for a lazy infinite source, keeping the ball
of a given radius around the source root.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Protocol, Sequence, runtime_checkable

from .errors import (
    DisconnectedNetwork,
    MissingEdge,
    NonPositiveConductance,
    UnknownVertex,
)

BOUNDARY = -1


def as_conductance(value) -> Fraction:
    """Coerce a conductance to an exact positive Fraction.

    Accepts Fraction, int, decimal or p/q strings, and float (binary-exact).
    """
    try:
        if isinstance(value, Fraction):
            c = value
        elif isinstance(value, bool):
            raise TypeError("bool is not a conductance")
        elif isinstance(value, (int, str, float)):
            c = Fraction(value)
        else:
            raise TypeError(f"cannot read conductance from {type(value).__name__}")
    except (ValueError, ZeroDivisionError) as exc:
        raise NonPositiveConductance(f"unparseable conductance {value!r}") from exc
    if c <= 0:
        raise NonPositiveConductance(f"conductance must be positive, got {value!r}")
    return c


@dataclass(frozen=True)
class Edge:
    """Unoriented physical edge.  Endpoints u, v may coincide (self-loop)."""

    id: int
    u: int
    v: int
    c_exact: Fraction

    @property
    def c(self) -> float:
        return float(self.c_exact)

    @property
    def is_self_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class OrientedEdge:
    """A physical edge together with a traversal direction.

    ``forward`` is True when the traversal runs u -> v of the stored edge
    record, so the two orientations of one edge compare unequal while sharing
    the edge id.
    """

    edge_id: int
    tail: int
    head: int
    forward: bool

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge_id, self.head, self.tail, not self.forward)

    @property
    def is_self_loop(self) -> bool:
        return self.tail == self.head


class Network:
    """Finite connected multigraph with positive conductances."""

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple]):
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        self._vertex_set = frozenset(self.vertices)
        if not self.vertices:
            raise DisconnectedNetwork("network needs at least one vertex")

        self.edges: tuple[Edge, ...] = ()
        records = []
        seen_ids = set()
        for rec in edges:
            eid, u, v, c = rec
            eid = int(eid)
            if eid in seen_ids:
                raise ValueError(f"duplicate edge id {eid}")
            seen_ids.add(eid)
            if u not in self._vertex_set or v not in self._vertex_set:
                raise UnknownVertex(f"edge {eid} touches unknown vertex ({u}, {v})")
            records.append(Edge(eid, u, v, as_conductance(c)))
        self.edges = tuple(records)
        self._edge_by_id = {e.id: e for e in self.edges}

        out: dict[int, list[OrientedEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.is_self_loop:
                # both orientations, so the loop weighs 2c(e) at its vertex
                out[e.u].append(OrientedEdge(e.id, e.u, e.v, True))
                out[e.u].append(OrientedEdge(e.id, e.v, e.u, False))
            else:
                out[e.u].append(OrientedEdge(e.id, e.u, e.v, True))
                out[e.v].append(OrientedEdge(e.id, e.v, e.u, False))
        self._out = {v: tuple(oes) for v, oes in out.items()}
        self._c_exact = {
            v: sum((self._edge_by_id[oe.edge_id].c_exact for oe in self._out[v]),
                   Fraction(0))
            for v in self.vertices
        }
        self._cum = {}
        for v in self.vertices:
            weights = [self._edge_by_id[oe.edge_id].c for oe in self._out[v]]
            self._cum[v] = list(accumulate(weights))

        self._check_connected()

    @classmethod
    def from_edges(cls, edges: Sequence[tuple], extra_vertices: Iterable[int] = ()) -> "Network":
        """Build from (u, v, c) triples; edge ids are assigned in order."""
        verts = set(extra_vertices)
        records = []
        for i, (u, v, c) in enumerate(edges):
            verts.update((u, v))
            records.append((i, u, v, c))
        return cls(verts, records)

    def _check_connected(self) -> None:
        if len(self.vertices) == 1:
            return
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for oe in self._out[v]:
                if oe.head not in seen:
                    seen.add(oe.head)
                    queue.append(oe.head)
        if len(seen) != len(self.vertices):
            raise DisconnectedNetwork(
                f"{len(self.vertices) - len(seen)} vertices unreachable")

    # -- lookups ---------------------------------------------------------

    def has_vertex(self, v: int) -> bool:
        return v in self._vertex_set

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise MissingEdge(f"no edge with id {edge_id}") from None

    def oriented(self, edge_id: int, tail: int) -> OrientedEdge:
        """The orientation of edge_id whose tail is the given vertex."""
        e = self.edge(edge_id)
        if tail == e.u:
            return OrientedEdge(e.id, e.u, e.v, True)
        if tail == e.v:
            return OrientedEdge(e.id, e.v, e.u, False)
        raise MissingEdge(f"edge {edge_id} does not touch vertex {tail}")

    def out_edges(self, v: int) -> tuple[OrientedEdge, ...]:
        """All oriented edges with tail v; a self-loop contributes both orientations."""
        try:
            return self._out[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in network") from None

    def edges_between(self, tail: int, head: int) -> list[OrientedEdge]:
        """Oriented edges tail -> head, in edge-id order."""
        found = [oe for oe in self.out_edges(tail) if oe.head == head]
        found.sort(key=lambda oe: oe.edge_id)
        return found

    def conductance_at(self, v: int) -> Fraction:
        """c(v): sum of incident conductances, self-loops counted twice."""
        try:
            return self._c_exact[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in network") from None

    def conductance_at_float(self, v: int) -> float:
        cum = self._cum[v]
        return cum[-1] if cum else 0.0

    def sample_out_edge(self, v: int, rng) -> OrientedEdge:
        """Draw an oriented edge with tail v, with probability c(e)/c(v)."""
        cum = self._cum[v]
        if not cum:
            raise UnknownVertex(f"vertex {v} has no incident edges")
        i = bisect_right(cum, rng.random() * cum[-1])
        out = self._out[v]
        return out[i] if i < len(out) else out[-1]

    def __repr__(self) -> str:
        return f"Network(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def conductance_at(network: Network, v: int) -> Fraction:
    return network.conductance_at(v)


# -- lazy sources --------------------------------------------------------

@dataclass(frozen=True)
class NeighborEdge:
    """One incident edge as reported by a source: id, conductance, far endpoint."""

    edge_id: int
    conductance: Fraction
    other: int


@runtime_checkable
class NetworkSource(Protocol):
    """Lazy, possibly infinite network seen through neighborhood queries.

    Implementations must be pure: repeated ``neighborhood`` calls on the same
    instance return identical tuples, and an edge is reported with the same id
    and conductance from both endpoints.
    """

    root: int

    def neighborhood(self, v: int) -> tuple[NeighborEdge, ...]:
        ...


@dataclass(frozen=True)
class WiredContraction:
    """Result of collapsing everything outside ``kept`` into one boundary vertex.

    ``boundary`` is None when no edge left the kept set.  ``edge_map`` sends
    surviving original edge ids to their ids in ``network`` (here always the
    identity; edges wholly outside the kept set are dropped).  ``root`` and
    ``depth`` are filled in by :func:`truncate`.
    """

    kept: frozenset[int]
    network: Network
    boundary: int | None
    edge_map: dict[int, int]
    root: int | None = None
    depth: int | None = None

    def is_boundary_adjacent(self, v: int) -> bool:
        if self.boundary is None:
            return False
        return any(oe.head == self.boundary for oe in self.network.out_edges(v))

    def boundary_adjacent_vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.kept if self.is_boundary_adjacent(v))


def _fresh_boundary_id(taken: Iterable[int]) -> int:
    taken = set(taken)
    b = BOUNDARY
    while b in taken:
        b -= 1
    return b


def wired_contract(base, keep: Iterable[int]) -> WiredContraction:
    """Wire the complement of ``keep`` into a single boundary vertex.

    ``base`` is a finite :class:`Network` or a :class:`NetworkSource`; for a
    source the kept set must be finite and reachable, and only neighborhoods
    of kept vertices are queried.  Edges inside the kept set survive with
    their ids and conductances; edges leaving it are re-pointed at the
    boundary; edges wholly outside are dropped (they would be boundary
    self-loops).
    """
    kept = frozenset(keep)
    if not kept:
        raise UnknownVertex("kept set is empty")

    incident: dict[int, tuple[int, int, Fraction]] = {}
    if isinstance(base, Network):
        for v in kept:
            if not base.has_vertex(v):
                raise UnknownVertex(f"kept vertex {v} not in network")
        for e in base.edges:
            if e.u in kept or e.v in kept:
                incident[e.id] = (e.u, e.v, e.c_exact)
    else:
        for v in sorted(kept):
            for nb in base.neighborhood(v):
                if nb.edge_id not in incident:
                    incident[nb.edge_id] = (v, nb.other, nb.conductance)

    boundary = _fresh_boundary_id(kept)
    has_boundary = False
    records = []
    for eid in sorted(incident):
        u, v, c = incident[eid]
        cu = u if u in kept else boundary
        cv = v if v in kept else boundary
        if cu == boundary and cv == boundary:
            continue
        if cu == boundary or cv == boundary:
            has_boundary = True
        records.append((eid, cu, cv, c))

    verts = set(kept)
    if has_boundary:
        verts.add(boundary)
    network = Network(verts, records)
    return WiredContraction(
        kept=kept,
        network=network,
        boundary=boundary if has_boundary else None,
        edge_map={eid: eid for (eid, _, _, _) in records},
    )


def truncate(source: NetworkSource, depth: int) -> WiredContraction:
    """Wired contraction of a source onto the ball of the given radius.

    Vertices are discovered breadth-first from the source root, so repeated
    truncations of one instance agree on overlapping balls.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    dist = {source.root: 0}
    order = [source.root]
    queue = deque([source.root])
    while queue:
        v = queue.popleft()
        if dist[v] == depth:
            continue
        for nb in source.neighborhood(v):
            if nb.other not in dist:
                dist[nb.other] = dist[v] + 1
                order.append(nb.other)
                queue.append(nb.other)
    contraction = wired_contract(source, order)
    return WiredContraction(
        kept=contraction.kept,
        network=contraction.network,
        boundary=contraction.boundary,
        edge_map=contraction.edge_map,
        root=source.root,
        depth=depth,
    )


def induced_network(contraction: WiredContraction) -> Network:
    """The kept window with the boundary vertex and its edges removed."""
    records = [
        (e.id, e.u, e.v, e.c_exact)
        for e in contraction.network.edges
        if e.u in contraction.kept and e.v in contraction.kept
    ]
    return Network(contraction.kept, records)


# -- JSON graph format ---------------------------------------------------

def _format_conductance(c: Fraction) -> str:
    # exact decimal when the denominator is 2^a 5^b, else p/q
    den = c.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        shift = max(twos, fives)
        scaled = c.numerator * (10 ** shift) // c.denominator
        text = str(scaled)
        if shift == 0:
            return text
        sign = "-" if scaled < 0 else ""
        digits = text.lstrip("-").rjust(shift + 1, "0")
        return f"{sign}{digits[:-shift]}.{digits[-shift:]}"
    return f"{c.numerator}/{c.denominator}"


def network_to_json(network: Network) -> dict:
    return {
        "vertices": list(network.vertices),
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "c": _format_conductance(e.c_exact)}
            for e in network.edges
        ],
    }


def network_from_json(data: dict) -> Network:
    try:
        vertices = data["vertices"]
        edges = [(e["id"], e["u"], e["v"], e["c"]) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from exc
    return Network(vertices, edges)


def load_network(path) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return network_from_json(json.load(fh))


def save_network(network: Network, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(network_to_json(network), fh, indent=2, sort_keys=True)
        fh.write("\n")
