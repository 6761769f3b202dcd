"""Oriented forests and the loop-erased-walk spanning tree sampler.

``wilson_rooted`` samples the conductance-weighted uniform spanning tree of a
finite network, oriented toward the chosen root: branches are loop-erased
conductance walks, each surviving edge oriented the way it was traversed.
``sample_oust`` runs it on a wired contraction rooted at the boundary vertex,
which is the finite stand-in for rooting at infinity; ``sample_owusf_window``
composes that with a ball truncation of a lazy source.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MissingBoundary, StepBudgetExceeded, UnknownVertex
from .network import Network, NetworkSource, OrientedEdge, WiredContraction, truncate
from .walk import DEFAULT_STEP_BUDGET


class OrientedForest:
    """Vertex set plus at most one outgoing edge per vertex, with no directed cycle.

    Immutable once built; the constructor rejects self-loops, dangling
    endpoints, tail mismatches, and directed cycles.  Vertices without an
    outgoing edge are the roots.
    """

    __slots__ = ("vertices", "out_edge", "_hash", "_children", "_components")

    def __init__(self, vertices: Iterable[int], out_edge: Mapping[int, OrientedEdge]):
        self.vertices: frozenset[int] = frozenset(vertices)
        self.out_edge: dict[int, OrientedEdge] = dict(out_edge)
        self._hash = None
        self._children = None
        self._components = None
        self._validate()

    def _validate(self) -> None:
        for v, oe in self.out_edge.items():
            if v not in self.vertices:
                raise UnknownVertex(f"out-edge listed for unknown vertex {v}")
            if oe.tail != v:
                raise ValueError(f"out-edge of {v} has tail {oe.tail}")
            if oe.head not in self.vertices:
                raise UnknownVertex(f"edge {oe} leaves the vertex set")
            if oe.is_self_loop:
                raise ValueError(f"self-loop {oe} cannot be a forest edge")
        # functional-graph cycle check: 0 unseen, 1 on stack, 2 done
        state = {v: 0 for v in self.vertices}
        for v0 in self.vertices:
            if state[v0]:
                continue
            chain = []
            v = v0
            while state[v] == 0:
                state[v] = 1
                chain.append(v)
                oe = self.out_edge.get(v)
                if oe is None:
                    break
                v = oe.head
            if state[v] == 1 and self.out_edge.get(v) is not None:
                raise ValueError(f"directed cycle through vertex {v}")
            for w in chain:
                state[w] = 2

    # -- structure -------------------------------------------------------

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if v not in self.out_edge)

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(oe.edge_id for oe in self.out_edge.values())

    def children(self) -> dict[int, tuple[int, ...]]:
        """head -> tails pointing at it, each sorted; cached."""
        if self._children is None:
            acc: dict[int, list[int]] = {v: [] for v in self.vertices}
            for v, oe in self.out_edge.items():
                acc[oe.head].append(v)
            self._children = {v: tuple(sorted(ts)) for v, ts in acc.items()}
        return self._children

    def component_of(self, v: int) -> frozenset[int]:
        if v not in self.vertices:
            raise UnknownVertex(f"vertex {v} not in forest")
        if self._components is None:
            comp: dict[int, frozenset[int]] = {}
            kids = self.children()
            for r in self.roots:
                members = []
                stack = [r]
                while stack:
                    w = stack.pop()
                    members.append(w)
                    stack.extend(kids[w])
                block = frozenset(members)
                for w in members:
                    comp[w] = block
            self._components = comp
        return self._components[v]

    def components(self) -> list[frozenset[int]]:
        self.component_of(next(iter(self.vertices)))
        return sorted({id(c): c for c in self._components.values()}.values(),
                      key=lambda c: min(c))

    def restricted(self, vertices: Iterable[int]) -> "OrientedForest":
        """Sub-forest on the given vertices; out-edges leaving them are dropped."""
        keep = frozenset(vertices)
        out = {v: oe for v, oe in self.out_edge.items()
               if v in keep and oe.head in keep}
        return OrientedForest(keep & self.vertices, out)

    # -- value semantics -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedForest):
            return NotImplemented
        return (self.vertices == other.vertices
                and self.out_edge == other.out_edge)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vertices,
                               frozenset(self.out_edge.items())))
        return self._hash

    def __repr__(self) -> str:
        return (f"OrientedForest(|V|={len(self.vertices)}, "
                f"roots={sorted(self.roots)})")


def forest_to_json(forest: OrientedForest) -> dict:
    return {
        "vertices": sorted(forest.vertices),
        "edges": [
            [v, oe.edge_id, "forward" if oe.forward else "reverse"]
            for v, oe in sorted(forest.out_edge.items())
        ],
        "roots": sorted(forest.roots),
    }


def forest_from_json(data: dict, network: Network) -> OrientedForest:
    out = {}
    for v, eid, direction in data["edges"]:
        e = network.edge(eid)
        tail, head = (e.u, e.v) if direction == "forward" else (e.v, e.u)
        out[v] = OrientedEdge(eid, tail, head, direction == "forward")
    return OrientedForest(data["vertices"], out)


# -- sampler -------------------------------------------------------------

def _lerw_branch(network: Network, start: int, built, rng, max_steps: int):
    """Loop-erased walk from start to the built set, erased on the fly.

    Equivalent to walk_until_hit followed by loop_erase given the same draws;
    kept fused so long branches do not keep the whole trajectory alive.
    """
    verts = [start]
    edges: list[OrientedEdge | None] = [None]
    pos = {start: 0}
    sample = network.sample_out_edge
    steps = 0
    v = start
    while v not in built:
        if steps >= max_steps:
            raise StepBudgetExceeded(
                f"branch from {start} exceeded {max_steps} steps")
        steps += 1
        oe = sample(v, rng)
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
        v = w
    return edges[1:]


def wilson_rooted(network: Network, root: int, order: Sequence[int] | None = None,
                  rng=None, max_steps: int = DEFAULT_STEP_BUDGET) -> OrientedForest:
    """Sample the weighted spanning tree oriented toward ``root``.

    ``order`` fixes the enumeration of branch start vertices; vertices it
    omits are swept afterwards in sorted order.  The resulting distribution
    does not depend on the order.
    """
    if not network.has_vertex(root):
        raise UnknownVertex(f"root {root} not in network")
    if rng is None:
        raise ValueError("an explicit rng handle is required")
    enumeration: list[int] = []
    if order is not None:
        for v in order:
            if not network.has_vertex(v):
                raise UnknownVertex(f"order lists unknown vertex {v}")
            enumeration.append(v)
    enumeration.extend(sorted(network.vertices))

    built = {root}
    out: dict[int, OrientedEdge] = {}
    for v0 in enumeration:
        if v0 in built:
            continue
        branch = _lerw_branch(network, v0, built, rng, max_steps)
        for oe in branch:
            out[oe.tail] = oe
            built.add(oe.tail)
    return OrientedForest(network.vertices, out)


@dataclass(frozen=True)
class WindowSample:
    """One wired-window forest sample.

    ``tree`` spans the contraction and is rooted at the boundary vertex;
    ``forest`` is its restriction to the kept window, with the escape edges
    into the boundary dropped and remembered in ``escapes`` (vertex -> edge
    id it used to reach the boundary).
    """

    contraction: WiredContraction
    tree: OrientedForest
    forest: OrientedForest
    escapes: dict[int, int]


def sample_oust(contraction: WiredContraction, order: Sequence[int] | None = None,
                rng=None, max_steps: int = DEFAULT_STEP_BUDGET) -> WindowSample:
    """Sample the oriented wired spanning tree of a contraction.

    The tree is rooted at the boundary vertex, so every kept vertex points
    along its tree path toward the boundary.
    """
    if contraction.boundary is None:
        raise MissingBoundary("contraction has no boundary vertex")
    tree = wilson_rooted(contraction.network, contraction.boundary,
                         order=order, rng=rng, max_steps=max_steps)
    out = {}
    escapes = {}
    for v, oe in tree.out_edge.items():
        if oe.head == contraction.boundary:
            escapes[v] = oe.edge_id
        else:
            out[v] = oe
    forest = OrientedForest(contraction.kept, out)
    return WindowSample(contraction, tree, forest, escapes)


def sample_owusf_window(source: NetworkSource, depth: int,
                        order: Sequence[int] | None = None, rng=None,
                        max_steps: int = DEFAULT_STEP_BUDGET) -> WindowSample:
    """Truncate a source at the given radius and sample its wired window forest."""
    contraction = truncate(source, depth)
    return sample_oust(contraction, order=order, rng=rng, max_steps=max_steps)
