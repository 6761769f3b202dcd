"""The single-edge update move on oriented forests, and chains built from it.

``update(f, e)`` tries to insert the oriented edge e into the forest f.  If
the physical edge is already present, or e is a self-loop, nothing happens.
Otherwise exactly one forest edge d adjacent to tail(e) is deleted: when
head(e) already flows into tail(e) the unique directed path from head(e) to
tail(e) is reversed and its last edge is the one deleted, otherwise the
outgoing edge of tail(e) is deleted.  Either way the unoriented move is
"add e, drop d", and the result is again a valid oriented forest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import MissingEdge, RootTail, UnknownVertex
from .network import Network, OrientedEdge
from .wilson import OrientedForest

NO_OP = "no-op"
PAST_CASE = "past-case"
NON_PAST_CASE = "non-past-case"


def past(forest: OrientedForest, v: int) -> frozenset[int]:
    """Vertices with a directed path into v, including v itself."""
    if v not in forest.vertices:
        raise UnknownVertex(f"vertex {v} not in forest")
    kids = forest.children()
    seen = [v]
    stack = [v]
    while stack:
        w = stack.pop()
        for u in kids[w]:
            seen.append(u)
            stack.append(u)
    return frozenset(seen)


@dataclass(frozen=True)
class UpdateOutcome:
    """Result forest plus what the move did.

    ``deleted`` is the removed forest edge (None for a no-op) and
    ``reversed_path`` lists the forest edges that changed orientation, in
    path order from head(e) toward tail(e); it is empty outside the past case.
    """

    result: OrientedForest
    case: str
    deleted: OrientedEdge | None = None
    reversed_path: tuple[OrientedEdge, ...] = ()


def update(forest: OrientedForest, e: OrientedEdge) -> UpdateOutcome:
    """Apply the single-edge move at e.  See the module docstring.

    Raises RootTail when tail(e) has no outgoing edge and the no-op rule does
    not already apply.
    """
    if e.tail not in forest.vertices or e.head not in forest.vertices:
        raise UnknownVertex(f"edge {e} leaves the forest vertex set")
    if e.is_self_loop or e.edge_id in forest.edge_ids:
        return UpdateOutcome(forest, NO_OP)
    if e.tail not in forest.out_edge:
        raise RootTail(f"tail of {e} is a root of the forest")

    if e.head in past(forest, e.tail):
        # reverse the directed path head(e) -> ... -> tail(e), drop its last edge
        path = []
        v = e.head
        while v != e.tail:
            oe = forest.out_edge[v]
            path.append(oe)
            v = oe.head
        deleted = path[-1]
        out = dict(forest.out_edge)
        out[e.head] = e.reverse()
        for oe in path[:-1]:
            out[oe.head] = oe.reverse()
        result = OrientedForest(forest.vertices, out)
        return UpdateOutcome(result, PAST_CASE, deleted, tuple(path[:-1]))

    deleted = forest.out_edge[e.tail]
    out = dict(forest.out_edge)
    out[e.tail] = e
    result = OrientedForest(forest.vertices, out)
    return UpdateOutcome(result, NON_PAST_CASE, deleted)


def dynamics_step(forest: OrientedForest, v: int, network: Network, rng) -> OrientedForest:
    """One move of the chain rooted at v: draw e with tail v by conductance, update."""
    e = network.sample_out_edge(v, rng)
    return update(forest, e).result


def propose_and_update(forest: OrientedForest, v: int, network: Network, rng):
    """Like dynamics_step but returns (proposed edge, outcome), for tracing."""
    e = network.sample_out_edge(v, rng)
    return e, update(forest, e)


@dataclass(frozen=True)
class PathUpdateResult:
    forest: OrientedForest
    outcomes: tuple[UpdateOutcome, ...]
    edges: tuple[OrientedEdge, ...]


def lowest_id_choice(candidates: Sequence[OrientedEdge]) -> OrientedEdge:
    return min(candidates, key=lambda oe: oe.edge_id)


def update_along_path(network: Network, forest: OrientedForest, gamma: Sequence[int],
                      edge_choice: Callable[[Sequence[OrientedEdge]], OrientedEdge] = lowest_id_choice,
                      ) -> PathUpdateResult:
    """Update along a vertex path, each step at the edge aimed backwards.

    Step i uses an edge with tail gamma[i] and head gamma[i-1]; when parallel
    edges exist ``edge_choice`` picks one (lowest edge id by default).
    """
    forests = forest
    outcomes = []
    used = []
    for i in range(1, len(gamma)):
        candidates = network.edges_between(gamma[i], gamma[i - 1])
        if not candidates:
            raise MissingEdge(
                f"no edge from {gamma[i]} to {gamma[i - 1]} for step {i}")
        e = edge_choice(candidates)
        used.append(e)
        outcome = update(forests, e)
        outcomes.append(outcome)
        forests = outcome.result
    return PathUpdateResult(forests, tuple(outcomes), tuple(used))
