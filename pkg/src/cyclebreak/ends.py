"""Finite-window proxies for end counts and the three-ends construction.

A window is a wired contraction plus an oriented forest on its kept
vertices.  The boundary-ray count of a forest component is the number of
connected pieces left after deleting the radius-r ball around the window
root that still touch the window boundary; it stands in for the number of
ends the component would grow in the full network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import CycleBreakError, UnknownVertex
from .network import Network, WiredContraction
from .updates import update_along_path
from .wilson import OrientedForest, WindowSample

UNREACHABLE = -1


@dataclass
class ForestWindow:
    """A forest on the kept vertices of a contraction, with a center and radius.

    ``r`` is the pruning radius for ray counts; it defaults to depth // 2.
    Distances are graph distances in the kept window (boundary edges do not
    count), measured from ``root``.
    """

    contraction: WiredContraction
    forest: OrientedForest
    root: int
    depth: int
    r: int | None = None
    _distances: dict[int, int] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.root not in self.contraction.kept:
            raise UnknownVertex(f"window root {self.root} is not a kept vertex")
        if self.depth < 1:
            raise ValueError("window depth must be >= 1")
        if self.r is not None and not 0 <= self.r < self.depth:
            raise ValueError(f"radius {self.r} not in [0, depth)")

    @classmethod
    def from_sample(cls, sample: WindowSample, r: int | None = None) -> "ForestWindow":
        c = sample.contraction
        if c.root is None or c.depth is None:
            raise ValueError("sample's contraction does not carry a root and depth")
        return cls(c, sample.forest, c.root, c.depth, r)

    @property
    def effective_r(self) -> int:
        return self.depth // 2 if self.r is None else self.r

    def distances(self) -> dict[int, int]:
        """BFS distance from the window root within the kept vertex set."""
        if self._distances is None:
            net = self.contraction.network
            kept = self.contraction.kept
            dist = {self.root: 0}
            queue = deque([self.root])
            while queue:
                v = queue.popleft()
                for oe in net.out_edges(v):
                    w = oe.head
                    if w in kept and w not in dist:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            self._distances = dist
        return self._distances


def _component_adjacency(forest: OrientedForest, component: frozenset[int]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in component}
    for v in component:
        oe = forest.out_edge.get(v)
        if oe is not None and oe.head in adj:
            adj[v].append(oe.head)
            adj[oe.head].append(v)
    return adj


def _ray_pieces(window: ForestWindow, component: frozenset[int],
                r: int) -> list[frozenset[int]]:
    """Connected pieces of (component minus the radius-r ball) that touch ∂."""
    dist = window.distances()
    outside = {v for v in component
               if dist.get(v, UNREACHABLE) > r or v not in dist}
    adj = _component_adjacency(window.forest, component)
    pieces = []
    seen: set[int] = set()
    for start in sorted(outside):
        if start in seen:
            continue
        members = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            members.append(v)
            for w in adj[v]:
                if w in outside and w not in seen:
                    seen.add(w)
                    queue.append(w)
        piece = frozenset(members)
        if any(window.contraction.is_boundary_adjacent(v) for v in piece):
            pieces.append(piece)
    return pieces


def boundary_rays(window: ForestWindow, component: frozenset[int],
                  r: int | None = None) -> int:
    """Number of boundary-touching pieces of the component outside radius r."""
    r = window.effective_r if r is None else r
    if r >= window.depth:
        raise ValueError(f"radius {r} must be smaller than window depth {window.depth}")
    return len(_ray_pieces(window, component, r))


def trunk_candidate(window: ForestWindow,
                    component: frozenset[int]) -> tuple[int, ...] | None:
    """The simple path joining the two boundary extremities, or None.

    Defined only when the component has exactly two boundary rays at the
    window's configured radius.  The extremity of a ray is its
    boundary-adjacent vertex farthest from the window root (smallest id on
    ties); the trunk is the unique forest path between the two extremities.
    """
    pieces = _ray_pieces(window, component, window.effective_r)
    if len(pieces) != 2:
        return None
    dist = window.distances()
    ends = []
    for piece in pieces:
        marked = [v for v in sorted(piece)
                  if window.contraction.is_boundary_adjacent(v)]
        ends.append(max(marked, key=lambda v: (dist.get(v, len(dist)), -v)))
    a, b = ends
    adj = _component_adjacency(window.forest, component)
    prev = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = [b]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return tuple(path)


@dataclass(frozen=True)
class ComponentSummary:
    component_id: int
    n_vertices: int
    rays: int
    trunk: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "component": self.component_id,
            "vertices": self.n_vertices,
            "rays": self.rays,
            "trunk": list(self.trunk) if self.trunk is not None else None,
        }


def summarize_components(window: ForestWindow) -> tuple[ComponentSummary, ...]:
    """One summary per forest component, identified by its smallest vertex."""
    out = []
    for comp in window.forest.components():
        rays = boundary_rays(window, comp)
        trunk = trunk_candidate(window, comp) if rays == 2 else None
        out.append(ComponentSummary(min(comp), len(comp), rays, trunk))
    return tuple(out)


def escape_edge_accounted(window: ForestWindow, escape_vertex: int) -> bool:
    """Whether a forest edge into ∂ at this vertex is pruned or counted.

    Every vertex carrying an escape edge is boundary adjacent, so it either
    sits inside the pruned ball or its piece is one of the counted rays.
    """
    r = window.effective_r
    dist = window.distances().get(escape_vertex, UNREACHABLE)
    if 0 <= dist <= r:
        return True
    comp = window.forest.component_of(escape_vertex)
    return any(escape_vertex in piece
               for piece in _ray_pieces(window, comp, r))


# -- the three-ends construction ----------------------------------------

@dataclass(frozen=True)
class ThreeEndsFixture:
    name: str
    window: ForestWindow
    gamma: tuple[int, ...]


@dataclass(frozen=True)
class ThreeEndsReport:
    fixture: str
    precondition_failures: tuple[str, ...]
    step_cases: tuple[str, ...]
    step_rays: tuple[int, ...]
    final_rays: int

    @property
    def preconditions_ok(self) -> bool:
        return not self.precondition_failures

    @property
    def passed(self) -> bool:
        return self.preconditions_ok and self.final_rays >= 3

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "precondition_failures": list(self.precondition_failures),
            "step_cases": list(self.step_cases),
            "step_rays": list(self.step_rays),
            "final_rays": self.final_rays,
            "passed": self.passed,
        }


def _check_preconditions(fixture: ThreeEndsFixture) -> list[str]:
    window = fixture.window
    gamma = fixture.gamma
    failures = []
    if len(gamma) < 2:
        failures.append("path has fewer than two vertices")
        return failures
    two_ended = [c for c in window.forest.components()
                 if boundary_rays(window, c) == 2]
    if len(two_ended) < 2:
        failures.append(f"forest has {len(two_ended)} two-ended components, need >= 2")
    target = window.forest.component_of(gamma[-1])
    trunk = trunk_candidate(window, target)
    if trunk is None:
        failures.append("final path vertex's component has no trunk")
    else:
        if gamma[-1] not in trunk:
            failures.append("final path vertex is not on its component's trunk")
        on_trunk = [v for v in gamma[:-1] if v in trunk]
        if on_trunk:
            failures.append(f"interior path vertices {on_trunk} lie on the target trunk")
    return failures


def three_ends_experiment(fixture: ThreeEndsFixture, strict: bool = True) -> ThreeEndsReport:
    """Update along the fixture path and watch the ray count of the moving tip.

    Reports the ray count of gamma[i]'s component after i updates, starting
    from gamma[0]'s component in the given forest.  With ``strict`` (and a
    fixture satisfying the preconditions) a final count below 3 raises.
    """
    window = fixture.window
    failures = _check_preconditions(fixture)
    result = update_along_path(window.contraction.network, window.forest, fixture.gamma)

    rays = [boundary_rays(window, window.forest.component_of(fixture.gamma[0]))]
    for i, outcome in enumerate(result.outcomes, start=1):
        stage = ForestWindow(window.contraction, outcome.result, window.root,
                             window.depth, window.r)
        rays.append(boundary_rays(stage, outcome.result.component_of(fixture.gamma[i])))

    report = ThreeEndsReport(
        fixture=fixture.name,
        precondition_failures=tuple(failures),
        step_cases=tuple(o.case for o in result.outcomes),
        step_rays=tuple(rays),
        final_rays=rays[-1],
    )
    if strict and report.preconditions_ok and report.final_rays < 3:
        raise CycleBreakError(
            f"three-ends fixture {fixture.name!r} ended with {report.final_rays} rays")
    return report


# -- hand-built fixtures -------------------------------------------------

_DEPTH = 8


def _parallel_paths(with_rung: bool, middle: bool):
    """Two length-16 paths A and B, boundary-attached at all four endpoints.

    A runs through ids 12..28 (center 20), B through 42..58 (center 50).
    ``with_rung`` adds a direct edge 20-50; ``middle`` adds vertex 70 with
    edges 70-20 and 70-50 instead.
    """
    a = {k: 20 + k for k in range(-_DEPTH, _DEPTH + 1)}
    b = {k: 50 + k for k in range(-_DEPTH, _DEPTH + 1)}
    edges = []
    for p in (a, b):
        for k in range(-_DEPTH, _DEPTH):
            edges.append((p[k], p[k + 1], 1))
    if with_rung:
        edges.append((a[0], b[0], 1))
    if middle:
        edges.append((70, a[0], 1))
        edges.append((70, b[0], 1))
    for endpoint in (a[-_DEPTH], a[_DEPTH], b[-_DEPTH], b[_DEPTH]):
        edges.append((endpoint, -1, 1))
    net = Network.from_edges(edges)
    kept = frozenset(v for v in net.vertices if v != -1)
    contraction = WiredContraction(kept, net, -1, {e.id: e.id for e in net.edges},
                                   root=a[0], depth=_DEPTH)

    out = {}
    for p in (a, b):
        for k in range(-_DEPTH, _DEPTH):
            eid = next(oe.edge_id for oe in net.edges_between(p[k], p[k + 1]))
            out[p[k]] = net.oriented(eid, p[k])
    return net, contraction, a, b, out


def canonical_three_ends_fixture() -> ThreeEndsFixture:
    """One edge from a path interior vertex onto the other path's trunk."""
    net, contraction, a, b, out = _parallel_paths(with_rung=True, middle=False)
    forest = OrientedForest(contraction.kept, out)
    window = ForestWindow(contraction, forest, a[0], _DEPTH)
    return ThreeEndsFixture("canonical", window, (a[0], b[0]))


def schematic_three_ends_fixture() -> ThreeEndsFixture:
    """A two-edge path through a hanging vertex onto the other trunk."""
    net, contraction, a, b, out = _parallel_paths(with_rung=False, middle=True)
    eid = next(oe.edge_id for oe in net.edges_between(70, a[0]))
    out[70] = net.oriented(eid, 70)
    forest = OrientedForest(contraction.kept, out)
    window = ForestWindow(contraction, forest, a[0], _DEPTH)
    return ThreeEndsFixture("schematic", window, (a[0], 70, b[0]))


def degenerate_three_ends_fixture() -> ThreeEndsFixture:
    """Path ends on a hanging vertex, not a trunk; preconditions must flag it."""
    net, contraction, a, b, out = _parallel_paths(with_rung=False, middle=True)
    eid = next(oe.edge_id for oe in net.edges_between(70, b[0]))
    out[70] = net.oriented(eid, 70)
    forest = OrientedForest(contraction.kept, out)
    window = ForestWindow(contraction, forest, a[0], _DEPTH)
    return ThreeEndsFixture("degenerate", window, (a[0], 70))


def standard_fixtures() -> tuple[ThreeEndsFixture, ...]:
    return (canonical_three_ends_fixture(),
            schematic_three_ends_fixture(),
            degenerate_three_ends_fixture())
