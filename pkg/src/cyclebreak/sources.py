"""Network generators: lazy infinite sources and small finite families.

Lazy sources hand out opaque integer vertex ids on first discovery and answer
``neighborhood`` queries purely (memoized, and the underlying randomness is a
per-vertex splitmix stream keyed by the vertex's path from the root, so query
order never matters).  Branching-tree sources can be conditioned to reach a
given depth by rejection over whole realizations.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import BudgetExceeded, NotSupercritical, UnknownVertex
from .network import NeighborEdge, Network
from .rng import mix64, unit_from

_TWO64 = 1 << 64


@dataclass(frozen=True)
class OffspringDistribution:
    """Finite-support offspring law with exact rational probabilities."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.probs:
            raise ValueError("empty offspring distribution")
        total = Fraction(0)
        for p in self.probs:
            if p < 0:
                raise ValueError("negative offspring probability")
            total += p
        if total != 1:
            raise ValueError(f"offspring probabilities sum to {total}, not 1")

    @classmethod
    def from_mapping(cls, mapping) -> "OffspringDistribution":
        """Build from {k: prob}; probs accept Fractions, ints, or strings."""
        if not mapping:
            raise ValueError("empty offspring distribution")
        top = max(int(k) for k in mapping)
        probs = [Fraction(0)] * (top + 1)
        for k, p in mapping.items():
            probs[int(k)] = Fraction(p)
        return cls(tuple(probs))

    @property
    def mean(self) -> Fraction:
        return sum((Fraction(k) * p for k, p in enumerate(self.probs)), Fraction(0))

    def thresholds(self) -> tuple[int, ...]:
        """Cumulative cut points scaled to 2^64 for splitmix draws."""
        acc = Fraction(0)
        cuts = []
        for p in self.probs:
            acc += p
            cuts.append(min(_TWO64, (acc.numerator * _TWO64) // acc.denominator))
        return tuple(cuts)

    def draw_from_state(self, state: int, cuts: tuple[int, ...]) -> int:
        return bisect_right(cuts, unit_from(state))


# -- lazy tree machinery -------------------------------------------------

class _LazyTreeSource:
    """Shared registry for tree-shaped sources.

    Subclasses implement ``_children(key, seed) -> list[(child key fragment,
    child seed, conductance)]``; keys are tuples describing the path from the
    root.  Vertex and edge ids are assigned on first discovery and memoized,
    so every query is pure for a fixed instance.
    """

    def __init__(self, root_seed: int):
        self.root = 0
        self._key_of = {0: ()}
        self._id_of = {(): 0}
        self._seed_of = {0: root_seed}
        # vertex -> (parent id, parent edge id, conductance to parent)
        self._parent = {0: None}
        self._memo: dict[int, tuple[NeighborEdge, ...]] = {}
        self._next_vertex = 1
        self._next_edge = 0

    def _register_child(self, parent: int, key, seed: int, c: Fraction) -> int:
        vid = self._id_of.get(key)
        if vid is None:
            vid = self._next_vertex
            self._next_vertex += 1
            self._key_of[vid] = key
            self._id_of[key] = vid
            self._seed_of[vid] = seed
            eid = self._next_edge
            self._next_edge += 1
            self._parent[vid] = (parent, eid, c)
        return vid

    def _children(self, key, seed):
        raise NotImplementedError

    def neighborhood(self, v: int) -> tuple[NeighborEdge, ...]:
        cached = self._memo.get(v)
        if cached is not None:
            return cached
        if v not in self._key_of:
            raise UnknownVertex(f"vertex {v} has not been discovered")
        key = self._key_of[v]
        entries = []
        link = self._parent[v]
        if link is not None:
            pid, eid, c = link
            entries.append(NeighborEdge(eid, c, pid))
        for frag, seed, c in self._children(key, self._seed_of[v]):
            child = self._register_child(v, key + (frag,), seed, c)
            eid = self._parent[child][1]
            entries.append(NeighborEdge(eid, c, child))
        result = tuple(entries)
        self._memo[v] = result
        return result


_UNIT = Fraction(1)


class RegularTreeSource(_LazyTreeSource):
    """Infinite tree in which every vertex has the same degree."""

    def __init__(self, degree: int):
        if degree < 2:
            raise ValueError("degree must be >= 2")
        super().__init__(root_seed=0)
        self.degree = degree

    def _children(self, key, seed):
        count = self.degree if key == () else self.degree - 1
        return [(i, 0, _UNIT) for i in range(count)]


def regular_tree(degree: int) -> RegularTreeSource:
    return RegularTreeSource(degree)


REJECTION_BUDGET = 100_000


def _survives(dist: OffspringDistribution, cuts, seed: int, depth: int) -> bool:
    """Depth-first search for one vertex at the given depth; early exit."""
    if depth <= 0:
        return True
    stack = [(seed, 0)]
    while stack:
        state, d = stack.pop()
        count = dist.draw_from_state(state, cuts)
        for i in range(count):
            child = mix64(state, i + 1)
            if d + 1 >= depth:
                return True
            stack.append((child, d + 1))
    return False


class GWSource(_LazyTreeSource):
    """Branching tree with unit conductances, conditioned to reach a depth.

    The realization is a pure function of (seed, accepted attempt index); the
    rejection loop at construction scans attempts until one survives to
    ``survive_depth``.
    """

    def __init__(self, dist: OffspringDistribution, seed: int, survive_depth: int = 0):
        if dist.mean <= 1:
            raise NotSupercritical(f"offspring mean {dist.mean} is not > 1")
        self.dist = dist
        self.survive_depth = survive_depth
        self._cuts = dist.thresholds()
        attempt = 0
        while attempt < REJECTION_BUDGET:
            root_seed = mix64(mix64(0x5EED, seed), attempt)
            if _survives(dist, self._cuts, root_seed, survive_depth):
                break
            attempt += 1
        else:
            raise BudgetExceeded(
                f"no realization reached depth {survive_depth} "
                f"in {REJECTION_BUDGET} attempts")
        self.attempt = attempt
        super().__init__(root_seed=root_seed)

    def _children(self, key, seed):
        count = self.dist.draw_from_state(seed, self._cuts)
        return [(i, mix64(seed, i + 1), _UNIT) for i in range(count)]


def gw_source(dist: OffspringDistribution, seed: int, survive_depth: int = 0) -> GWSource:
    return GWSource(dist, seed, survive_depth)


class AugmentedGWSource(_LazyTreeSource):
    """Two independent branching trees joined by one unit edge.

    The root is the root of the first tree; the second tree hangs off it
    through the bridge edge.
    """

    _BRIDGE = "bridge"

    def __init__(self, dist: OffspringDistribution, seed: int):
        if dist.mean <= 1:
            raise NotSupercritical(f"offspring mean {dist.mean} is not > 1")
        self.dist = dist
        self._cuts = dist.thresholds()
        self._second_seed = mix64(mix64(0xA462, seed), 2)
        super().__init__(root_seed=mix64(mix64(0xA461, seed), 1))

    def _children(self, key, seed):
        if key == ():
            kids = [(i, mix64(seed, i + 1), _UNIT)
                    for i in range(self.dist.draw_from_state(seed, self._cuts))]
            kids.append((self._BRIDGE, self._second_seed, _UNIT))
            return kids
        count = self.dist.draw_from_state(seed, self._cuts)
        return [(i, mix64(seed, i + 1), _UNIT) for i in range(count)]


def augmented_gw_source(dist: OffspringDistribution, seed: int) -> AugmentedGWSource:
    return AugmentedGWSource(dist, seed)


class Example52Source(_LazyTreeSource):
    """The reversibility counterexample network.

    A 3-regular tree with unit conductances, plus an infinite path hung on
    every tree vertex whose nth edge has conductance 2^(1-n).  With the root
    law of :func:`example52_root` the rooted network is reversible for the
    conductance walk, yet the expected inverse root conductance diverges.
    """

    def __init__(self):
        super().__init__(root_seed=0)

    @staticmethod
    def path_edge_conductance(n: int) -> Fraction:
        if n < 1:
            raise ValueError("path edges are numbered from 1")
        return Fraction(2) ** (1 - n)

    @staticmethod
    def _on_path(key) -> bool:
        return bool(key) and isinstance(key[-1], tuple) and key[-1][0] == "p"

    def _children(self, key, seed):
        if self._on_path(key):
            level = key[-1][1]
            return [(("p", level + 1), 0, self.path_edge_conductance(level + 1))]
        tree_kids = 3 if key == () else 2
        kids = [(i, 0, _UNIT) for i in range(tree_kids)]
        kids.append((("p", 1), 0, self.path_edge_conductance(1)))
        return kids

    def describe(self, v: int):
        """("tree",) for tree vertices, ("path", n) for level-n path vertices."""
        key = self._key_of.get(v)
        if key is None:
            raise UnknownVertex(f"vertex {v} has not been discovered")
        if self._on_path(key):
            return ("path", key[-1][1])
        return ("tree",)

    def root_path_vertex(self, n: int) -> int:
        """The level-n vertex on the path hung at the root."""
        if n < 1:
            raise ValueError("path levels are numbered from 1")
        v = self.root
        for level in range(1, n + 1):
            self.neighborhood(v)
            v = self._id_of[self._key_of[v] + (("p", level),)]
        return v


def example52_source() -> Example52Source:
    return Example52Source()


def example52_root(source: Example52Source, rng) -> int:
    """Root draw: the tree vertex with probability 4/7, else geometric on its path.

    P(root) = 4/7 and P(level n) = 3 / (7 * 2^n); this is proportional to the
    vertex conductance over one vertex of each kind, which is what makes the
    rooted conductance walk reversible.
    """
    if rng.random() < 4.0 / 7.0:
        return source.root
    n = 1
    while rng.random() < 0.5:
        n += 1
    return source.root_path_vertex(n)


# -- source-side walk ----------------------------------------------------

def source_walk_step(source, v: int, rng) -> int:
    """One conductance-walk step on a lazy source; returns the next vertex."""
    nbs = source.neighborhood(v)
    cum = []
    acc = 0.0
    for nb in nbs:
        acc += float(nb.conductance)
        cum.append(acc)
    i = bisect_right(cum, rng.random() * cum[-1])
    return nbs[min(i, len(nbs) - 1)].other


# -- reversibility sampling ---------------------------------------------

def example52_classifier(source: Example52Source, rho: int, x1: int):
    """Isomorphism class of (network, rho, x1) for the counterexample family.

    ("tree",) both on the tree; ("out", n) a step from level n to n+1 of a
    path (level 0 is the carrying tree vertex); ("in", n) the reverse step.
    """
    a = source.describe(rho)
    b = source.describe(x1)
    if a == ("tree",) and b == ("tree",):
        return ("tree",)
    la = a[1] if a[0] == "path" else 0
    lb = b[1] if b[0] == "path" else 0
    if lb == la + 1:
        return ("out", la)
    if la == lb + 1:
        return ("in", lb)
    raise ValueError(f"unexpected doubly rooted shape {a} -> {b}")


def swap_partner(label):
    if label == ("tree",):
        return label
    kind, n = label
    return ("in" if kind == "out" else "out", n)


def example52_exact_class_probability(label) -> Fraction:
    if label == ("tree",):
        return Fraction(3, 7)
    _, n = label
    if n == 0:
        return Fraction(1, 7)
    return Fraction(1, 7 * 2**n)


@dataclass(frozen=True)
class ClassStat:
    label: tuple
    count: int
    frequency: float
    partner_frequency: float
    exact: Fraction | None
    z_exact: float | None

    @property
    def within_three_se(self) -> bool:
        return self.z_exact is None or abs(self.z_exact) <= 3.0


@dataclass(frozen=True)
class ReversibilityReport:
    n_samples: int
    stats: tuple[ClassStat, ...]
    max_pair_z: float

    @property
    def swap_symmetric(self) -> bool:
        return self.max_pair_z <= 3.0

    @property
    def matches_exact(self) -> bool:
        return all(s.within_three_se for s in self.stats)


def reversibility_check(source, root_sampler: Callable, n_samples: int, rng,
                        classifier: Callable = None,
                        exact: Callable = None) -> ReversibilityReport:
    """Sample (root, one walk step), classify, and compare classes to their
    root-swapped partners and (when given) to exact class probabilities.

    ``root_sampler(rng)`` draws the root; ``classifier(source, rho, x1)``
    names the doubly rooted isomorphism class; ``exact(label)`` returns its
    exact probability or None.
    """
    if classifier is None:
        classifier = example52_classifier
    counts: Counter = Counter()
    for _ in range(n_samples):
        rho = root_sampler(rng)
        x1 = source_walk_step(source, rho, rng)
        counts[classifier(source, rho, x1)] += 1

    labels = sorted(counts, key=str)
    stats = []
    max_pair_z = 0.0
    seen_pairs = set()
    for label in labels:
        c = counts[label]
        partner = swap_partner(label)
        pc = counts.get(partner, 0)
        freq = c / n_samples
        pfreq = pc / n_samples
        ex = exact(label) if exact is not None else None
        z = None
        if ex is not None:
            p = float(ex)
            se = (p * (1 - p) / n_samples) ** 0.5
            z = (freq - p) / se if se > 0 else 0.0
        stats.append(ClassStat(label, c, freq, pfreq, ex, z))
        pair_key = frozenset((label, partner))
        if partner != label and pair_key not in seen_pairs:
            seen_pairs.add(pair_key)
            pooled = (c + pc) / (2.0 * n_samples)
            se = (2 * pooled * (1 - pooled) / n_samples) ** 0.5
            if se > 0:
                max_pair_z = max(max_pair_z, abs(freq - pfreq) / se)
    return ReversibilityReport(n_samples, tuple(stats), max_pair_z)


# -- lattice sources and boxes ------------------------------------------

class LatticeSource:
    """The d-dimensional integer lattice with unit conductances."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        self.d = d
        self.root = 0
        origin = (0,) * d
        self._coord_of = {0: origin}
        self._id_of = {origin: 0}
        self._edge_ids: dict[tuple, int] = {}
        self._memo: dict[int, tuple[NeighborEdge, ...]] = {}
        self._next_vertex = 1
        self._next_edge = 0

    def _vertex(self, coord) -> int:
        vid = self._id_of.get(coord)
        if vid is None:
            vid = self._next_vertex
            self._next_vertex += 1
            self._coord_of[vid] = coord
            self._id_of[coord] = vid
        return vid

    def _edge(self, a, b) -> int:
        key = (a, b) if a <= b else (b, a)
        eid = self._edge_ids.get(key)
        if eid is None:
            eid = self._next_edge
            self._next_edge += 1
            self._edge_ids[key] = eid
        return eid

    def neighborhood(self, v: int) -> tuple[NeighborEdge, ...]:
        cached = self._memo.get(v)
        if cached is not None:
            return cached
        coord = self._coord_of.get(v)
        if coord is None:
            raise UnknownVertex(f"vertex {v} has not been discovered")
        entries = []
        for axis in range(self.d):
            for delta in (1, -1):
                other = list(coord)
                other[axis] += delta
                other = tuple(other)
                eid = self._edge(coord, other)
                entries.append(NeighborEdge(eid, _UNIT, self._vertex(other)))
        result = tuple(entries)
        self._memo[v] = result
        return result


def zd_source(d: int) -> LatticeSource:
    return LatticeSource(d)


def zd_box(d: int, side: int) -> Network:
    """Finite d-dimensional grid with the given side length, unit conductances."""
    if d < 1 or side < 1:
        raise ValueError("need d >= 1 and side >= 1")
    coords = [()]
    for _ in range(d):
        coords = [c + (i,) for c in coords for i in range(side)]
    index = {c: i for i, c in enumerate(coords)}
    edges = []
    for c in coords:
        for axis in range(d):
            if c[axis] + 1 < side:
                other = c[:axis] + (c[axis] + 1,) + c[axis + 1:]
                edges.append((index[c], index[other], 1))
    return Network.from_edges(edges, extra_vertices=index.values())
