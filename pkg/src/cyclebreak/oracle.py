"""Exact brute-force certification of the samplers and the dynamics.

Everything here runs in exact rational arithmetic.  Spanning trees are
enumerated directly (guarded by an edge-count budget) and cross-checked
against the weighted Laplacian cofactor determinant.  The one-vertex update
kernel is built state by state and certified stationary and in detailed
balance with exact zero residuals; the update-tolerance inequality is checked
over explicit event sets.  Empirical samples are compared to exact
distributions with a plain Pearson goodness-of-fit test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from scipy.stats import chi2 as _chi2

from .errors import BudgetExceeded, LowExpectedCounts, StateMismatch, UnknownVertex
from .network import Network, OrientedEdge, WiredContraction
from .updates import update
from .wilson import OrientedForest

ENUMERATION_EDGE_BUDGET = 25
KERNEL_STATE_BUDGET = 5000


def _is_spanning_tree(network: Network, edge_subset) -> bool:
    n = len(network.vertices)
    if len(edge_subset) != n - 1:
        return False
    parent = {v: v for v in network.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_subset:
        if e.is_self_loop:
            return False
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def orient_toward(network: Network, edge_ids, root: int) -> OrientedForest:
    """Orient a spanning tree so every vertex points along its path to root."""
    by_vertex: dict[int, list] = {v: [] for v in network.vertices}
    for eid in edge_ids:
        e = network.edge(eid)
        by_vertex[e.u].append(e)
        by_vertex[e.v].append(e)
    out: dict[int, OrientedEdge] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in by_vertex[v]:
            w = e.v if e.u == v else e.u
            if w in seen:
                continue
            out[w] = OrientedEdge(e.id, w, v, w == e.u)
            seen.add(w)
            queue.append(w)
    return OrientedForest(network.vertices, out)


@dataclass(frozen=True)
class TreeDistribution:
    """Exact weighted spanning-tree distribution of a finite network.

    ``states`` are frozensets of edge ids when unrooted, or OrientedForest
    values oriented toward ``root`` when a root is given (orientation is a
    bijection, so the probabilities coincide).
    """

    network: Network
    root: int | None
    states: tuple
    weights: tuple[Fraction, ...]

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def probabilities(self) -> tuple[Fraction, ...]:
        total = self.total_weight
        return tuple(w / total for w in self.weights)

    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}

    def unoriented_index(self) -> dict:
        if self.root is None:
            return self.index()
        return {s.edge_ids: i for i, s in enumerate(self.states)}


def enumerate_spanning_trees(network: Network, root: int | None = None) -> TreeDistribution:
    """List every spanning tree with its exact weight (product of conductances)."""
    if len(network.edges) > ENUMERATION_EDGE_BUDGET:
        raise BudgetExceeded(
            f"{len(network.edges)} edges exceeds enumeration budget "
            f"{ENUMERATION_EDGE_BUDGET}")
    if root is not None and not network.has_vertex(root):
        raise UnknownVertex(f"root {root} not in network")
    n = len(network.vertices)
    candidates = [e for e in network.edges if not e.is_self_loop]
    states = []
    weights = []
    for subset in combinations(candidates, n - 1):
        if not _is_spanning_tree(network, subset):
            continue
        ids = frozenset(e.id for e in subset)
        weight = Fraction(1)
        for e in subset:
            weight *= e.c_exact
        if root is None:
            states.append(ids)
        else:
            states.append(orient_toward(network, ids, root))
        weights.append(weight)
    return TreeDistribution(network, root, tuple(states), tuple(weights))


def kirchhoff_total(network: Network) -> Fraction:
    """Total spanning-tree weight via the weighted Laplacian cofactor.

    Exact rational Gaussian elimination; self-loops do not enter the
    Laplacian since no tree contains them.
    """
    verts = list(network.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    if n == 1:
        return Fraction(1)
    lap = [[Fraction(0)] * n for _ in range(n)]
    for e in network.edges:
        if e.is_self_loop:
            continue
        i, j = idx[e.u], idx[e.v]
        lap[i][i] += e.c_exact
        lap[j][j] += e.c_exact
        lap[i][j] -= e.c_exact
        lap[j][i] -= e.c_exact
    m = [row[1:] for row in lap[1:]]
    size = n - 1
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


# -- the one-vertex update kernel ---------------------------------------

@dataclass(frozen=True)
class KernelMatrix:
    """Exact transition matrix of the update chain moved at one vertex."""

    contraction: WiredContraction
    vertex: int
    states: tuple[OrientedForest, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}


def build_kernel(contraction: WiredContraction, v: int) -> KernelMatrix:
    """Kernel rows: draw e with tail v by conductance, move to update(t, e)."""
    if contraction.boundary is None:
        raise UnknownVertex("contraction has no boundary vertex")
    if v == contraction.boundary or v not in contraction.kept:
        raise UnknownVertex(f"kernel vertex {v} must be a kept, non-boundary vertex")
    network = contraction.network
    dist = enumerate_spanning_trees(network, root=contraction.boundary)
    if len(dist.states) > KERNEL_STATE_BUDGET:
        raise BudgetExceeded(
            f"{len(dist.states)} states exceeds kernel budget {KERNEL_STATE_BUDGET}")
    index = dist.index()
    cv = network.conductance_at(v)
    rows = []
    for t in dist.states:
        row = [Fraction(0)] * len(dist.states)
        for e in network.out_edges(v):
            target = update(t, e).result
            row[index[target]] += network.edge(e.edge_id).c_exact / cv
        total = sum(row, Fraction(0))
        if total != 1:
            raise StateMismatch(f"kernel row sums to {total}, not 1")
        rows.append(tuple(row))
    return KernelMatrix(contraction, v, dist.states, tuple(rows))


@dataclass(frozen=True)
class StationarityReport:
    vertex: int
    n_states: int
    max_stationarity_residual: Fraction
    max_detailed_balance_residual: Fraction

    @property
    def passed(self) -> bool:
        return (self.max_stationarity_residual == 0
                and self.max_detailed_balance_residual == 0)


def certify_stationarity(kernel: KernelMatrix, dist: TreeDistribution,
                         probabilities: Sequence[Fraction] | None = None) -> StationarityReport:
    """Exact residuals of pi P = pi and pi_i P_ij = pi_j P_ji.

    ``probabilities`` overrides the distribution's own vector (used by the
    perturbed negative control); states must match the kernel's exactly.
    """
    index = dist.index()
    if set(index) != set(kernel.index()) or dist.states != kernel.states:
        raise StateMismatch("kernel and distribution enumerate different states")
    pi = list(probabilities) if probabilities is not None else list(dist.probabilities)
    if len(pi) != len(kernel.states):
        raise StateMismatch("probability vector length does not match states")
    n = len(pi)
    m = kernel.matrix
    max_stat = Fraction(0)
    for j in range(n):
        acc = sum((pi[i] * m[i][j] for i in range(n)), Fraction(0))
        max_stat = max(max_stat, abs(acc - pi[j]))
    max_db = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            max_db = max(max_db, abs(pi[i] * m[i][j] - pi[j] * m[j][i]))
    return StationarityReport(kernel.vertex, n, max_stat, max_db)


# -- update tolerance ----------------------------------------------------

FULL_EVENT_STATE_LIMIT = 12
SAMPLED_EVENT_COUNT = 10**4


@dataclass(frozen=True)
class ToleranceReport:
    edge: OrientedEdge
    n_states: int
    n_events: int
    exhaustive: bool
    min_slack: Fraction

    @property
    def passed(self) -> bool:
        return self.min_slack >= 0


def certify_update_tolerance(contraction: WiredContraction, dist: TreeDistribution,
                             e: OrientedEdge, rng=None,
                             n_sampled: int = SAMPLED_EVENT_COUNT) -> ToleranceReport:
    """Check P(image of A under the move at e) >= (c(e)/c(tail e)) P(A).

    Exhaustive over every event A when the state space has at most
    FULL_EVENT_STATE_LIMIT states, otherwise over ``n_sampled`` random
    events drawn with ``rng``.  All arithmetic is exact.
    """
    network = contraction.network
    if dist.root != contraction.boundary:
        raise StateMismatch("distribution must be oriented toward the boundary")
    states = dist.states
    n = len(states)
    index = dist.index()
    image = [index[update(t, e).result] for t in states]

    weights = list(dist.weights)
    denom = 1
    for w in weights:
        denom = denom * w.denominator // gcd(denom, w.denominator)
    int_w = [w.numerator * (denom // w.denominator) for w in weights]
    total = sum(int_w)

    alpha = network.edge(e.edge_id).c_exact / network.conductance_at(e.tail)

    def slack(mask: int) -> Fraction:
        w_a = 0
        img = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                w_a += int_w[i]
                img |= 1 << image[i]
            m >>= 1
            i += 1
        w_img = 0
        m = img
        i = 0
        while m:
            if m & 1:
                w_img += int_w[i]
            m >>= 1
            i += 1
        return Fraction(w_img, total) - alpha * Fraction(w_a, total)

    min_slack: Fraction | None = None
    if n <= FULL_EVENT_STATE_LIMIT:
        exhaustive = True
        count = (1 << n) - 1
        for mask in range(1, 1 << n):
            s = slack(mask)
            if min_slack is None or s < min_slack:
                min_slack = s
    else:
        if rng is None:
            raise ValueError("rng required for sampled events")
        exhaustive = False
        count = n_sampled
        for _ in range(n_sampled):
            mask = rng.getrandbits(n)
            if mask == 0:
                continue
            s = slack(mask)
            if min_slack is None or s < min_slack:
                min_slack = s
    if min_slack is None:
        min_slack = Fraction(0)
    return ToleranceReport(e, n, count, exhaustive, min_slack)


# -- goodness of fit -----------------------------------------------------

MIN_EXPECTED_COUNT = 5.0


def chi_square_gof(observed: Sequence[int], expected_probs: Sequence) -> tuple[float, float]:
    """Pearson statistic and upper-tail p-value with k-1 degrees of freedom.

    Requires every expected count to be at least MIN_EXPECTED_COUNT.
    """
    if len(observed) != len(expected_probs):
        raise StateMismatch("observed and expected lengths differ")
    if len(observed) < 2:
        raise StateMismatch("need at least two cells")
    n = sum(observed)
    expected = [float(p) * n for p in expected_probs]
    if min(expected) < MIN_EXPECTED_COUNT:
        raise LowExpectedCounts(
            f"minimum expected count {min(expected):.3g} below {MIN_EXPECTED_COUNT}")
    stat = sum((o - e) ** 2 / e for o, e in zip(observed, expected))
    p = float(_chi2.sf(stat, len(observed) - 1))
    return stat, p


def chi_square_two_sample(counts_a: Sequence[int], counts_b: Sequence[int]) -> tuple[float, float]:
    """Pearson homogeneity test for two count vectors over the same cells."""
    if len(counts_a) != len(counts_b):
        raise StateMismatch("count vectors have different lengths")
    na, nb = sum(counts_a), sum(counts_b)
    stat = 0.0
    k = 0
    for a, b in zip(counts_a, counts_b):
        tot = a + b
        if tot == 0:
            continue
        k += 1
        ea = tot * na / (na + nb)
        eb = tot * nb / (na + nb)
        if min(ea, eb) < MIN_EXPECTED_COUNT:
            raise LowExpectedCounts("expected cell count below validity floor")
        stat += (a - ea) ** 2 / ea + (b - eb) ** 2 / eb
    p = float(_chi2.sf(stat, k - 1))
    return stat, p
