"""Lazy infinite sources: branching trees, the counterexample family, lattices."""

from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction

import pytest

from cyclebreak.errors import BudgetExceeded, NotSupercritical, UnknownVertex
from cyclebreak.harness import example52_membership_check
from cyclebreak.network import network_to_json, truncate
from cyclebreak.oracle import chi_square_gof
from cyclebreak.rng import mix64, spawn
from cyclebreak.sources import (
    OffspringDistribution,
    _survives,
    augmented_gw_source,
    example52_classifier,
    example52_exact_class_probability,
    example52_root,
    example52_source,
    gw_source,
    regular_tree,
    reversibility_check,
    source_walk_step,
    swap_partner,
    zd_box,
    zd_source,
)

F = Fraction

BINARY = OffspringDistribution.from_mapping({2: 1})
SKEWED = OffspringDistribution.from_mapping({0: F(1, 4), 2: F(3, 4)})


# -- offspring laws ------------------------------------------------------

def test_offspring_rejects_bad_probabilities():
    with pytest.raises(ValueError):
        OffspringDistribution(())
    with pytest.raises(ValueError):
        OffspringDistribution((F(3, 2), F(-1, 2)))
    with pytest.raises(ValueError):
        OffspringDistribution((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        OffspringDistribution.from_mapping({})


def test_offspring_from_mapping_and_mean():
    d = OffspringDistribution.from_mapping({0: "1/4", 2: "3/4"})
    assert d.probs == (F(1, 4), F(0), F(3, 4))
    assert d.mean == F(3, 2)
    assert BINARY.mean == 2


def test_thresholds_are_monotone_and_end_at_two_64():
    d = OffspringDistribution.from_mapping({0: F(1, 4), 1: F(1, 4), 2: F(1, 2)})
    cuts = d.thresholds()
    assert all(a <= b for a, b in zip(cuts, cuts[1:]))
    assert cuts[-1] == 1 << 64


def test_draw_frequencies_match_law():
    d = OffspringDistribution.from_mapping({0: F(1, 4), 1: F(1, 4), 2: F(1, 2)})
    cuts = d.thresholds()
    counts = Counter(d.draw_from_state(mix64(0xD15C, i), cuts)
                     for i in range(20000))
    obs = [counts.get(k, 0) for k in range(3)]
    _, p = chi_square_gof(obs, list(d.probs))
    assert p > 0.001


# -- regular trees -------------------------------------------------------

def test_regular_tree_degrees_and_conductances():
    src = regular_tree(3)
    root_nbs = src.neighborhood(src.root)
    assert len(root_nbs) == 3
    child = root_nbs[0].other
    assert len(src.neighborhood(child)) == 3
    assert all(nb.conductance == 1 for nb in src.neighborhood(child))
    with pytest.raises(ValueError):
        regular_tree(1)


def test_regular_tree_ball_size_and_cross_instance_agreement():
    t1 = truncate(regular_tree(3), 2)
    t2 = truncate(regular_tree(3), 2)
    # 1 + 3 + 6 vertices in the radius-2 ball
    assert len(t1.kept) == 10
    assert t1.kept == t2.kept
    assert network_to_json(t1.network) == network_to_json(t2.network)


# -- conditioned branching trees -----------------------------------------

def test_gw_rejects_non_supercritical_laws():
    with pytest.raises(NotSupercritical):
        gw_source(OffspringDistribution.from_mapping({0: F(1, 2), 1: F(1, 2)}), 0)
    with pytest.raises(NotSupercritical):
        gw_source(OffspringDistribution.from_mapping({0: F(1, 2), 2: F(1, 2)}), 0)


def test_binary_law_never_rejects():
    src = gw_source(BINARY, seed=9, survive_depth=8)
    assert src.attempt == 0
    nbs = src.neighborhood(src.root)
    assert len(nbs) == 2
    child = nbs[0].other
    assert len(src.neighborhood(child)) == 3


def test_survival_fraction_matches_extinction_equation():
    # extinction q solves q = 1/4 + 3/4 q^2, so q = 1/3
    cuts = SKEWED.thresholds()
    n = 10**4
    hits = sum(_survives(SKEWED, cuts, mix64(0x51EED, i), 50) for i in range(n))
    p = 2 / 3
    se = (p * (1 - p) / n) ** 0.5
    assert abs(hits / n - p) <= 3 * se


def test_conditioned_realization_reaches_survive_depth():
    src = gw_source(SKEWED, seed=3, survive_depth=30)
    assert src.attempt == 1
    dist = {src.root: 0}
    queue = deque([src.root])
    deepest = 0
    while queue:
        v = queue.popleft()
        deepest = max(deepest, dist[v])
        if dist[v] == 30:
            continue
        for nb in src.neighborhood(v):
            if nb.other not in dist:
                dist[nb.other] = dist[v] + 1
                queue.append(nb.other)
    assert deepest == 30


def test_rejection_budget_exhaustion(monkeypatch):
    # seed 3 needs a second attempt, so a budget of one must fail
    monkeypatch.setattr("cyclebreak.sources.REJECTION_BUDGET", 1)
    with pytest.raises(BudgetExceeded):
        gw_source(SKEWED, seed=3, survive_depth=30)


def test_undiscovered_vertex_rejected():
    src = gw_source(BINARY, seed=0)
    with pytest.raises(UnknownVertex):
        src.neighborhood(10**6)


# -- augmented branching trees -------------------------------------------

def test_augmented_root_carries_the_bridge():
    src = augmented_gw_source(BINARY, seed=5)
    assert len(src.neighborhood(src.root)) == 3
    with pytest.raises(NotSupercritical):
        augmented_gw_source(OffspringDistribution.from_mapping({1: 1}), 0)


def test_augmented_binary_window_is_two_joined_balls():
    t = truncate(augmented_gw_source(BINARY, seed=5), 4)
    # depth-4 ball of the first tree plus depth-3 ball of the second
    assert len(t.kept) == (2**5 - 1) + (2**4 - 1)


def test_augmented_windows_are_seed_deterministic():
    t1 = truncate(augmented_gw_source(SKEWED, seed=12), 5)
    t2 = truncate(augmented_gw_source(SKEWED, seed=12), 5)
    assert len(t1.kept) == 24
    assert t1.kept == t2.kept
    assert network_to_json(t1.network) == network_to_json(t2.network)


# -- the reversibility counterexample ------------------------------------

def test_path_edge_conductances_halve():
    src = example52_source()
    assert src.path_edge_conductance(1) == 1
    assert src.path_edge_conductance(2) == F(1, 2)
    assert src.path_edge_conductance(5) == F(1, 16)
    with pytest.raises(ValueError):
        src.path_edge_conductance(0)


def test_vertex_conductances_along_the_hung_path():
    src = example52_source()
    assert sum(nb.conductance for nb in src.neighborhood(src.root)) == 4
    o1 = src.root_path_vertex(1)
    assert sum(nb.conductance for nb in src.neighborhood(o1)) == F(3, 2)
    o2 = src.root_path_vertex(2)
    cs = sorted(nb.conductance for nb in src.neighborhood(o2))
    assert cs == [F(1, 4), F(1, 2)]


def test_describe_distinguishes_tree_and_path():
    src = example52_source()
    assert src.describe(src.root) == ("tree",)
    assert src.describe(src.root_path_vertex(3)) == ("path", 3)
    tree_kid = src.neighborhood(src.root)[0].other
    assert src.describe(tree_kid) == ("tree",)
    with pytest.raises(ValueError):
        src.root_path_vertex(0)


def test_root_law_frequencies():
    src = example52_source()
    rng = spawn(7, "root-law")
    n = 20000
    counts = Counter()
    for _ in range(n):
        d = src.describe(example52_root(src, rng))
        lvl = 0 if d == ("tree",) else d[1]
        counts["tree" if lvl == 0 else (lvl if lvl < 4 else "tail")] += 1
    cells = ["tree", 1, 2, 3, "tail"]
    probs = [F(4, 7), F(3, 14), F(3, 28), F(3, 56), F(3, 56)]
    assert sum(probs) == 1
    _, p = chi_square_gof([counts.get(c, 0) for c in cells], probs)
    assert p > 0.001


def test_classifier_hand_cases():
    src = example52_source()
    tree_kid = src.neighborhood(src.root)[0].other
    p1 = src.root_path_vertex(1)
    p2 = src.root_path_vertex(2)
    p3 = src.root_path_vertex(3)
    assert example52_classifier(src, src.root, tree_kid) == ("tree",)
    assert example52_classifier(src, src.root, p1) == ("out", 0)
    assert example52_classifier(src, p1, src.root) == ("in", 0)
    assert example52_classifier(src, p2, p3) == ("out", 2)
    assert example52_classifier(src, p3, p2) == ("in", 2)
    with pytest.raises(ValueError):
        example52_classifier(src, p1, p3)


def test_swap_partner_is_an_involution():
    labels = [("tree",), ("out", 0), ("in", 0), ("out", 4), ("in", 2)]
    for lab in labels:
        assert swap_partner(swap_partner(lab)) == lab
    assert swap_partner(("tree",)) == ("tree",)
    assert swap_partner(("out", 3)) == ("in", 3)


def test_exact_class_probabilities_sum_to_one():
    total = example52_exact_class_probability(("tree",))
    top = 12
    for n in range(top + 1):
        total += example52_exact_class_probability(("out", n))
        total += example52_exact_class_probability(("in", n))
    assert total == 1 - F(2, 7 * 2**top)


def test_reversibility_check_passes_under_the_conductance_root_law():
    src = example52_source()
    rng = spawn(7, "rev")
    report = reversibility_check(src, lambda r: example52_root(src, r),
                                 20000, rng,
                                 exact=example52_exact_class_probability)
    assert report.n_samples == 20000
    assert report.swap_symmetric
    assert report.matches_exact
    assert sum(s.count for s in report.stats) == 20000


def test_reversibility_check_flags_the_tree_only_root_law():
    src = example52_source()
    rng = spawn(7, "rev-neg")
    report = reversibility_check(src, lambda r: src.root, 20000, rng,
                                 exact=example52_exact_class_probability)
    assert not report.swap_symmetric
    assert not report.matches_exact


# -- lattices ------------------------------------------------------------

def test_lattice_neighborhoods_share_edge_ids():
    src = zd_source(1)
    with pytest.raises(ValueError):
        zd_source(0)
    root_nbs = src.neighborhood(src.root)
    assert len(root_nbs) == 2
    assert all(nb.conductance == 1 for nb in root_nbs)
    nb = root_nbs[0]
    back = [e for e in src.neighborhood(nb.other) if e.other == src.root]
    assert len(back) == 1
    assert back[0].edge_id == nb.edge_id


def test_lattice_ball_sizes():
    assert len(truncate(zd_source(1), 4).kept) == 9
    assert len(truncate(zd_source(2), 1).kept) == 5
    src = zd_source(2)
    assert len(src.neighborhood(src.root)) == 4


def test_box_shapes():
    line = zd_box(1, 3)
    assert len(line.vertices) == 3
    assert len(line.edges) == 2
    square = zd_box(2, 3)
    assert len(square.vertices) == 9
    assert len(square.edges) == 12
    with pytest.raises(ValueError):
        zd_box(0, 3)
    with pytest.raises(ValueError):
        zd_box(2, 0)


def test_walk_step_is_symmetric_on_the_line():
    src = zd_source(1)
    rng = spawn(13, "line-walk")
    n = 4000
    right = sum(src._coord_of[source_walk_step(src, src.root, rng)] == (1,)
                for _ in range(n))
    se = (0.25 / n) ** 0.5
    assert abs(right / n - 0.5) <= 3 * se


# -- window membership of the hung paths ---------------------------------

def test_long_path_windows_keep_interior_path_edges():
    report = example52_membership_check(20, 6, seed=17)
    assert report.n_samples == 20
    assert report.n_edges_checked > 0
    assert report.violations == 0
    assert report.passed
