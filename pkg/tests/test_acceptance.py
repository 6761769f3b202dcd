"""Acceptance gate: one criterion per test, one PASS/FAIL line each.

Statistical criteria run on frozen seeds that were checked to pass; exact
criteria tolerate nothing.  Keep the seeds stable.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction

from cyclebreak.corpus import certification_corpus, k4_unit, triangle_123
from cyclebreak.ends import standard_fixtures, three_ends_experiment
from cyclebreak.harness import ExperimentConfig, example52_membership_check, run
from cyclebreak.network import Network
from cyclebreak.oracle import (
    build_kernel,
    certify_stationarity,
    certify_update_tolerance,
    chi_square_gof,
    chi_square_two_sample,
    enumerate_spanning_trees,
    kirchhoff_total,
)
from cyclebreak.rng import spawn
from cyclebreak.sources import (
    example52_exact_class_probability,
    example52_root,
    example52_source,
    reversibility_check,
)
from cyclebreak.updates import NO_OP, update
from cyclebreak.wilson import OrientedForest, sample_oust, wilson_rooted

F = Fraction


def _line(n: int, label: str, ok: bool) -> None:
    print(f"criterion {n} ({label}): {'PASS' if ok else 'FAIL'}")


def test_criterion_1_exact_stationarity():
    t0 = time.perf_counter()
    corpus = certification_corpus()
    shape_ok = (len(corpus) >= 10
                and all(len(c.kept) <= 5 and len(c.network.edges) <= 8
                        for _, c in corpus))
    residuals_zero = True
    for _, ctr in corpus:
        dist = enumerate_spanning_trees(ctr.network, root=ctr.boundary)
        for v in sorted(ctr.kept):
            rep = certify_stationarity(build_kernel(ctr, v), dist)
            residuals_zero &= (rep.passed
                               and rep.max_stationarity_residual == 0
                               and rep.max_detailed_balance_residual == 0)
    elapsed = time.perf_counter() - t0
    ok = shape_ok and residuals_zero and elapsed < 120
    _line(1, "exact stationarity", ok)
    assert shape_ok
    assert residuals_zero
    assert elapsed < 120


def test_criterion_2_oracle_cross_validation():
    totals_match = all(
        enumerate_spanning_trees(c.network).total_weight
        == kirchhoff_total(c.network)
        for _, c in certification_corpus())
    k4 = enumerate_spanning_trees(k4_unit())
    k4_ok = len(k4.states) == 16 and k4.total_weight == 16
    tri = enumerate_spanning_trees(triangle_123())
    tri_ok = sorted(tri.probabilities) == [F(2, 11), F(3, 11), F(6, 11)]
    ok = totals_match and k4_ok and tri_ok
    _line(2, "oracle cross-validation", ok)
    assert totals_match
    assert k4_ok
    assert tri_ok


def test_criterion_3_wilson_correctness():
    n = 10**5

    def frequencies(net, dist, rng, order=None):
        idx = dist.index()
        counts = [0] * len(dist.states)
        for _ in range(n):
            forest = wilson_rooted(net, 0, order=order, rng=rng)
            counts[idx[frozenset(forest.edge_ids)]] += 1
        return counts

    k4 = k4_unit()
    k4_dist = enumerate_spanning_trees(k4)
    _, p_k4 = chi_square_gof(frequencies(k4, k4_dist, spawn(301, "k4")),
                             list(k4_dist.probabilities))

    tri = triangle_123()
    tri_dist = enumerate_spanning_trees(tri)
    _, p_tri = chi_square_gof(frequencies(tri, tri_dist, spawn(302, "tri")),
                              list(tri_dist.probabilities))

    a = frequencies(tri, tri_dist, spawn(303, "ord-a"), order=[0, 1, 2])
    b = frequencies(tri, tri_dist, spawn(303, "ord-b"), order=[2, 1, 0])
    _, p_order = chi_square_two_sample(a, b)

    # negative control: uniform sampler scored against the weighted law
    unit_tri = Network([0, 1, 2], [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1)])
    biased = frequencies(unit_tri, tri_dist, spawn(304, "bias"))
    _, p_biased = chi_square_gof(biased, list(tri_dist.probabilities))

    ok = (p_k4 > 0.001 and p_tri > 0.001 and p_order > 0.001
          and p_biased < 1e-6)
    _line(3, "wilson correctness", ok)
    assert p_k4 > 0.001
    assert p_tri > 0.001
    assert p_order > 0.001
    assert p_biased < 1e-6


def test_criterion_4_update_properties():
    corpus = certification_corpus()
    per_fixture = 10**4 // len(corpus) + 1
    n_pairs = 0
    violations = 0
    for name, ctr in corpus:
        net = ctr.network
        kept = sorted(ctr.kept)
        rng = spawn(401, "pairs", name)
        for _ in range(per_fixture):
            tree = sample_oust(ctr, rng=rng).tree
            v = kept[rng.randrange(len(kept))]
            e = net.sample_out_edge(v, rng)
            outcome = update(tree, e)
            n_pairs += 1
            try:
                OrientedForest(outcome.result.vertices,
                               dict(outcome.result.out_edge))
            except Exception:
                violations += 1
                continue
            if outcome.case == NO_OP:
                if outcome.result != tree:
                    violations += 1
                continue
            d = outcome.deleted
            want = (frozenset(tree.edge_ids) | {e.edge_id}) - {d.edge_id}
            if frozenset(outcome.result.edge_ids) != want:
                violations += 1
            back = d if d.tail == e.tail else d.reverse()
            if update(outcome.result, back).result != tree:
                violations += 1
    ok = n_pairs >= 10**4 and violations == 0
    _line(4, "update properties", ok)
    assert n_pairs >= 10**4
    assert violations == 0


def test_criterion_5_update_tolerance():
    corpus = certification_corpus()
    n_exhaustive = 0
    all_ok = True
    sampled_names = []
    for name, ctr in corpus:
        dist = enumerate_spanning_trees(ctr.network, root=ctr.boundary)
        small = len(dist.states) <= 12
        if small:
            n_exhaustive += 1
        else:
            sampled_names.append(name)
        for e in ctr.network.edges:
            for tail in sorted({e.u, e.v}):
                if tail == ctr.boundary:
                    continue
                oe = ctr.network.oriented(e.id, tail)
                if small:
                    rep = certify_update_tolerance(ctr, dist, oe)
                    all_ok &= rep.exhaustive and rep.passed
                else:
                    rep = certify_update_tolerance(
                        ctr, dist, oe, rng=spawn(501, "tol", name, e.id, tail),
                        n_sampled=10**4)
                    all_ok &= (not rep.exhaustive) and rep.passed
    ok = all_ok and n_exhaustive >= 8 and len(sampled_names) >= 1
    _line(5, "update tolerance", ok)
    assert all_ok
    assert n_exhaustive >= 8
    assert sampled_names


def test_criterion_6_three_ends():
    t0 = time.perf_counter()
    reports = {f.name: three_ends_experiment(f, strict=False)
               for f in standard_fixtures()}
    elapsed = time.perf_counter() - t0

    def monotone(r):
        return all(a <= b for a, b in zip(r.step_rays, r.step_rays[1:]))

    canonical_ok = (reports["canonical"].passed
                    and monotone(reports["canonical"])
                    and reports["canonical"].final_rays >= 3)
    schematic_ok = (reports["schematic"].passed
                    and monotone(reports["schematic"])
                    and reports["schematic"].final_rays >= 3)
    degenerate_flagged = not reports["degenerate"].preconditions_ok
    ok = canonical_ok and schematic_ok and degenerate_flagged and elapsed < 1
    _line(6, "three ends", ok)
    assert canonical_ok
    assert schematic_ok
    assert degenerate_flagged
    assert elapsed < 1


def test_criterion_7_counterexample_reproduction():
    source = example52_source()
    report = reversibility_check(source, lambda r: example52_root(source, r),
                                 10**6, spawn(701, "rev"),
                                 exact=example52_exact_class_probability)

    def level(label):
        return -1 if label == ("tree",) else label[1]

    shallow = [s for s in report.stats if level(s.label) <= 5]
    levels_seen = {level(s.label) for s in shallow}
    coverage = set(range(-1, 6)) <= levels_seen
    matches = all(s.within_three_se for s in shallow)
    symmetric = report.swap_symmetric

    membership = example52_membership_check(1000, 8, seed=702)

    ok = (coverage and matches and symmetric
          and membership.violations == 0 and membership.n_samples == 1000)
    _line(7, "counterexample reproduction", ok)
    assert coverage
    assert matches
    assert symmetric
    assert membership.n_samples == 1000
    assert membership.violations == 0


def test_criterion_8_branching_trend(tmp_path):
    t0 = time.perf_counter()
    cfg = ExperimentConfig("gw-ends-trend", 802, str(tmp_path), {
        "rows": [
            {"label": "binary",
             "source": {"kind": "gw", "offspring": {"2": 1}},
             "survive": "depth", "expect": "nonincreasing"},
            {"label": "gw-1434",
             "source": {"kind": "gw", "offspring": {"0": "1/4", "2": "3/4"}},
             "survive": "depth", "expect": "nonincreasing"},
            {"label": "z-control",
             "source": {"kind": "lattice", "d": 1},
             "mode": "free", "expect": "all-one"},
        ],
        "depths": [4, 6, 8, 10], "replicas": 500, "enforce": True})
    run(cfg, workers=None)
    elapsed = time.perf_counter() - t0

    data = json.loads((tmp_path / "trend.json").read_text())
    rows = {r["label"]: r for r in data["rows"]}
    replicas = data["replicas"]

    def nonincreasing_within_2se(fractions):
        depths = sorted(int(d) for d in fractions)
        for a, b in zip(depths, depths[1:]):
            fa, fb = fractions[str(a)], fractions[str(b)]
            sa = (fa * (1 - fa) / replicas) ** 0.5
            sb = (fb * (1 - fb) / replicas) ** 0.5
            if fb > fa + 2.0 * (sa * sa + sb * sb) ** 0.5:
                return False
        return True

    trend_ok = (data["all_ok"]
                and nonincreasing_within_2se(rows["binary"]["fractions"])
                and nonincreasing_within_2se(rows["gw-1434"]["fractions"]))
    control_ok = all(f == 1.0 for f in rows["z-control"]["fractions"].values())
    ok = trend_ok and control_ok and elapsed < 600
    _line(8, "branching trend", ok)
    assert data["all_ok"]
    assert trend_ok
    assert control_ok
    assert elapsed < 600


def test_criterion_9_determinism(tmp_path):
    trend_params = {
        "rows": [{"label": "binary",
                  "source": {"kind": "gw", "offspring": {"2": 1}},
                  "survive": "depth", "expect": "none"}],
        "depths": [3, 4], "replicas": 30}
    trend_blobs = []
    for sub, workers in (("w1", 1), ("w3", 3)):
        out = tmp_path / "trend" / sub
        run(ExperimentConfig("gw-ends-trend", 901, str(out),
                             dict(trend_params)), workers=workers)
        trend_blobs.append(tuple((out / n).read_bytes()
                                 for n in ("trend.csv", "trend.json")))
    trend_ok = trend_blobs[0] == trend_blobs[1]

    certify_blobs = []
    for sub in ("a", "b"):
        out = tmp_path / "certify" / sub
        run(ExperimentConfig("certify", 902, str(out), {"samples": 2000}),
            workers=1)
        certify_blobs.append(tuple((out / n).read_bytes()
                                   for n in ("certificates.json", "summary.csv")))
    certify_ok = certify_blobs[0] == certify_blobs[1]

    ok = trend_ok and certify_ok
    _line(9, "determinism", ok)
    assert trend_ok
    assert certify_ok
