"""Experiment harness: config loading, seeded replica farms, file output.

Every operation is a pure function of (config, seed): replica seeds are
derived by hashing the master seed with the replica's key path, aggregation
sorts by replica index, and files are written with sorted keys and fixed
newlines, so reruns are byte-identical at any worker count.
"""

from __future__ import annotations

import csv
import json
import os
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .corpus import certification_corpus, corpus_fixture, k4_unit, triangle_123
from .ends import ForestWindow, boundary_rays, standard_fixtures, three_ends_experiment
from .errors import (
    CertificationFailure,
    ConfigError,
    CycleBreakError,
    StatisticalFailure,
)
from .network import (
    Network,
    WiredContraction,
    induced_network,
    load_network,
    network_from_json,
    truncate,
    wired_contract,
)
from .oracle import (
    build_kernel,
    certify_stationarity,
    certify_update_tolerance,
    enumerate_spanning_trees,
)
from .rng import derive_seed, spawn
from .sources import (
    OffspringDistribution,
    augmented_gw_source,
    example52_classifier,
    example52_exact_class_probability,
    example52_root,
    example52_source,
    gw_source,
    regular_tree,
    reversibility_check,
    zd_box,
    zd_source,
)
from .updates import update
from .wilson import forest_to_json, sample_oust, wilson_rooted

WORKERS_ENV = "CYCLEBREAK_WORKERS"

OPERATIONS = (
    "sample-ust",
    "sample-oust",
    "dynamics-run",
    "certify",
    "three-ends",
    "gw-ends-trend",
    "reversibility",
)


@dataclass(frozen=True)
class ExperimentConfig:
    operation: str
    seed: int
    out_dir: str
    params: dict


@dataclass(frozen=True)
class RunResult:
    operation: str
    files: tuple[str, ...]
    message: str


def load_config(path: str, operation: str | None = None,
                seed_override: int | None = None,
                out_override: str | None = None) -> ExperimentConfig:
    """Parse and validate a config file; every defect raises ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")

    op = raw.get("operation", operation)
    if op is None:
        raise ConfigError("no operation given (config field or subcommand)")
    if operation is not None and op != operation:
        raise ConfigError(f"config operation {op!r} does not match subcommand {operation!r}")
    if op not in OPERATIONS:
        raise ConfigError(f"unknown operation {op!r}")

    seed = seed_override if seed_override is not None else raw.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("config must carry an integer seed")

    replicas = raw.get("replicas")
    if replicas is not None and (not isinstance(replicas, int)
                                 or isinstance(replicas, bool) or replicas < 1):
        raise ConfigError("replicas must be an integer >= 1")

    net = raw.get("network")
    if isinstance(net, dict) and net.get("kind") == "file":
        p = net.get("path")
        if not isinstance(p, str) or not os.path.exists(p):
            raise ConfigError(f"network file {p!r} does not exist")

    out_dir = out_override if out_override is not None else raw.get("out", ".")
    params = {k: v for k, v in raw.items() if k not in ("operation", "seed", "out")}
    return ExperimentConfig(op, seed, str(out_dir), params)


def resolve_workers(cli_workers: int | None, params: dict | None = None) -> int:
    if cli_workers is not None:
        n = cli_workers
    elif params is not None and "workers" in params:
        n = params["workers"]
    elif os.environ.get(WORKERS_ENV):
        try:
            n = int(os.environ[WORKERS_ENV])
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer")
    else:
        n = min(8, os.cpu_count() or 1)
    if not isinstance(n, int) or n < 1:
        raise ConfigError("worker count must be an integer >= 1")
    return n


# -- descriptors ---------------------------------------------------------

def _offspring(obj) -> OffspringDistribution:
    if not isinstance(obj, dict) or not obj:
        raise ConfigError("offspring must be a nonempty {count: probability} object")
    try:
        return OffspringDistribution.from_mapping(
            {int(k): Fraction(str(v)) for k, v in obj.items()})
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad offspring distribution: {exc}") from exc


def build_source(desc: dict, seed: int):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ConfigError("source descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "regular-tree":
            return regular_tree(int(desc["degree"]))
        if kind == "gw":
            return gw_source(_offspring(desc["offspring"]), seed,
                             int(desc.get("survive_depth", 0)))
        if kind == "augmented-gw":
            return augmented_gw_source(_offspring(desc["offspring"]), seed)
        if kind == "example52":
            return example52_source()
        if kind == "lattice":
            return zd_source(int(desc["d"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad source descriptor: {exc}") from exc
    raise ConfigError(f"unknown source kind {kind!r}")


def build_network(desc: dict) -> Network:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ConfigError("network descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "file":
            return load_network(desc["path"])
        if kind == "inline":
            return network_from_json(desc["graph"])
        if kind == "zd-box":
            return zd_box(int(desc["d"]), int(desc["side"]))
        if kind == "k4-unit":
            return k4_unit()
        if kind == "triangle-123":
            return triangle_123()
    except ConfigError:
        raise
    except (KeyError, ValueError, TypeError, OSError, CycleBreakError) as exc:
        raise ConfigError(f"bad network descriptor: {exc}") from exc
    raise ConfigError(f"unknown network kind {kind!r}")


def _contraction_for(params: dict, source_seed: int) -> WiredContraction:
    if "fixture" in params:
        try:
            return corpus_fixture(params["fixture"])
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    if "source" in params:
        if "depth" not in params:
            raise ConfigError("source-based operations need a 'depth'")
        return truncate(build_source(params["source"], source_seed),
                        int(params["depth"]))
    if "network" in params:
        net = build_network(params["network"])
        keep = params.get("keep")
        if keep is None:
            raise ConfigError("network-based contraction needs a 'keep' list")
        try:
            return wired_contract(net, [int(v) for v in keep])
        except CycleBreakError as exc:
            raise ConfigError(f"bad keep list: {exc}") from exc
    raise ConfigError("config needs a 'fixture', 'source', or 'network' entry")


def _source_is_random(params: dict) -> bool:
    return params.get("source", {}).get("kind") in ("gw", "augmented-gw")


# -- deterministic writers -----------------------------------------------

def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fr(x: Fraction) -> str:
    return str(x)


# -- operations ----------------------------------------------------------

def _op_sample_ust(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    net = build_network(params.get("network", {"kind": "missing"}))
    root = params.get("root", min(net.vertices))
    if not net.has_vertex(root):
        raise ConfigError(f"root {root} is not a vertex of the network")
    replicas = int(params.get("replicas", 1))
    samples = []
    rows = []
    for i in range(replicas):
        forest = wilson_rooted(net, root, rng=spawn(cfg.seed, "sample-ust", i))
        samples.append(forest_to_json(forest))
        rows.append([i, len(forest.out_edge), len(forest.vertices)])
    j = os.path.join(cfg.out_dir, "samples.json")
    c = os.path.join(cfg.out_dir, "summary.csv")
    write_json(j, {"operation": "sample-ust", "root": root, "seed": cfg.seed,
                   "samples": samples})
    write_csv(c, ["replica", "n_edges", "n_vertices"], rows)
    return RunResult(cfg.operation, (j, c),
                     f"sampled {replicas} spanning trees rooted at {root}")


def _op_sample_oust(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    replicas = int(params.get("replicas", 1))
    random_source = _source_is_random(params)
    contraction = None if random_source else _contraction_for(params, cfg.seed)
    samples = []
    rows = []
    for i in range(replicas):
        ctr = (_contraction_for(params, derive_seed(cfg.seed, "src", i))
               if random_source else contraction)
        sample = sample_oust(ctr, rng=spawn(cfg.seed, "oust", i))
        samples.append({
            "forest": forest_to_json(sample.forest),
            "escapes": {str(v): eid for v, eid in sorted(sample.escapes.items())},
        })
        rows.append([i, len(sample.forest.components()), len(sample.escapes)])
    j = os.path.join(cfg.out_dir, "samples.json")
    c = os.path.join(cfg.out_dir, "summary.csv")
    write_json(j, {"operation": "sample-oust", "seed": cfg.seed, "samples": samples})
    write_csv(c, ["replica", "n_components", "n_escapes"], rows)
    return RunResult(cfg.operation, (j, c),
                     f"sampled {replicas} wired window forests")


def _op_dynamics_run(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    steps = params.get("steps")
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise ConfigError("dynamics-run needs an integer 'steps' >= 0")
    replicas = int(params.get("replicas", 1))
    random_source = _source_is_random(params)
    contraction = None if random_source else _contraction_for(params, cfg.seed)
    rows = []
    finals = []
    for i in range(replicas):
        ctr = (_contraction_for(params, derive_seed(cfg.seed, "src", i))
               if random_source else contraction)
        rng = spawn(cfg.seed, "dyn", i)
        state = sample_oust(ctr, rng=rng).tree
        kept = sorted(ctr.kept)
        cases = Counter()
        for _ in range(steps):
            v = kept[rng.randrange(len(kept))]
            e = ctr.network.sample_out_edge(v, rng)
            outcome = update(state, e)
            state = outcome.result
            cases[outcome.case] += 1
        rows.append([i, steps, cases["no-op"], cases["past-case"],
                     cases["non-past-case"]])
        finals.append(forest_to_json(state))
    j = os.path.join(cfg.out_dir, "dynamics.json")
    c = os.path.join(cfg.out_dir, "summary.csv")
    write_json(j, {"operation": "dynamics-run", "seed": cfg.seed, "steps": steps,
                   "final_states": finals})
    write_csv(c, ["replica", "steps", "no_op", "past_case", "non_past_case"], rows)
    return RunResult(cfg.operation, (j, c),
                     f"ran {replicas} chains for {steps} steps")


def _op_certify(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    only = params.get("fixtures")
    corpus = certification_corpus()
    if only is not None:
        wanted = set(only)
        corpus = tuple((n, c) for n, c in corpus if n in wanted)
        missing = wanted - {n for n, _ in corpus}
        if missing:
            raise ConfigError(f"unknown corpus fixtures: {sorted(missing)}")
    n_sampled = int(params.get("samples", 10**4))

    fixtures = []
    csv_rows = []
    all_passed = True
    for name, ctr in corpus:
        dist = enumerate_spanning_trees(ctr.network, root=ctr.boundary)
        vertex_reports = []
        for v in sorted(ctr.kept):
            kernel = build_kernel(ctr, v)
            rep = certify_stationarity(kernel, dist)
            all_passed &= rep.passed
            vertex_reports.append({
                "vertex": v,
                "n_states": rep.n_states,
                "stationarity_residual": _fr(rep.max_stationarity_residual),
                "detailed_balance_residual": _fr(rep.max_detailed_balance_residual),
                "passed": rep.passed,
            })
            csv_rows.append([name, v, rep.n_states,
                             _fr(rep.max_stationarity_residual),
                             _fr(rep.max_detailed_balance_residual)])
        tolerance_reports = []
        for e in ctr.network.edges:
            for tail in sorted({e.u, e.v}):
                if tail == ctr.boundary:
                    continue
                oe = ctr.network.oriented(e.id, tail)
                rng = spawn(cfg.seed, "tol", name, e.id, tail)
                rep = certify_update_tolerance(ctr, dist, oe, rng=rng,
                                               n_sampled=n_sampled)
                all_passed &= rep.passed
                tolerance_reports.append({
                    "edge": e.id,
                    "tail": tail,
                    "n_states": rep.n_states,
                    "n_events": rep.n_events,
                    "exhaustive": rep.exhaustive,
                    "min_slack": _fr(rep.min_slack),
                    "passed": rep.passed,
                })
        fixtures.append({"name": name, "n_states": len(dist.states),
                         "stationarity": vertex_reports,
                         "tolerance": tolerance_reports})

    j = os.path.join(cfg.out_dir, "certificates.json")
    c = os.path.join(cfg.out_dir, "summary.csv")
    write_json(j, {"operation": "certify", "seed": cfg.seed,
                   "all_passed": all_passed, "fixtures": fixtures})
    write_csv(c, ["fixture", "vertex", "n_states", "stationarity_residual",
                  "detailed_balance_residual"], csv_rows)
    if not all_passed:
        raise CertificationFailure("certification corpus has nonzero residuals "
                                   f"(see {j})")
    return RunResult(cfg.operation, (j, c),
                     f"certified {len(fixtures)} fixtures, all residuals 0")


def _op_three_ends(cfg: ExperimentConfig, workers: int) -> RunResult:
    reports = [three_ends_experiment(f, strict=False) for f in standard_fixtures()]
    by_name = {r.fixture: r for r in reports}
    monotone = {
        r.fixture: all(a <= b for a, b in zip(r.step_rays, r.step_rays[1:]))
        for r in reports
    }
    ok = (by_name["canonical"].passed and monotone["canonical"]
          and by_name["schematic"].passed and monotone["schematic"]
          and not by_name["degenerate"].preconditions_ok)
    j = os.path.join(cfg.out_dir, "three_ends.json")
    write_json(j, {"operation": "three-ends", "all_ok": ok,
                   "monotone": monotone,
                   "reports": [r.to_json() for r in reports]})
    if not ok:
        raise CertificationFailure(f"three-ends construction failed (see {j})")
    return RunResult(cfg.operation, (j,),
                     "three-ends fixtures passed; degenerate control flagged")


# gw-ends-trend -----------------------------------------------------------

def _trend_replica(packed):
    """One (row, depth, replica) cell; top level so worker processes can run it."""
    master, row, depth, replica = packed
    label = row["label"]
    desc = dict(row["source"])
    if desc.get("kind") == "gw" and row.get("survive") == "depth":
        # one level past the window, so at least one edge leaves the ball
        desc["survive_depth"] = depth + 1
    source = build_source(desc, derive_seed(master, label, depth, replica, "src"))
    contraction = truncate(source, depth)
    rng = spawn(master, label, depth, replica, "walk")
    if row.get("mode", "wired") == "free":
        tree = wilson_rooted(induced_network(contraction), contraction.root, rng=rng)
        window = ForestWindow(contraction, tree, contraction.root, depth)
        rays = boundary_rays(window, tree.component_of(contraction.root))
    else:
        sample = sample_oust(contraction, rng=rng)
        window = ForestWindow.from_sample(sample)
        rays = boundary_rays(window, sample.forest.component_of(contraction.root))
    return row["index"], depth, replica, 1 if rays >= 2 else 0


def _validate_trend_rows(params: dict) -> list[dict]:
    rows = params.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ConfigError("gw-ends-trend needs a nonempty 'rows' list")
    out = []
    seen = set()
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or "label" not in row or "source" not in row:
            raise ConfigError("each trend row needs 'label' and 'source'")
        if row["label"] in seen:
            raise ConfigError(f"duplicate trend label {row['label']!r}")
        seen.add(row["label"])
        mode = row.get("mode", "wired")
        if mode not in ("wired", "free"):
            raise ConfigError(f"trend mode must be wired or free, got {mode!r}")
        expect = row.get("expect", "none")
        if expect not in ("nonincreasing", "all-one", "none"):
            raise ConfigError(f"unknown trend expectation {expect!r}")
        build_source(row["source"], 0)
        out.append({**row, "index": i, "mode": mode, "expect": expect})
    return out


def _op_gw_ends_trend(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    rows = _validate_trend_rows(params)
    depths = params.get("depths")
    if (not isinstance(depths, list) or not depths
            or any(not isinstance(d, int) or d < 2 for d in depths)):
        raise ConfigError("gw-ends-trend needs a 'depths' list of integers >= 2")
    replicas = int(params.get("replicas", 1))

    tasks = [(cfg.seed, row, depth, rep)
             for row in rows for depth in depths for rep in range(replicas)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(tasks) // (workers * 8))
            results = list(pool.map(_trend_replica, tasks, chunksize=chunk))
    else:
        results = [_trend_replica(t) for t in tasks]
    results.sort()

    hits: Counter = Counter()
    for row_index, depth, _rep, hit in results:
        hits[(row_index, depth)] += hit

    csv_rows = []
    row_reports = []
    all_ok = True
    for row in rows:
        fractions = {}
        ses = {}
        for depth in sorted(depths):
            h = hits[(row["index"], depth)]
            f = h / replicas
            se = (f * (1 - f) / replicas) ** 0.5
            fractions[depth] = f
            ses[depth] = se
            csv_rows.append([row["label"], depth, replicas, h, f, se])
        ok = True
        if row["expect"] == "nonincreasing":
            ds = sorted(depths)
            for a, b in zip(ds, ds[1:]):
                slack = 2.0 * (ses[a] ** 2 + ses[b] ** 2) ** 0.5
                if fractions[b] > fractions[a] + slack:
                    ok = False
        elif row["expect"] == "all-one":
            ok = all(fractions[d] == 1.0 for d in depths)
        all_ok &= ok
        row_reports.append({"label": row["label"], "mode": row["mode"],
                            "expect": row["expect"], "ok": ok,
                            "fractions": {str(d): fractions[d] for d in depths}})

    c = os.path.join(cfg.out_dir, "trend.csv")
    j = os.path.join(cfg.out_dir, "trend.json")
    write_csv(c, ["label", "depth", "replicas", "hits", "fraction", "se"], csv_rows)
    write_json(j, {"operation": "gw-ends-trend", "seed": cfg.seed,
                   "replicas": replicas, "all_ok": all_ok, "rows": row_reports})
    if params.get("enforce", False) and not all_ok:
        raise StatisticalFailure(f"trend expectations not met (see {j})")
    return RunResult(cfg.operation, (c, j),
                     f"trend over {len(rows)} sources x {len(depths)} depths, "
                     f"{replicas} replicas each")


def _op_reversibility(cfg: ExperimentConfig, workers: int) -> RunResult:
    params = cfg.params
    desc = params.get("source", {"kind": "example52"})
    if desc.get("kind") != "example52":
        raise ConfigError("the reversibility classifier only covers the "
                          "example52 source family")
    n = int(params.get("samples", 10**5))
    law = params.get("root_law", "conductance")
    if law not in ("conductance", "tree-only"):
        raise ConfigError(f"unknown root law {law!r}")
    max_level = int(params.get("max_level", 5))

    source = example52_source()
    rng = spawn(cfg.seed, "reversibility", law)
    if law == "conductance":
        sampler = lambda r: example52_root(source, r)
        exact = example52_exact_class_probability
    else:
        sampler = lambda r: source.root
        exact = None
    report = reversibility_check(source, sampler, n, rng,
                                 classifier=example52_classifier, exact=exact)

    def level(label):
        return -1 if label == ("tree",) else label[1]

    enforced = [s for s in report.stats
                if level(s.label) <= max_level and s.exact is not None]
    matches = all(s.within_three_se for s in enforced)

    csv_rows = []
    for s in report.stats:
        csv_rows.append(["/".join(str(p) for p in s.label), s.count, s.frequency,
                         s.partner_frequency,
                         _fr(s.exact) if s.exact is not None else "",
                         s.z_exact if s.z_exact is not None else ""])
    c = os.path.join(cfg.out_dir, "classes.csv")
    j = os.path.join(cfg.out_dir, "reversibility.json")
    write_csv(c, ["class", "count", "frequency", "partner_frequency",
                  "exact", "z"], csv_rows)
    write_json(j, {
        "operation": "reversibility", "seed": cfg.seed, "samples": n,
        "root_law": law, "max_pair_z": report.max_pair_z,
        "swap_symmetric": report.swap_symmetric,
        "matches_exact": matches,
        "classes": [{
            "label": "/".join(str(p) for p in s.label),
            "count": s.count,
            "frequency": s.frequency,
            "partner_frequency": s.partner_frequency,
            "exact": _fr(s.exact) if s.exact is not None else None,
            "z": s.z_exact,
        } for s in report.stats],
    })
    if params.get("enforce", False):
        if law == "conductance" and not (report.swap_symmetric and matches):
            raise StatisticalFailure(f"reversibility check failed (see {j})")
        if law == "tree-only" and report.swap_symmetric:
            raise StatisticalFailure("negative control unexpectedly looked "
                                     f"reversible (see {j})")
    return RunResult(cfg.operation, (c, j),
                     f"classified {n} doubly rooted samples under the {law} law")


_OPS = {
    "sample-ust": _op_sample_ust,
    "sample-oust": _op_sample_oust,
    "dynamics-run": _op_dynamics_run,
    "certify": _op_certify,
    "three-ends": _op_three_ends,
    "gw-ends-trend": _op_gw_ends_trend,
    "reversibility": _op_reversibility,
}


def run(config: ExperimentConfig, workers: int | None = None) -> RunResult:
    os.makedirs(config.out_dir, exist_ok=True)
    return _OPS[config.operation](config, resolve_workers(workers, config.params))


# -- example52 window membership -----------------------------------------

@dataclass(frozen=True)
class MembershipReport:
    n_samples: int
    n_edges_checked: int
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


def example52_window(source, tree_radius: int, path_length: int):
    """Window keeping the tree ball plus a long prefix of every hung path.

    Checked edges are the path edges within tree_radius - 1 steps of the
    carrying tree vertex; the paths extend far beyond that so a walk started
    inside them almost never escapes through the far, wired end.  Returns
    (keep, checked edge ids, branch order); the order visits deep path
    vertices first, which makes Wilson runs on this window far cheaper.
    """
    ball = [source.root]
    dist = {source.root: 0}
    queue = deque([source.root])
    while queue:
        v = queue.popleft()
        if dist[v] == tree_radius:
            continue
        for nb in source.neighborhood(v):
            if source.describe(nb.other) == ("tree",) and nb.other not in dist:
                dist[nb.other] = dist[v] + 1
                queue.append(nb.other)
                ball.append(nb.other)

    keep = list(ball)
    checked = []
    order = []
    for v in ball:
        cur = v
        for level in range(1, path_length + 1):
            nxt = next(nb for nb in source.neighborhood(cur)
                       if source.describe(nb.other) == ("path", level))
            keep.append(nxt.other)
            if level <= tree_radius - 1:
                checked.append(nxt.edge_id)
            cur = nxt.other
        order.append(cur)
    return keep, checked, order


def example52_membership_check(n_samples: int, depth: int, seed: int,
                               path_length: int | None = None) -> MembershipReport:
    """Count window samples in which an interior added-path edge is missing."""
    if path_length is None:
        path_length = depth + 32
    source = example52_source()
    keep, checked, order = example52_window(source, depth, path_length)
    contraction = wired_contract(source, keep)
    violations = 0
    for i in range(n_samples):
        sample = sample_oust(contraction, order=order,
                             rng=spawn(seed, "member", i))
        present = sample.forest.edge_ids
        violations += sum(1 for eid in checked if eid not in present)
    return MembershipReport(n_samples, len(checked), violations)
