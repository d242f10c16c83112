"""Seeded parameter sweeps: grow, measure, search, reduce to one tidy CSV."""
from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .edgelist import write_atomic, write_edgelist
from .graph import Graph
from .growth import GrowthParams, grow
from .metrics import components, degree_distribution, fit_power_law
from .rng import derive_seed, growth_rng, search_rng
from .search import Algorithm, flood_profile, walk_profile

log = logging.getLogger(__name__)

WORKERS_ENV = "ADHOCSF_WORKERS"
SCHEMA_PATH = Path(__file__).with_name("sweep.schema.json")

SWEEP_COLUMNS = ["mu", "tau_j", "tau_l", "kc", "m", "realization", "seed", "gamma_hat",
                 "giant_fraction", "algo", "ttl", "mean_covered", "success_rate"]


@dataclass
class GrowthGrid:
    mu: list[float] = field(default_factory=lambda: [0.0])
    tau_j: list[int] = field(default_factory=lambda: [2])
    tau_l: list[int] = field(default_factory=lambda: [0])
    k_c: list[int | None] = field(default_factory=lambda: [None])
    m: list[int] = field(default_factory=lambda: [1])
    n: list[int] = field(default_factory=lambda: [10_000])


@dataclass
class SearchGrid:
    algorithms: list[str] = field(default_factory=lambda: ["FL", "NF", "RW"])
    ttl: list[int] = field(default_factory=lambda: list(range(1, 9)))
    queries: int = 1000
    stop_coverage: float | None = None


@dataclass
class ExperimentSpec:
    growth: GrowthGrid = field(default_factory=GrowthGrid)
    search: SearchGrid = field(default_factory=SearchGrid)
    realizations: int = 5
    base_seed: int = 0
    output_dir: str = "runs"
    save_graphs: bool = False

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentSpec":
        validate_spec(doc)
        return cls(
            growth=GrowthGrid(**doc.get("growth", {})),
            search=SearchGrid(**doc.get("search", {})),
            **{k: v for k, v in doc.items() if k not in ("growth", "search", "$schema", "comment")},
        )

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ExperimentSpec":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def points(self) -> list[tuple]:
        """Grid points as ``(mu, tau_j, tau_l, k_c, m, n)`` in a fixed order."""
        g = self.growth
        return list(itertools.product(g.mu, g.tau_j, g.tau_l, g.k_c, g.m, g.n))

    def runs(self) -> list["RunTask"]:
        tasks = []
        for point in self.points():
            for r in range(self.realizations):
                tasks.append(RunTask(point, r, derive_seed(self.base_seed, point, r)))
        return tasks


def validate_spec(doc: dict) -> None:
    import jsonschema

    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(doc, schema)


@dataclass(frozen=True)
class RunTask:
    point: tuple
    realization: int
    seed: int

    def params(self) -> GrowthParams:
        mu, tau_j, tau_l, k_c, m, n = self.point
        return GrowthParams(mu=mu, tau_j=tau_j, tau_l=tau_l, k_c=k_c, m=m,
                            n_target=n, seed=self.seed)


def default_fit_window(params: GrowthParams, max_degree: int) -> tuple[int, int]:
    """Bulk window ``[2m, k_c - 1]`` (``[2m, max degree]`` when unbounded); the cutoff spike is left out."""
    k_max = params.k_c - 1 if params.k_c is not None else max_degree
    return 2 * params.m, k_max


def sample_queries(g: Graph, giant: list[int], q: int,
                   rng: np.random.Generator) -> list[tuple[int, int]]:
    """``q`` (source, target) pairs of distinct nodes drawn uniformly from the giant component."""
    nodes = np.array(sorted(giant))
    if len(nodes) < 2:
        return []
    pairs = []
    for _ in range(q):
        i, j = rng.choice(len(nodes), size=2, replace=False)
        pairs.append((int(nodes[i]), int(nodes[j])))
    return pairs


@dataclass
class QueryRecord:
    algo: str
    ttl: int
    query_id: int
    source: int
    target: int | None
    covered: int
    messages: int
    success: bool
    hops_to_target: int | None
    budget: int


def evaluate_queries(g: Graph, pairs: list[tuple[int, int | None]], algorithms: list[str],
                     ttls: list[int], m: int, rng: np.random.Generator) -> list[QueryRecord]:
    """Run every query once per algorithm up to the largest TTL and read all TTLs off the profile.

    Round ``t`` of an FL/NF run is exactly a run with ``ttl = t``. RW at TTL
    ``t`` walks for as many steps as the paired NF run used messages at ``t``.
    """
    algs = [Algorithm(a) for a in algorithms]
    tmax = max(ttls)
    out: list[QueryRecord] = []
    for qid, (s, t) in enumerate(pairs):
        profs = {}
        if Algorithm.FL in algs:
            profs[Algorithm.FL] = flood_profile(g, s, t, tmax)
        if Algorithm.NF in algs or Algorithm.RW in algs:
            profs[Algorithm.NF] = flood_profile(g, s, t, tmax, m=m, rng=rng)
        if Algorithm.RW in algs:
            budget = profs[Algorithm.NF].at(tmax)[1]
            profs[Algorithm.RW] = walk_profile(g, s, t, budget, rng)
        for alg in algs:
            prof = profs[alg]
            for ttl in ttls:
                budget = profs[Algorithm.NF].at(ttl)[1] if alg is Algorithm.RW else ttl
                cov, msg, ok = prof.at(budget)
                hops = prof.hit if ok else None
                out.append(QueryRecord(alg.value, ttl, qid, s, t, cov, msg, ok, hops, budget))
    return out


def aggregate(records: list[QueryRecord]) -> dict[tuple[str, int], dict]:
    groups: dict[tuple[str, int], list[QueryRecord]] = {}
    for r in records:
        groups.setdefault((r.algo, r.ttl), []).append(r)
    return {
        key: {
            "n_queries": len(rs),
            "mean_covered": float(np.mean([r.covered for r in rs])),
            "success_rate": float(np.mean([r.success for r in rs])),
            "mean_messages": float(np.mean([r.messages for r in rs])),
            "mean_budget": float(np.mean([r.budget for r in rs])),
        }
        for key, rs in sorted(groups.items())
    }


def apply_coverage_stop(agg: dict[tuple[str, int], dict], n_live: int,
                        stop: float | None) -> dict[tuple[str, int], dict]:
    """Per algorithm, drop TTLs after the first one whose mean coverage exceeds ``stop * n_live``."""
    if stop is None:
        return agg
    kept = {}
    done: set[str] = set()
    for (algo, ttl), row in sorted(agg.items()):
        if algo in done:
            continue
        kept[(algo, ttl)] = row
        if row["mean_covered"] > stop * n_live:
            done.add(algo)
    return kept


def fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def run_one(task: RunTask, spec: ExperimentSpec) -> list[dict]:
    """Grow, measure and search one realization; returns its tidy rows."""
    params = task.params()
    g, trace = grow(params, rng=growth_rng(task.seed))
    comp = components(g)
    dist = degree_distribution(g)
    k_min, k_max = default_fit_window(params, g.max_degree())
    try:
        gamma = fit_power_law(dist, k_min, k_max).gamma_hat
    except ValueError:
        gamma = float("nan")
    mu, tau_j, tau_l, k_c, m, n = task.point
    base = {"mu": mu, "tau_j": tau_j, "tau_l": tau_l, "kc": k_c, "m": m,
            "realization": task.realization, "seed": task.seed,
            "gamma_hat": gamma, "giant_fraction": comp.giant_fraction}
    if spec.save_graphs:
        write_edgelist(g, Path(spec.output_dir) / "graphs" / f"{task.seed:016x}.edges",
                       comments=[provenance("grow", **params.as_dict())])
    s = spec.search
    if not s.algorithms or not s.ttl:
        return [dict(base, algo="", ttl="", mean_covered="", success_rate="")]
    rng = search_rng(task.seed)
    pairs = sample_queries(g, comp.giant, s.queries, rng)
    if not pairs:
        # no two nodes share a component: keep the grid shape, mark the metrics undefined
        nan = float("nan")
        return [dict(base, algo=a, ttl=t, mean_covered=nan, success_rate=nan)
                for a in sorted(s.algorithms) for t in sorted(s.ttl)]
    agg = aggregate(evaluate_queries(g, pairs, s.algorithms, sorted(s.ttl), m, rng))
    agg = apply_coverage_stop(agg, g.live_count, s.stop_coverage)
    return [dict(base, algo=algo, ttl=ttl, mean_covered=row["mean_covered"],
                 success_rate=row["success_rate"]) for (algo, ttl), row in agg.items()]


def provenance(command: str, **fields) -> str:
    parts = [f"adhocsf {__version__}", f"cmd={command}"]
    parts += [f"{k}={fmt(v)}" for k, v in fields.items()]
    return " ".join(parts)


def rows_to_csv(rows: list[dict], columns: list[str], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[c]) if r[c] != "" else "" for c in columns])
    return buf.getvalue()


def _worker(args: tuple[RunTask, ExperimentSpec]) -> tuple[RunTask, list[dict] | None, str]:
    task, spec = args
    try:
        rows = run_one(task, spec)
    except Exception as exc:  # partial-failure policy: log and keep going
        return task, None, f"{type(exc).__name__}: {exc}"
    part = Path(spec.output_dir) / "parts" / f"{task.seed:016x}.csv"
    write_atomic(part, rows_to_csv(rows, SWEEP_COLUMNS))
    return task, rows, ""


def worker_count(requested: int | None = None) -> int:
    if requested:
        return requested
    env = os.environ.get(WORKERS_ENV)
    return int(env) if env else (os.cpu_count() or 1)


def run_sweep(spec: ExperimentSpec, workers: int | None = None) -> tuple[Path, list[RunTask]]:
    """Run the full grid; returns the merged CSV path and the list of failed runs."""
    tasks = spec.runs()
    n_workers = worker_count(workers)
    jobs = [(t, spec) for t in tasks]
    if n_workers <= 1:
        results = [_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_worker, jobs))
    rows: list[dict] = []
    failed: list[RunTask] = []
    # reduce in task order so the merged file does not depend on scheduling
    for task, task_rows, err in results:
        if task_rows is None:
            log.error("run point=%s realization=%d seed=%d failed: %s",
                      task.point, task.realization, task.seed, err)
            failed.append(task)
        else:
            rows.extend(task_rows)
    out = Path(spec.output_dir) / "sweep.csv"
    header = provenance("sweep", base_seed=spec.base_seed, realizations=spec.realizations,
                        runs=len(tasks), failed=len(failed))
    write_atomic(out, rows_to_csv(rows, SWEEP_COLUMNS, [header]))
    return out, failed
