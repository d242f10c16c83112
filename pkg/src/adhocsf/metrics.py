"""Empirical measurements on grown overlays."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .graph import Graph

LOG_BIN_BASE = 1.3


@dataclass
class DegreeDistribution:
    counts: dict[int, int]
    n_live: int
    binning: str = "raw"
    base: float = LOG_BIN_BASE

    def pk(self) -> dict[int, float]:
        """Normalised ``P(k)`` on the raw degrees."""
        if self.n_live == 0:
            return {}
        return {k: c / self.n_live for k, c in sorted(self.counts.items())}

    def samples(self) -> np.ndarray:
        """One degree value per live node."""
        ks = sorted(self.counts)
        return np.repeat(np.array(ks, dtype=np.int64), [self.counts[k] for k in ks])

    def log_binned(self, base: float | None = None) -> list[tuple[float, float, float]]:
        """Geometric bins over ``k >= 1``: ``(k_lo, k_hi, density)``.

        Bin ``i`` covers the integers in ``[base**i, base**(i+1))``; density is
        the probability mass in the bin divided by the number of integers it
        holds. Empty-of-integers bins are dropped.
        """
        base = base or self.base
        kmax = max((k for k in self.counts if k >= 1), default=0)
        out = []
        if kmax == 0:
            return out
        edges = [1.0]
        while edges[-1] <= kmax:
            edges.append(edges[-1] * base)
        for lo, hi in zip(edges, edges[1:]):
            ints = range(int(np.ceil(lo)), int(np.ceil(hi)))
            if len(ints) == 0:
                continue
            mass = sum(self.counts.get(k, 0) for k in ints) / self.n_live
            out.append((float(ints[0]), float(ints[-1]), mass / len(ints)))
        return out


@dataclass
class PowerLawFit:
    gamma_hat: float
    k_min: int
    k_max: int
    stderr: float
    n: int = 0


@dataclass
class ComponentReport:
    n_components: int
    giant_fraction: float
    isolated_nodes: int
    giant: list[int] = field(default_factory=list, repr=False)


def degree_distribution(g: Graph, binning: str = "raw") -> DegreeDistribution:
    if binning not in ("raw", "log"):
        raise ValueError(f"unknown binning {binning!r}")
    counts = Counter(g.degree(u) for u in g.nodes())
    return DegreeDistribution(dict(sorted(counts.items())), g.live_count, binning)


def average_distributions(dists: list[DegreeDistribution]) -> dict[int, float]:
    """Pointwise mean of normalised ``P(k)`` across realizations."""
    ks = sorted(set().union(*(d.counts for d in dists)))
    pks = [d.pk() for d in dists]
    return {k: float(np.mean([p.get(k, 0.0) for p in pks])) for k in ks}


def fit_power_law(d: DegreeDistribution | np.ndarray, k_min: int, k_max: int) -> PowerLawFit:
    """Discrete power-law MLE restricted to ``k_min <= k <= k_max``.

    Maximises ``-gamma * sum(log k) - n log Z(gamma)`` with
    ``Z = sum_{k=k_min}^{k_max} k^-gamma``; the standard error is the inverse
    square root of the observed Fisher information ``n Var_gamma[log k]``.
    """
    if isinstance(d, DegreeDistribution):
        ks = np.array([k for k in d.counts if k_min <= k <= k_max], dtype=float)
        cs = np.array([d.counts[int(k)] for k in ks], dtype=float)
    else:
        vals, cnt = np.unique(np.asarray(d), return_counts=True)
        sel = (vals >= k_min) & (vals <= k_max)
        ks, cs = vals[sel].astype(float), cnt[sel].astype(float)
    if len(ks) < 3:
        raise ValueError(f"window [{k_min}, {k_max}] has {len(ks)} support points, need 3")
    n = cs.sum()
    mean_log = float(cs @ np.log(ks)) / n
    support = np.log(np.arange(k_min, k_max + 1, dtype=float))

    def nll(gamma: float) -> float:
        a = -gamma * support
        top = a.max()
        log_z = top + np.log(np.exp(a - top).sum())
        return gamma * mean_log + log_z

    res = minimize_scalar(nll, bounds=(1.0 + 1e-9, 20.0), method="bounded",
                          options={"xatol": 1e-10})
    gamma = float(res.x)
    w = np.exp(-gamma * support - (-gamma * support).max())
    w /= w.sum()
    var = float(w @ support**2 - (w @ support) ** 2)
    stderr = float(1.0 / np.sqrt(n * var)) if var > 0 else float("inf")
    return PowerLawFit(gamma, int(k_min), int(k_max), stderr, int(n))


class DisjointSet:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}

    def add(self, x: int) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def components(g: Graph) -> ComponentReport:
    ds = DisjointSet()
    for u in g.nodes():
        ds.add(u)
    for u, v in g.edges():
        ds.union(u, v)
    groups: dict[int, list[int]] = {}
    for u in g.nodes():
        groups.setdefault(ds.find(u), []).append(u)
    if not groups:
        return ComponentReport(0, 0.0, 0)
    # largest component; ties go to the one holding the smallest id
    giant = max(groups.values(), key=lambda c: (len(c), -c[0]))
    isolated = sum(1 for u in g.nodes() if g.degree(u) == 0)
    return ComponentReport(len(groups), len(giant) / g.live_count, isolated, giant)


def mean_shortest_path(g: Graph, sample_pairs: int, rng: np.random.Generator,
                       exact_limit: int = 1000) -> float:
    """Mean hop distance over distinct node pairs of the giant component.

    Exact over all pairs when the graph has at most ``exact_limit`` live
    nodes; otherwise averaged over ``sample_pairs`` uniform pairs.
    """
    if sample_pairs < 1:
        raise ValueError("sample_pairs must be >= 1")
    giant = components(g).giant
    if len(giant) < 2:
        raise ValueError("giant component has fewer than 2 nodes")
    if g.live_count <= exact_limit:
        total = 0
        for u in giant:
            total += sum(g.bfs_distances(u).values())
        return total / (len(giant) * (len(giant) - 1))
    nodes = np.array(sorted(giant))
    cache: dict[int, dict[int, int]] = {}
    total = 0
    for _ in range(sample_pairs):
        i, j = rng.choice(len(nodes), size=2, replace=False)
        s, t = int(nodes[i]), int(nodes[j])
        if s not in cache:
            cache[s] = g.bfs_distances(s)
        total += cache[s][t]
    return total / sample_pairs
