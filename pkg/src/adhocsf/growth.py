"""Overlay growth by horizon-limited preferential attachment with churn.

A joining node only sees the nodes within ``tau_j`` hops of a randomly drawn
live node and attaches to them preferentially; a departing node's neighbours
only see the nodes within ``tau_l`` hops of the departed node when they look
for a replacement link. Nodes already at the hard cutoff ``k_c`` never accept
links.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph, GraphError
from .rng import growth_rng

# join gives up after this many root re-draws per live node
JOIN_BUDGET_FACTOR = 10
# horizon radii served by rejection sampling (membership test needs radius-1 balls)
REJECTION_RADII = (2, 3)
REJECTION_TRIES = 16


@dataclass(frozen=True)
class GrowthParams:
    mu: float = 0.0
    tau_j: int = 2
    tau_l: int = 0
    k_c: int | None = None
    m: int = 1
    n_target: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        # JSON configs may give mu as an int; keep provenance lines identical to the CLI's
        object.__setattr__(self, "mu", float(self.mu))
        if not 0.0 <= self.mu < 1.0:
            raise ValueError(f"mu must lie in [0, 1), got {self.mu}")
        if self.tau_j < 0 or self.tau_l < 0:
            raise ValueError("horizons tau_j and tau_l must be >= 0")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.k_c is not None and self.k_c <= self.m:
            raise ValueError(f"k_c={self.k_c} must exceed m={self.m}")
        if self.n_target < self.m + 2:
            raise ValueError(f"n_target must be >= m + 2 = {self.m + 2}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def cap(self) -> int:
        """Hard cutoff as a plain integer (effectively infinite when unbounded)."""
        return np.iinfo(np.int64).max if self.k_c is None else self.k_c

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class GrowthTrace:
    joins: int = 0
    leaves: int = 0
    failed_stub_attachments: int = 0
    rewires_attempted: int = 0
    rewires_completed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def seed_clique(m: int, k_c: int | None = None) -> Graph:
    """Complete graph on ``m + 1`` nodes, the starting core of every run."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if k_c is not None and k_c < m:
        raise ValueError(f"clique degree {m} exceeds k_c={k_c}")
    g = Graph()
    for _ in range(m + 1):
        g.add_node()
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            g.add_edge(u, v)
    return g


def preferential_sample(cand: np.ndarray, weights: np.ndarray, k: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Draw up to ``k`` distinct candidates, successively, proportional to weight.

    Zero-weight (isolated) candidates are only reachable once every positive
    weight candidate is taken; among themselves they are drawn uniformly.
    """
    if k <= 0 or len(cand) == 0:
        return cand[:0]
    pos = weights > 0
    heavy = cand[pos]
    if len(heavy) <= k:
        picked = heavy
    else:
        w = weights[pos].astype(float)
        return rng.choice(heavy, size=k, replace=False, p=w / w.sum())
    rest = k - len(picked)
    light = cand[~pos]
    if rest > 0 and len(light) > 0:
        if len(light) > rest:
            light = rng.choice(light, size=rest, replace=False)
        picked = np.concatenate([picked, light])
    return picked


def attach_from_horizon(g: Graph, u: int, root: int, params: GrowthParams,
                        rng: np.random.Generator) -> int:
    """One horizon round of a join: link ``u`` to nodes seen from ``root``.

    The horizon is fixed when the round starts, so all picks are made before
    any edge is added. Returns the number of links created.
    """
    cap = params.cap
    need = params.m - g.degree(u)
    if need <= 0:
        return 0
    if params.tau_j == 0:
        # the horizon is the root alone and degrees play no role
        if root != u and not g.has_edge(u, root) and g.degree(root) < cap:
            g.add_edge(u, root)
            return 1
        return 0
    picks: list[int] = []
    if params.tau_j in REJECTION_RADII:
        picks = _pick_by_rejection(g, u, root, params, rng, need)
    if len(picks) < need:
        h = g.bfs_horizon(root, params.tau_j, exclude=(u,))
        h.difference_update(g.neighbors(u))
        h.difference_update(picks)
        if h:
            cand = np.fromiter(h, dtype=np.int64, count=len(h))
            cand.sort()
            deg = g.degrees(cand)
            keep = deg < cap
            cand, deg = cand[keep], deg[keep]
            picks += [int(v) for v in preferential_sample(cand, deg, need - len(picks), rng)]
    for v in picks:
        g.add_edge(u, v)
    return len(picks)


def _pick_by_rejection(g: Graph, u: int, root: int, params: GrowthParams,
                       rng: np.random.Generator, need: int) -> list[int]:
    """Preferential picks inside the horizon without materialising it.

    A global degree-proportional draw, kept only if it lies in the horizon and
    is eligible, is an exact degree-proportional draw from the eligible part
    of the horizon. Membership for radius ``t`` is "x in ball(root, t-1) or a
    neighbour of x is". Gives up after ``REJECTION_TRIES`` consecutive misses;
    the caller then samples the remainder explicitly, which keeps the overall
    law exact.
    """
    if g.edge_count == 0:
        return []
    cap = params.cap
    inner = g.bfs_horizon(root, params.tau_j - 1)
    mine = g.neighbors(u)
    picks: list[int] = []
    misses = 0
    while len(picks) < need and misses < REJECTION_TRIES:
        x = g.preferential_node(rng)
        if (x == u or x in mine or x in picks or g.degree(x) >= cap
                or (x not in inner and inner.isdisjoint(g.neighbors(x)))):
            misses += 1
            continue
        picks.append(x)
        misses = 0
    return picks


def join(g: Graph, params: GrowthParams, rng: np.random.Generator,
         trace: GrowthTrace | None = None) -> int:
    """Add one node and attach up to ``m`` links through random horizons."""
    if g.live_count < 1:
        raise GraphError("join needs at least one live node")
    u = g.add_node()
    budget = JOIN_BUDGET_FACTOR * g.live_count
    draws = 0
    while g.degree(u) < params.m:
        if draws >= budget or g.live_count < 2:
            if trace is not None:
                trace.failed_stub_attachments += 1
            break
        draws += 1
        root = g.random_node(rng, exclude=u)
        attach_from_horizon(g, u, root, params, rng)
    if trace is not None:
        trace.joins += 1
    return u


def leave(g: Graph, victim: int, params: GrowthParams, rng: np.random.Generator,
          trace: GrowthTrace | None = None) -> None:
    """Remove ``victim``; each former neighbour then tries one replacement link.

    The candidate horizon is taken around the victim before it is removed.
    Neighbours rewire in ascending id order and see each other's new links.
    """
    if victim not in g:
        raise GraphError(f"node {victim} is not live")
    horizon = None
    if params.tau_l > 0:
        h = g.bfs_horizon(victim, params.tau_l, exclude=(victim,))
        horizon = np.fromiter(h, dtype=np.int64, count=len(h))
        horizon.sort()
    nbrs = g.remove_node(victim)
    if trace is not None:
        trace.leaves += 1
    if horizon is None or len(horizon) == 0:
        return
    cap = params.cap
    for w in sorted(nbrs):
        if trace is not None:
            trace.rewires_attempted += 1
        if g.degree(w) >= cap:
            # an earlier rewire already filled w up to the cutoff
            continue
        deg = g.degrees(horizon)
        ok = deg < cap
        # mask w itself and its current neighbours
        blocked = np.fromiter(g.neighbors(w), dtype=np.int64, count=g.degree(w))
        blocked = np.append(blocked, w)
        idx = np.minimum(np.searchsorted(horizon, blocked), len(horizon) - 1)
        ok[idx[horizon[idx] == blocked]] = False
        picks = preferential_sample(horizon[ok], deg[ok], 1, rng)
        if len(picks):
            g.add_edge(w, int(picks[0]))
            if trace is not None:
                trace.rewires_completed += 1


def check_invariants(g: Graph, params: GrowthParams) -> None:
    g.audit()
    if params.k_c is not None and g.max_degree() > params.k_c:
        raise GraphError(f"degree above cutoff {params.k_c}")


def grow(params: GrowthParams, rng: np.random.Generator | None = None,
         check: bool = False) -> tuple[Graph, GrowthTrace]:
    """Grow a network from an ``m + 1`` clique to ``n_target`` live nodes.

    With ``check=True`` the full invariant audit runs after every join and
    leave; that is quadratic and meant for small debug runs.
    """
    if rng is None:
        rng = growth_rng(params.seed)
    g = seed_clique(params.m, params.k_c)
    trace = GrowthTrace()
    while True:
        join(g, params, rng, trace)
        if check:
            check_invariants(g, params)
        if g.live_count >= params.n_target:
            break
        if rng.random() < params.mu and g.live_count > params.m + 2:
            leave(g, g.random_node(rng), params, rng, trace)
            if check:
                check_invariants(g, params)
    return g, trace
