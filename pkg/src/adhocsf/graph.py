"""Mutable undirected simple graph used as the overlay container.

Node ids are allocated monotonically and never reused, so a trace that
mentions a deleted node stays unambiguous. Besides the adjacency sets the
graph keeps a dense degree array (indexed by id) so candidate weights can be
gathered with one numpy fancy-index, and a swap-remove list of live ids so a
uniform live node can be drawn in O(1).
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    """Raised on operations that would break the simple-graph contract."""


class Graph:
    def __init__(self) -> None:
        self._adj: dict[int, set[int]] = {}
        self._next_id = 0
        self._deg = np.zeros(64, dtype=np.int64)
        self._live: list[int] = []
        self._pos: dict[int, int] = {}
        # half-edge endpoints; entries whose edge is gone are skipped lazily
        self._stub_a: list[int] = []
        self._stub_b: list[int] = []
        self.edge_count = 0

    # -- nodes ---------------------------------------------------------------

    @property
    def live_count(self) -> int:
        return len(self._adj)

    @property
    def next_id(self) -> int:
        return self._next_id

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, u: object) -> bool:
        return u in self._adj

    def nodes(self) -> list[int]:
        """Live node ids in ascending order."""
        return sorted(self._adj)

    def add_node(self, node_id: int | None = None) -> int:
        """Insert a node and return its id.

        ``node_id`` is only meant for loaders that must preserve ids; it has
        to be at least :attr:`next_id` so that ids stay monotone.
        """
        if node_id is None:
            u = self._next_id
        else:
            u = int(node_id)
            if u < self._next_id:
                raise GraphError(f"node id {u} would reuse an allocated id")
        self._next_id = u + 1
        if u >= len(self._deg):
            grown = np.zeros(max(2 * len(self._deg), u + 1), dtype=np.int64)
            grown[: len(self._deg)] = self._deg
            self._deg = grown
        self._deg[u] = 0
        self._adj[u] = set()
        self._pos[u] = len(self._live)
        self._live.append(u)
        return u

    def remove_node(self, u: int) -> set[int]:
        """Delete ``u`` with its incident edges; return its former neighbours."""
        nbrs = self._adj.pop(u, None)
        if nbrs is None:
            raise GraphError(f"node {u} is not live")
        deg = self._deg
        for v in nbrs:
            self._adj[v].discard(u)
            deg[v] -= 1
        deg[u] = 0
        self.edge_count -= len(nbrs)
        # swap-remove from the live list
        i = self._pos.pop(u)
        last = self._live.pop()
        if last != u:
            self._live[i] = last
            self._pos[last] = i
        return nbrs

    def random_node(self, rng: np.random.Generator, exclude: int | None = None) -> int:
        """Uniform live node, optionally different from ``exclude``."""
        n = len(self._live)
        if exclude is None or exclude not in self._pos:
            if n == 0:
                raise GraphError("graph has no live nodes")
            return self._live[int(rng.integers(n))]
        if n < 2:
            raise GraphError("no live node other than the excluded one")
        # draw from the list with ``exclude`` virtually swapped to the end
        j = self._pos[exclude]
        i = int(rng.integers(n - 1))
        return self._live[n - 1] if i == j else self._live[i]

    # -- edges ---------------------------------------------------------------

    def add_edge(self, u: int, v: int) -> bool:
        if u == v:
            raise GraphError(f"self-loop on {u}")
        adj = self._adj
        if u not in adj or v not in adj:
            raise GraphError(f"edge ({u}, {v}) touches a dead node")
        if v in adj[u]:
            return False
        adj[u].add(v)
        adj[v].add(u)
        self._deg[u] += 1
        self._deg[v] += 1
        self.edge_count += 1
        self._stub_a += (u, v)
        self._stub_b += (v, u)
        return True

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def preferential_node(self, rng: np.random.Generator) -> int:
        """Live node drawn with probability ``degree / (2 * edge_count)``."""
        if self.edge_count == 0:
            raise GraphError("graph has no edges")
        if len(self._stub_a) > 4 * self.edge_count + 1024:
            self._compact_stubs()
        a, b, adj = self._stub_a, self._stub_b, self._adj
        n = len(a)
        while True:
            i = int(rng.random() * n)
            nb = adj.get(a[i])
            if nb is not None and b[i] in nb:
                return a[i]

    def _compact_stubs(self) -> None:
        self._stub_a = []
        self._stub_b = []
        for u, v in self.edges():
            self._stub_a += (u, v)
            self._stub_b += (v, u)

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def neighbors(self, u: int) -> set[int]:
        """The live neighbour set of ``u``. Do not mutate it."""
        return self._adj[u]

    def degrees(self, ids: np.ndarray) -> np.ndarray:
        """Vectorised degree lookup for an integer id array."""
        return self._deg[ids]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in ascending order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj.values()), default=0)

    # -- traversal -----------------------------------------------------------

    def bfs_horizon(self, root: int, radius: int, exclude: Iterable[int] = (),
                    avoid: Iterable[int] = ()) -> set[int]:
        """Live nodes within ``radius`` hops of ``root`` (root included), minus ``exclude``.

        Nodes in ``exclude`` are still traversed; nodes in ``avoid`` are
        neither traversed nor returned.
        """
        if root not in self._adj:
            raise GraphError(f"node {root} is not live")
        if radius < 0:
            raise GraphError("radius must be non-negative")
        adj = self._adj
        avoid = set(avoid)
        avoid.discard(root)
        seen = {root} | avoid
        frontier = {root}
        for _ in range(radius):
            if not frontier:
                break
            nxt = set().union(*[adj[x] for x in frontier])
            nxt -= seen
            seen |= nxt
            frontier = nxt
        if avoid:
            seen -= avoid
        if exclude:
            seen.difference_update(exclude)
        return seen

    def bfs_distances(self, root: int) -> dict[int, int]:
        """Hop distance from ``root`` to every reachable node."""
        adj = self._adj
        dist = {root: 0}
        frontier = {root}
        d = 0
        while frontier:
            d += 1
            nxt = set().union(*[adj[x] for x in frontier])
            nxt.difference_update(dist)
            for x in nxt:
                dist[x] = d
            frontier = nxt
        return dist

    # -- maintenance ---------------------------------------------------------

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {u: set(nb) for u, nb in self._adj.items()}
        g._next_id = self._next_id
        g._deg = self._deg.copy()
        g._live = list(self._live)
        g._pos = dict(self._pos)
        g._stub_a = list(self._stub_a)
        g._stub_b = list(self._stub_b)
        g.edge_count = self.edge_count
        return g

    def audit(self) -> None:
        """Full scan of the structural invariants; raises GraphError on the first violation."""
        total = 0
        for u, nb in self._adj.items():
            if u in nb:
                raise GraphError(f"self-loop on {u}")
            if self._deg[u] != len(nb):
                raise GraphError(f"degree cache of {u} is {self._deg[u]}, expected {len(nb)}")
            for v in nb:
                if v not in self._adj:
                    raise GraphError(f"{u} links to dead node {v}")
                if u not in self._adj[v]:
                    raise GraphError(f"asymmetric edge ({u}, {v})")
            total += len(nb)
        if total != 2 * self.edge_count:
            raise GraphError(f"edge_count {self.edge_count} but degree sum {total}")
        if sorted(self._live) != sorted(self._adj):
            raise GraphError("live index out of sync")
        if any(u >= self._next_id for u in self._adj):
            raise GraphError("live id not below next_id")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], nodes: Iterable[int] = ()) -> "Graph":
        """Build a graph keeping the given ids. Duplicate edges are ignored."""
        edges = [(int(u), int(v)) for u, v in edges]
        ids = set(int(x) for x in nodes)
        for u, v in edges:
            ids.add(u)
            ids.add(v)
        g = cls()
        for u in sorted(ids):
            g.add_node(u)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def __repr__(self) -> str:
        return f"Graph(live={self.live_count}, edges={self.edge_count})"
