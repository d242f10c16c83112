"""Flooding, normalized flooding and random-walk search over an overlay.

Flooding variants run in synchronous rounds: a node forwards only in the
round after it first receives the query, never to the neighbour it got the
query from, and duplicate deliveries cost a message but trigger nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .graph import Graph, GraphError


class Algorithm(str, Enum):
    FL = "FL"
    NF = "NF"
    RW = "RW"


@dataclass(frozen=True)
class SearchParams:
    algorithm: Algorithm
    ttl: int
    m: int = 1

    def __post_init__(self) -> None:
        if self.ttl < 0:
            raise ValueError("ttl must be >= 0")
        if self.m < 1:
            raise ValueError("m must be >= 1")


@dataclass
class SearchOutcome:
    covered: set[int]
    messages: int
    success: bool = False
    hops_to_target: int | None = None


@dataclass
class SearchProfile:
    """Cumulative state after each round (FL/NF) or step (RW); index 0 is the start."""

    covered: list[int] = field(default_factory=lambda: [0])
    messages: list[int] = field(default_factory=lambda: [0])
    hit: int | None = None

    def at(self, t: int) -> tuple[int, int, bool]:
        """``(|covered|, messages, success)`` for a budget of ``t``; runs that stopped early plateau."""
        i = min(t, len(self.covered) - 1)
        return self.covered[i], self.messages[i], self.hit is not None and self.hit <= t


def _check_endpoints(g: Graph, source: int, target: int | None) -> None:
    if source not in g:
        raise GraphError(f"source {source} is not live")
    if target is not None and target not in g:
        raise GraphError(f"target {target} is not live")


def _wave(g: Graph, source: int, target: int | None, ttl: int, fanout: int | None,
          rng: np.random.Generator | None) -> tuple[SearchOutcome, SearchProfile]:
    _check_endpoints(g, source, target)
    prof = SearchProfile()
    seen = {source}
    messages = 0
    hit = None
    if fanout is None:
        # plain flooding: every forwarder sends deg - 1 copies (deg for the source)
        frontier = {source}
        for rnd in range(1, ttl + 1):
            if not frontier:
                break
            messages += sum(g.degree(v) for v in frontier) - (0 if rnd == 1 else len(frontier))
            new = set().union(*[g.neighbors(v) for v in frontier])
            new -= seen
            seen |= new
            if hit is None and target in new:
                hit = rnd
            frontier = new
            prof.covered.append(len(seen) - 1)
            prof.messages.append(messages)
    else:
        sender: dict[int, int | None] = {source: None}
        frontier_list = [source]
        for rnd in range(1, ttl + 1):
            if not frontier_list:
                break
            nxt = []
            for v in sorted(frontier_list):
                prev = sender[v]
                eligible = sorted(g.neighbors(v) if prev is None else g.neighbors(v) - {prev})
                if len(eligible) > fanout:
                    idx = rng.choice(len(eligible), size=fanout, replace=False)
                    eligible = [eligible[i] for i in idx]
                messages += len(eligible)
                for t in eligible:
                    if t not in seen:
                        seen.add(t)
                        sender[t] = v
                        nxt.append(t)
                        if t == target and hit is None:
                            hit = rnd
            frontier_list = nxt
            prof.covered.append(len(seen) - 1)
            prof.messages.append(messages)
    seen.discard(source)
    prof.hit = hit
    return SearchOutcome(seen, messages, hit is not None, hit), prof


def flood_search(g: Graph, source: int, target: int | None, ttl: int,
                 rng: np.random.Generator | None = None) -> SearchOutcome:
    """Flooding for ``ttl`` rounds. Deterministic; ``rng`` is accepted for a uniform signature."""
    if ttl < 0:
        raise ValueError("ttl must be >= 0")
    return _wave(g, source, target, ttl, None, None)[0]


def nf_search(g: Graph, source: int, target: int | None, ttl: int, m: int,
              rng: np.random.Generator) -> SearchOutcome:
    """Normalized flooding: each forwarder sends to at most ``m`` random eligible neighbours."""
    if ttl < 0 or m < 1:
        raise ValueError("need ttl >= 0 and m >= 1")
    return _wave(g, source, target, ttl, m, rng)[0]


def flood_profile(g: Graph, source: int, target: int | None, ttl: int,
                  m: int | None = None, rng: np.random.Generator | None = None) -> SearchProfile:
    """Per-round profile of FL (``m=None``) or NF; round ``t`` equals a run with ``ttl=t``."""
    return _wave(g, source, target, ttl, m, rng)[1]


def _walk(g: Graph, source: int, target: int | None, budget: int,
          rng: np.random.Generator) -> tuple[SearchOutcome, SearchProfile]:
    _check_endpoints(g, source, target)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    prof = SearchProfile()
    visited: set[int] = set()
    prev = None
    cur = source
    steps = 0
    hit = None
    while steps < budget:
        nb = g.neighbors(cur)
        if not nb:
            break
        if prev is None:
            choices = sorted(nb)
        elif len(nb) == 1:
            # dead end: the only way on is back
            choices = [prev]
        else:
            choices = sorted(nb - {prev})
        nxt = choices[int(rng.integers(len(choices)))] if len(choices) > 1 else choices[0]
        prev, cur = cur, nxt
        steps += 1
        if cur != source:
            visited.add(cur)
        prof.covered.append(len(visited))
        prof.messages.append(steps)
        if cur == target:
            hit = steps
            break
    prof.hit = hit
    return SearchOutcome(visited, steps, hit is not None, hit), prof


def rw_search(g: Graph, source: int, target: int | None, budget: int,
              rng: np.random.Generator) -> SearchOutcome:
    """Single non-backtracking walker of at most ``budget`` steps; stops on the target."""
    return _walk(g, source, target, budget, rng)[0]


def walk_profile(g: Graph, source: int, target: int | None, budget: int,
                 rng: np.random.Generator) -> SearchProfile:
    return _walk(g, source, target, budget, rng)[1]


def rw_budget_from_nf(g: Graph, source: int, ttl: int, m: int,
                      rng: np.random.Generator) -> int:
    """Messages of one target-less NF run, used as the paired RW step budget."""
    return nf_search(g, source, None, ttl, m, rng).messages


def run_search(g: Graph, params: SearchParams, source: int, target: int | None,
               rng: np.random.Generator) -> SearchOutcome:
    """Dispatch on ``params.algorithm``; for RW, ``params.ttl`` is the step budget."""
    alg = Algorithm(params.algorithm)
    if alg is Algorithm.FL:
        return flood_search(g, source, target, params.ttl)
    if alg is Algorithm.NF:
        return nf_search(g, source, target, params.ttl, params.m, rng)
    return rw_search(g, source, target, params.ttl, rng)
