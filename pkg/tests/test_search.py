import itertools
from collections import Counter
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adhocsf.graph import Graph, GraphError
from adhocsf.search import (Algorithm, SearchParams, flood_profile, flood_search, nf_search,
                            run_search, rw_budget_from_nf, rw_search, walk_profile)

from conftest import complete_graph, floyd_warshall, path_graph, star_graph

# graphs of at most 8 nodes used against exact enumeration
SMALL = {
    "house": [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4), (4, 5)],
    "wheel": [(0, i) for i in range(1, 7)] + [(i, i % 6 + 1) for i in range(1, 7)] + [(3, 7)],
    "lollipop": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)],
}


# -- oracles -----------------------------------------------------------------------


def flood_by_messages(g: Graph, source: int, ttl: int) -> tuple[set[int], int]:
    """Message-by-message flooding: each first receipt forwards once, the next round."""
    covered = {source}
    inbox = [(None, source)]
    messages = 0
    for _ in range(ttl):
        outbox = []
        for sender, node in inbox:
            outbox += [(node, v) for v in sorted(g.neighbors(node)) if v != sender]
        messages += len(outbox)
        inbox = []
        for sender, v in outbox:
            if v not in covered:
                covered.add(v)
                inbox.append((sender, v))
        if not inbox:
            break
    return covered - {source}, messages


def nf_law(g: Graph, source: int, ttl: int, m: int) -> dict[int, Fraction]:
    """Exact law of |covered| for normalized flooding, enumerating every subset choice."""
    law: dict[int, Fraction] = {}

    def round_(seen, frontier, rnd, p):
        if rnd > ttl or not frontier:
            law[len(seen) - 1] = law.get(len(seen) - 1, Fraction(0)) + p
            return
        senders = sorted(frontier)

        def pick(i, seen, nxt, p):
            if i == len(senders):
                round_(seen, nxt, rnd + 1, p)
                return
            v = senders[i]
            prev = frontier[v]
            elig = sorted(g.neighbors(v) - ({prev} if prev is not None else set()))
            k = min(m, len(elig))
            q = Fraction(1, comb(len(elig), k))
            for subset in itertools.combinations(elig, k):
                s2, n2 = set(seen), dict(nxt)
                for t in subset:
                    if t not in s2:
                        s2.add(t)
                        n2[t] = v
                pick(i + 1, s2, n2, p * q)

        pick(0, seen, {}, p)

    round_({source}, {source: None}, 1, Fraction(1))
    return law


def rw_law(g: Graph, source: int, budget: int) -> dict[int, Fraction]:
    """Exact law of |covered| for the non-backtracking walk with dead-end reversal."""
    law: dict[int, Fraction] = {}

    def step(prev, cur, visited, left, p):
        nb = sorted(g.neighbors(cur))
        if left == 0 or not nb:
            law[len(visited)] = law.get(len(visited), Fraction(0)) + p
            return
        if prev is None:
            choices = nb
        elif len(nb) == 1:
            choices = nb
        else:
            choices = [x for x in nb if x != prev]
        for x in choices:
            step(cur, x, visited | ({x} - {source}), left - 1, p / len(choices))

    step(None, source, frozenset(), budget, Fraction(1))
    return law


def total_variation(samples: list[int], law: dict[int, Fraction]) -> float:
    counts = Counter(samples)
    keys = set(counts) | set(law)
    return 0.5 * sum(abs(counts[k] / len(samples) - float(law.get(k, 0))) for k in keys)


# -- flooding ------------------------------------------------------------------------


def test_flood_examples():
    out = flood_search(path_graph(5), 0, None, 3)
    assert out.covered == {1, 2, 3} and out.messages == 3
    out = flood_search(star_graph(5), 1, None, 2)
    assert out.covered == {0, 2, 3, 4, 5} and out.messages == 5
    out = flood_search(complete_graph(3), 0, None, 2)
    assert out.covered == {1, 2} and out.messages == 4
    assert flood_by_messages(complete_graph(3), 0, 2) == ({1, 2}, 4)


def test_flood_target_and_errors():
    out = flood_search(path_graph(5), 0, 3, 5)
    assert out.success and out.hops_to_target == 3
    assert out.covered == {1, 2, 3, 4}
    out = flood_search(path_graph(5), 0, 4, 2)
    assert not out.success and out.hops_to_target is None
    with pytest.raises(GraphError):
        flood_search(path_graph(3), 7, None, 1)
    with pytest.raises(GraphError):
        flood_search(path_graph(3), 0, 9, 1)
    with pytest.raises(ValueError):
        flood_search(path_graph(3), 0, None, -1)
    assert flood_search(path_graph(3), 0, None, 0).messages == 0


@st.composite
def connected_graphs(draw, max_nodes=10):
    n = draw(st.integers(2, max_nodes))
    # random spanning tree plus chords
    edges = [(draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges += draw(st.lists(st.sampled_from(pairs), max_size=n))
    return Graph.from_edges(edges)


@given(connected_graphs(), st.data())
def test_flood_matches_message_level_simulation(g, data):
    s = data.draw(st.sampled_from(g.nodes()))
    ttl = data.draw(st.integers(0, 6))
    out = flood_search(g, s, None, ttl)
    assert (out.covered, out.messages) == flood_by_messages(g, s, ttl)


@given(connected_graphs(), st.data())
def test_flood_covers_everything_past_the_eccentricity(g, data):
    s = data.draw(st.sampled_from(g.nodes()))
    dist = floyd_warshall(g)
    ecc = int(max(dist[s, v] for v in g.nodes()))
    assert flood_search(g, s, None, ecc).covered == set(g.nodes()) - {s}


@given(connected_graphs(), st.data(), st.integers(1, 3), st.integers(0, 2**32))
def test_nf_never_costs_more_than_flooding(g, data, m, seed):
    s = data.draw(st.sampled_from(g.nodes()))
    ttl = data.draw(st.integers(0, 5))
    nf = nf_search(g, s, None, ttl, m, np.random.default_rng(seed))
    fl = flood_search(g, s, None, ttl)
    assert nf.messages <= fl.messages
    assert nf.covered <= fl.covered
    assert len(nf.covered) <= nf.messages


@given(connected_graphs(), st.data())
def test_flood_coverage_is_nested_in_ttl(g, data):
    s = data.draw(st.sampled_from(g.nodes()))
    runs = [flood_search(g, s, None, t).covered for t in range(6)]
    assert all(a <= b for a, b in zip(runs, runs[1:]))


# -- normalized flooding ---------------------------------------------------------------


def test_nf_star_leaf_picks_two_of_four(rng):
    g = star_graph(5)
    subsets = Counter()
    for _ in range(12_000):
        out = nf_search(g, 1, None, 2, 2, rng)
        assert len(out.covered) == 3 and out.messages == 3 and 0 in out.covered
        subsets[frozenset(out.covered - {0})] += 1
    assert len(subsets) == 6
    assert max(abs(c / 12_000 - 1 / 6) for c in subsets.values()) < 0.02


def test_nf_path_is_flooding(rng):
    out = nf_search(path_graph(4), 0, None, 3, 1, rng)
    assert out.covered == {1, 2, 3} and out.messages == 3


@given(connected_graphs(), st.data(), st.integers(0, 2**32))
def test_nf_with_large_fanout_is_flooding(g, data, seed):
    s = data.draw(st.sampled_from(g.nodes()))
    ttl = data.draw(st.integers(0, 5))
    nf = nf_search(g, s, None, ttl, g.max_degree(), np.random.default_rng(seed))
    fl = flood_search(g, s, None, ttl)
    assert (nf.covered, nf.messages) == (fl.covered, fl.messages)


def test_nf_source_uses_at_most_m_neighbours(rng):
    out = nf_search(star_graph(6), 0, None, 1, 2, rng)
    assert len(out.covered) == 2 and out.messages == 2


@pytest.mark.parametrize("name,source,ttl,m", [("house", 0, 3, 1), ("wheel", 0, 2, 2),
                                               ("lollipop", 3, 3, 2), ("wheel", 7, 3, 1)])
def test_nf_coverage_law_matches_enumeration(name, source, ttl, m):
    g = Graph.from_edges(SMALL[name])
    law = nf_law(g, source, ttl, m)
    assert sum(law.values()) == 1
    rng = np.random.default_rng(7)
    samples = [len(nf_search(g, source, None, ttl, m, rng).covered) for _ in range(100_000)]
    assert total_variation(samples, law) <= 0.01


# -- random walk ---------------------------------------------------------------------


def test_rw_examples(rng):
    out = rw_search(path_graph(4), 0, None, 3, rng)
    assert out.covered == {1, 2, 3} and out.messages == 3
    out = rw_search(path_graph(4), 0, 1, 5, rng)
    assert out.success and out.hops_to_target == 1 and out.messages == 1
    lonely = Graph.from_edges([], nodes=[0])
    out = rw_search(lonely, 0, None, 4, rng)
    assert out.covered == set() and out.messages == 0
    with pytest.raises(GraphError):
        rw_search(path_graph(2), 5, None, 1, rng)
    with pytest.raises(ValueError):
        rw_search(path_graph(2), 0, None, -1, rng)


def test_rw_star_from_hub_law():
    # the walker alternates leaf, hub, leaf, hub, leaf; only the immediately
    # previous node is excluded, so the third leaf repeats the first w.p. 1/4
    g = star_graph(5)
    law = rw_law(g, 0, 5)
    assert law == {3: Fraction(3, 4), 2: Fraction(1, 4)}
    rng = np.random.default_rng(8)
    samples = [len(rw_search(g, 0, None, 5, rng).covered) for _ in range(100_000)]
    assert total_variation(samples, law) <= 0.01


@pytest.mark.parametrize("name,source,budget", [("house", 5, 6), ("wheel", 7, 7), ("lollipop", 6, 8)])
def test_rw_coverage_law_matches_enumeration(name, source, budget):
    g = Graph.from_edges(SMALL[name])
    law = rw_law(g, source, budget)
    rng = np.random.default_rng(9)
    samples = [len(rw_search(g, source, None, budget, rng).covered) for _ in range(100_000)]
    assert total_variation(samples, law) <= 0.01


@given(connected_graphs(), st.data(), st.integers(0, 20), st.integers(0, 2**32))
def test_rw_visits_at_most_budget_nodes(g, data, budget, seed):
    s = data.draw(st.sampled_from(g.nodes()))
    out = rw_search(g, s, None, budget, np.random.default_rng(seed))
    assert len(out.covered) <= out.messages <= budget


@pytest.mark.parametrize("budget", [1, 4, 9])
def test_rw_on_path_from_the_end_visits_exactly_budget(budget, rng):
    assert len(rw_search(path_graph(10), 0, None, budget, rng).covered) == budget


# -- profiles and budget pairing -----------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SMALL))
def test_profiles_equal_separate_runs_on_a_shared_stream(name):
    g = Graph.from_edges(SMALL[name])
    for seed in range(20):
        prof = flood_profile(g, 0, 4, 5, m=2, rng=np.random.default_rng(seed))
        walk = walk_profile(g, 0, None, 12, np.random.default_rng(seed))
        for t in range(6):
            out = nf_search(g, 0, 4, t, 2, np.random.default_rng(seed))
            assert prof.at(t) == (len(out.covered), out.messages, out.success)
        for b in range(13):
            out = rw_search(g, 0, None, b, np.random.default_rng(seed))
            assert walk.at(b)[:2] == (len(out.covered), out.messages)
        covs = [prof.at(t)[0] for t in range(8)]
        assert covs == sorted(covs)


def test_rw_budget_from_nf(rng):
    assert rw_budget_from_nf(path_graph(4), 0, 3, 1, rng) == 3
    assert rw_budget_from_nf(star_graph(5), 1, 2, 2, rng) == 3
    assert rw_budget_from_nf(star_graph(5), 1, 0, 2, rng) == 0


def test_run_search_dispatch(rng):
    g = path_graph(4)
    for alg in Algorithm:
        out = run_search(g, SearchParams(alg, 3, 1), 0, 3, rng)
        assert out.success and out.hops_to_target == 3
    with pytest.raises(ValueError):
        SearchParams(Algorithm.FL, -1)
    with pytest.raises(ValueError):
        SearchParams(Algorithm.NF, 2, 0)


@given(connected_graphs(), st.data(), st.integers(0, 2**32))
def test_success_implies_hops_within_ttl(g, data, seed):
    s, t = data.draw(st.lists(st.sampled_from(g.nodes()), min_size=2, max_size=2, unique=True))
    ttl = data.draw(st.integers(0, 5))
    for out in (flood_search(g, s, t, ttl), nf_search(g, s, t, ttl, 1, np.random.default_rng(seed))):
        assert out.success == (t in out.covered)
        if out.success:
            assert 1 <= out.hops_to_target <= ttl
