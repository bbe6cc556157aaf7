"""Shared builders and independent reference oracles for the test suite.

The oracles here deliberately use different algorithms from the library
(edge-based girth instead of vertex-based, quadratic conflict predicate
instead of bit rows) so cross-checks are meaningful.
"""

from __future__ import annotations

import math
import random
from collections import deque

from strongedge import BipartiteGraph, SimpleGraph


def cycle_graph(n: int) -> SimpleGraph:
    g = SimpleGraph(n)
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
    return g


def path_graph(n_vertices: int) -> SimpleGraph:
    g = SimpleGraph(n_vertices)
    for i in range(n_vertices - 1):
        g.add_edge(i, i + 1)
    return g


def star_graph(leaves: int) -> SimpleGraph:
    g = SimpleGraph(leaves + 1)
    for i in range(leaves):
        g.add_edge(0, i + 1)
    return g


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    g = BipartiteGraph(a, b)
    for x in range(a):
        for y in range(b):
            g.add_edge(x, y)
    return g


def bipartite_cycle(n: int) -> BipartiteGraph:
    """C_{2n} built directly as an n+n bipartition."""
    g = BipartiteGraph(n, n)
    for i in range(n):
        g.add_edge(i, i)
        g.add_edge((i + 1) % n, i)
    return g


def heawood_graph() -> BipartiteGraph:
    """The unique cubic girth-6 graph on 14 vertices (difference set {0,1,3})."""
    g = BipartiteGraph(7, 7)
    for i in range(7):
        for d in (0, 1, 3):
            g.add_edge(i, (i + d) % 7)
    return g


def random_simple_graph(rng: random.Random, max_vertices: int = 10, max_edges: int = 14) -> SimpleGraph:
    n = rng.randint(2, max_vertices)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    g = SimpleGraph(n)
    for u, v in pairs[: rng.randint(0, min(max_edges, len(pairs)))]:
        g.add_edge(u, v)
    return g


def brute_girth(g: SimpleGraph) -> int | float:
    """Reference girth: min over edges of 1 + shortest path avoiding it."""
    best: int | float = math.inf
    for eid in g.edge_ids():
        u, v = g.endpoints(eid)
        dist = {u: 0}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                break
            for b, e in g.neighbors(a):
                if e != eid and b not in dist:
                    dist[b] = dist[a] + 1
                    queue.append(b)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def conflicts_by_definition(g: SimpleGraph, e: int, f: int) -> bool:
    """Direct check: edges share an endpoint, or some edge joins them."""
    if e == f:
        return False
    a, b = g.endpoints(e)
    c, d = g.endpoints(f)
    if {a, b} & {c, d}:
        return True
    for u, v in g.edges():
        if {u, v} <= {a, b} | {c, d} and len({u, v} & {a, b}) == 1:
            return True
    return False
