"""Simple graphs with stable edge identities and the derived structures the
rest of the package is built on: truncated distance oracles, girth
computation, and the edge-conflict graph on which strong colorings live.

Vertices are dense 0-based indices.  A :class:`BipartiteGraph` keeps its left
side on ``0..n_left-1`` and its right side on ``n_left..n_left+n_right-1``;
text serialization (:mod:`strongedge.dimacs`) shifts everything to 1-based.

Edge ids are stable under deletion: removing an edge leaves a tombstone, so
ids held elsewhere (colorings, construction traces) stay valid until
:meth:`SimpleGraph.compact` renumbers them explicitly.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator

from .errors import DuplicateEdgeError, InvalidEdgeError

INFINITE_GIRTH = math.inf


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SimpleGraph:
    """Mutable simple undirected graph on vertices ``0..n_vertices-1``.

    Self-loops and parallel edges are rejected at insertion time, so
    simplicity can never silently break.  Construction is single-writer;
    once built (or after :meth:`compact`) instances are treated as immutable
    values and are safe to share across threads.
    """

    def __init__(self, n_vertices: int):
        if n_vertices < 0:
            raise ValueError(f"vertex count must be >= 0, got {n_vertices}")
        self.n_vertices = n_vertices
        # edge id -> (u, v), or None for a removed (tombstoned) edge
        self._endpoints: list[tuple[int, int] | None] = []
        # vertex -> list of (neighbor, edge id)
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
        self._pair_to_eid: dict[tuple[int, int], int] = {}
        self._n_live = 0

    # -- construction -------------------------------------------------

    def add_edge(self, u: int, v: int) -> int:
        """Insert edge ``{u, v}`` and return its id.

        Raises :class:`DuplicateEdgeError` if the pair is already present.
        """
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        return self._insert(u, v)

    def _insert(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        if key in self._pair_to_eid:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        eid = len(self._endpoints)
        self._endpoints.append((u, v))
        self._adj[u].append((v, eid))
        self._adj[v].append((u, eid))
        self._pair_to_eid[key] = eid
        self._n_live += 1
        return eid

    def remove_edge(self, eid: int) -> None:
        """Tombstone edge ``eid``; all other edge ids remain valid."""
        u, v = self.endpoints(eid)
        self._adj[u] = [(w, e) for (w, e) in self._adj[u] if e != eid]
        self._adj[v] = [(w, e) for (w, e) in self._adj[v] if e != eid]
        del self._pair_to_eid[(u, v) if u < v else (v, u)]
        self._endpoints[eid] = None
        self._n_live -= 1

    def compact(self) -> dict[int, int]:
        """Renumber edge ids densely, dropping tombstones.

        Returns the old-id -> new-id map for live edges.
        """
        remap: dict[int, int] = {}
        endpoints: list[tuple[int, int] | None] = []
        for old, pair in enumerate(self._endpoints):
            if pair is None:
                continue
            remap[old] = len(endpoints)
            endpoints.append(pair)
        self._endpoints = endpoints
        self._adj = [[] for _ in range(self.n_vertices)]
        self._pair_to_eid = {}
        for eid, (u, v) in enumerate(endpoints):
            self._adj[u].append((v, eid))
            self._adj[v].append((u, eid))
            self._pair_to_eid[(u, v) if u < v else (v, u)] = eid
        return remap

    def copy(self) -> "SimpleGraph":
        g = self.__class__.__new__(self.__class__)
        g.__dict__.update(
            n_vertices=self.n_vertices,
            _endpoints=list(self._endpoints),
            _adj=[list(a) for a in self._adj],
            _pair_to_eid=dict(self._pair_to_eid),
            _n_live=self._n_live,
        )
        return g

    # -- queries ------------------------------------------------------

    @property
    def n_edges(self) -> int:
        """Number of live (non-tombstoned) edges."""
        return self._n_live

    @property
    def has_tombstones(self) -> bool:
        return self._n_live != len(self._endpoints)

    def endpoints(self, eid: int) -> tuple[int, int]:
        if not 0 <= eid < len(self._endpoints):
            raise InvalidEdgeError(f"edge id {eid} out of range")
        pair = self._endpoints[eid]
        if pair is None:
            raise InvalidEdgeError(f"edge id {eid} refers to a removed edge")
        return pair

    def edge_id(self, u: int, v: int) -> int | None:
        """Return the id of edge ``{u, v}`` or None if absent."""
        return self._pair_to_eid.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def edge_ids(self) -> list[int]:
        """Live edge ids in ascending order."""
        return [e for e, pair in enumerate(self._endpoints) if pair is not None]

    def edges(self) -> list[tuple[int, int]]:
        """Live endpoint pairs in edge-id order."""
        return [pair for pair in self._endpoints if pair is not None]

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """List of (neighbor, edge id) pairs incident to ``v``."""
        self._check_vertex(v)
        return list(self._adj[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def is_regular(self, k: int) -> bool:
        return all(len(a) == k for a in self._adj)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n_vertices:
            raise ValueError(f"vertex {v} out of range [0, {self.n_vertices})")

    def check_consistent(self) -> None:
        """Assert the adjacency and edge list agree (used by audits/tests)."""
        count = 0
        for eid, pair in enumerate(self._endpoints):
            if pair is None:
                continue
            count += 1
            u, v = pair
            assert (v, eid) in self._adj[u], f"edge {eid} missing from adj[{u}]"
            assert (u, eid) in self._adj[v], f"edge {eid} missing from adj[{v}]"
        assert count == self._n_live
        assert sum(len(a) for a in self._adj) == 2 * self._n_live


class BipartiteGraph(SimpleGraph):
    """Simple graph with an explicit two-sided vertex partition.

    Bipartiteness is structural: every edge joins a left vertex to a right
    vertex, enforced at insertion.  Note that :meth:`add_edge` takes
    *side-local* indices (``x`` within the left side, ``y`` within the right
    side), unlike the global-index signature of :class:`SimpleGraph`.
    """

    def __init__(self, n_left: int, n_right: int):
        if n_left < 1 or n_right < 1:
            raise ValueError(
                f"both sides must be non-empty, got ({n_left}, {n_right})"
            )
        super().__init__(n_left + n_right)
        self.n_left = n_left
        self.n_right = n_right

    def add_edge(self, x: int, y: int) -> int:  # type: ignore[override]
        """Insert the edge joining left vertex ``x`` to right vertex ``y``.

        Both indices are side-local and 0-based.
        """
        if not 0 <= x < self.n_left:
            raise ValueError(f"left index {x} out of range [0, {self.n_left})")
        if not 0 <= y < self.n_right:
            raise ValueError(f"right index {y} out of range [0, {self.n_right})")
        return self._insert(x, self.n_left + y)

    def right(self, y: int) -> int:
        """Global vertex id of right-side vertex ``y``."""
        if not 0 <= y < self.n_right:
            raise ValueError(f"right index {y} out of range [0, {self.n_right})")
        return self.n_left + y

    def left_vertices(self) -> range:
        return range(self.n_left)

    def right_vertices(self) -> range:
        return range(self.n_left, self.n_vertices)

    def is_left(self, v: int) -> bool:
        self._check_vertex(v)
        return v < self.n_left

    def copy(self) -> "BipartiteGraph":
        g = super().copy()
        g.n_left = self.n_left
        g.n_right = self.n_right
        return g


class DistanceOracle:
    """Exact hop distances from a source set, truncated at a cutoff depth.

    Distances are exact up to the cutoff; any vertex not reached is at
    distance >= cutoff + 1 and reports ``dist(v) is None``.
    """

    def __init__(self, sources: frozenset[int], cutoff: int, dist: list[int]):
        self.sources = sources
        self.cutoff = cutoff
        self._dist = dist

    def dist(self, v: int) -> int | None:
        d = self._dist[v]
        return None if d < 0 else d

    def reached(self, v: int) -> bool:
        return self._dist[v] >= 0

    def ball(self) -> set[int]:
        """All vertices within the cutoff of the source set."""
        return {v for v, d in enumerate(self._dist) if d >= 0}


def distances_from(g: SimpleGraph, sources: Iterable[int], cutoff: int) -> DistanceOracle:
    """Multi-source BFS truncated at ``cutoff`` hops.

    The distance of a vertex is the minimum over all sources, following the
    usual set-to-set distance convention.
    """
    src = frozenset(sources)
    if not src:
        raise ValueError("source set must be non-empty")
    if cutoff < 0:
        raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    dist = [-1] * g.n_vertices
    queue: deque[int] = deque()
    for s in src:
        g._check_vertex(s)
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= cutoff:
            continue
        for w, _eid in g._adj[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(w)
    return DistanceOracle(src, cutoff, dist)


def girth(g: SimpleGraph) -> int | float:
    """Length of a shortest cycle, or ``INFINITE_GIRTH`` for forests.

    One truncated BFS per vertex finds the shortest cycle through each
    vertex; O(V*E) overall, which is ample at desk scale.  For bipartite
    graphs the result is even.
    """
    best: int | float = INFINITE_GIRTH
    n = g.n_vertices
    for root in range(n):
        if not g._adj[root]:
            continue
        dist = [-1] * n
        parent_edge = [-1] * n
        dist[root] = 0
        queue: deque[int] = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            # No cycle through `root` shorter than `best` can involve
            # vertices deeper than best // 2.
            if du > best // 2:
                continue
            for w, eid in g._adj[u]:
                if eid == parent_edge[u]:
                    continue
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent_edge[w] = eid
                    queue.append(w)
                else:
                    cand = du + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


def closed_edge_neighborhood(g: SimpleGraph, eid: int) -> set[int]:
    """Ids of all edges sharing at least one endpoint with ``eid``, itself
    included.  In a k-regular graph this set has size 2k-1.
    """
    u, v = g.endpoints(eid)
    out = {e for _, e in g._adj[u]}
    out.update(e for _, e in g._adj[v])
    return out


class ConflictGraph:
    """The strong-coloring conflict structure of a graph.

    One node per live edge (in edge-id order); two nodes are adjacent exactly
    when the edges share an endpoint or some edge joins an endpoint of one to
    an endpoint of the other.  Strong edge-colorings of the source graph are
    precisely the proper vertex colorings of this graph.

    Adjacency is stored as one bit row per node (bit ``j`` of ``adj[i]`` set
    iff nodes i and j conflict); the solver's hot loop is bitwise
    intersection on these rows.  Instances are immutable values.
    """

    def __init__(
        self,
        n_nodes: int,
        edge_ids: tuple[int, ...],
        endpoints: tuple[tuple[int, int], ...],
        adj: list[int],
        shared_endpoint_adj: list[int],
        degrees: tuple[int, ...],
    ):
        self.n_nodes = n_nodes
        self.edge_ids = edge_ids
        self.endpoints = endpoints
        self.adj = adj
        self.shared_endpoint_adj = shared_endpoint_adj
        self.degrees = degrees

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, i: int) -> Iterator[int]:
        return iter_bits(self.adj[i])

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def closed_clique_mask(self, i: int) -> int:
        """Bitmask of the clique formed by node ``i`` and every node whose
        edge shares an endpoint with i's edge."""
        return self.shared_endpoint_adj[i] | (1 << i)


def conflict_graph(g: SimpleGraph) -> ConflictGraph:
    """Build the conflict graph of ``g``.

    Adjacency is symmetric and irreflexive by construction.
    """
    eids = g.edge_ids()
    m = len(eids)
    incident = [0] * g.n_vertices
    for i, e in enumerate(eids):
        u, v = g.endpoints(e)
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    adj: list[int] = []
    shared: list[int] = []
    endpoints: list[tuple[int, int]] = []
    for i, e in enumerate(eids):
        u, v = g.endpoints(e)
        self_bit = 1 << i
        share = (incident[u] | incident[v]) & ~self_bit
        mask = share
        for w, _ in g._adj[u]:
            mask |= incident[w]
        for w, _ in g._adj[v]:
            mask |= incident[w]
        mask &= ~self_bit
        adj.append(mask)
        shared.append(share)
        endpoints.append((u, v))
    degrees = tuple(a.bit_count() for a in adj)
    return ConflictGraph(m, tuple(eids), tuple(endpoints), adj, shared, degrees)
