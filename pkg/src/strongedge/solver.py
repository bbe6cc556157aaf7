"""Exact and heuristic strong edge-coloring on conflict graphs.

Everything here operates on a :class:`ConflictGraph`, so arbitrary simple
graphs are in scope, not only bipartite ones.  The decision engine is a
backtracking search that always branches on the uncolored node with the
fewest available colors (ties broken by conflict degree, then index) and
breaks color symmetry canonically: a fresh color may only be introduced as
the next unused id.  All searches are deterministic; budgets are wall-clock
with a node-count alternative for reproducible CI.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .graphs import ConflictGraph, conflict_graph, iter_bits

FOUND = "found"
EXHAUSTED = "none"
TIMEOUT = "timeout"

BRUTE_FORCE_EDGE_CAP = 14

_CLOCK_CHECK_INTERVAL = 256


@dataclass
class StrongColoring:
    """Assignment of 1-based color ids to edges, in conflict-node order.

    ``verified`` is only ever set by :func:`verify`.
    """

    colors: list[int]
    verified: bool = False

    @property
    def n_colors(self) -> int:
        return max(self.colors, default=0)

    def usage(self, color: int) -> int:
        return sum(1 for c in self.colors if c == color)

    def class_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in self.colors:
            sizes[c] = sizes.get(c, 0) + 1
        return sizes


@dataclass
class SearchResult:
    """Outcome of one coloring decision problem."""

    status: str  # FOUND | EXHAUSTED | TIMEOUT
    coloring: StrongColoring | None
    nodes: int


@dataclass
class SolveOutcome:
    status: str  # "exact" | "upper-bound-only"
    chi_s: int | None
    coloring: StrongColoring | None
    lower_bound: int
    upper_bound: int
    nodes: int
    elapsed_s: float
    timed_out: bool = False


@dataclass
class MinLastUsageResult:
    status: str  # "exact" | "best-found" | "infeasible"
    usage: int | None
    coloring: StrongColoring | None
    nodes: int


class _Budget:
    """Shared node/wall-clock budget threaded through nested searches."""

    def __init__(self, budget_ms: int | None = None, node_budget: int | None = None):
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self.node_limit = node_budget
        self.nodes = 0

    def spend(self) -> bool:
        """Charge one search node; True when the budget is exhausted."""
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            return True
        if (
            self.deadline is not None
            and self.nodes % _CLOCK_CHECK_INTERVAL == 0
            and time.monotonic() > self.deadline
        ):
            return True
        return False


def _as_conflict_graph(g) -> ConflictGraph:
    return g if isinstance(g, ConflictGraph) else conflict_graph(g)


def verify(g, phi: StrongColoring) -> bool:
    """True iff ``phi`` assigns distinct colors to every conflicting pair.

    ``g`` may be a graph or a prebuilt :class:`ConflictGraph`.  Every edge
    must carry a positive color; a length mismatch raises ``ValueError``.
    Sets ``phi.verified`` to the outcome.
    """
    cg = _as_conflict_graph(g)
    if len(phi.colors) != cg.n_nodes:
        raise ValueError(
            f"coloring covers {len(phi.colors)} edges, graph has {cg.n_nodes}"
        )
    if any(c < 1 for c in phi.colors):
        raise ValueError("every edge must be assigned a color >= 1")
    by_color: dict[int, int] = {}
    for i, c in enumerate(phi.colors):
        by_color[c] = by_color.get(c, 0) | (1 << i)
    ok = True
    for i, c in enumerate(phi.colors):
        if cg.adj[i] & by_color[c] & ~(1 << i):
            ok = False
            break
    phi.verified = ok
    return ok


def greedy_color(
    cg: ConflictGraph, order: str = "saturation", seed: int | None = None
) -> StrongColoring:
    """Greedy first-fit coloring; always valid, an upper bound on chi'_s.

    Order policies: ``saturation`` (most distinct neighbor colors first,
    ties by conflict degree then lowest index), ``index`` (static order),
    ``random`` (seeded shuffle of the static order).
    """
    m = cg.n_nodes
    colors = [0] * m
    forbid = [0] * m  # bit j set: color j+1 unusable

    def assign(v: int) -> None:
        free = ~forbid[v]
        c = (free & -free).bit_length()  # lowest clear bit, 1-based color
        colors[v] = c
        bit = 1 << (c - 1)
        for w in iter_bits(cg.adj[v]):
            forbid[w] |= bit

    if order == "saturation":
        sat_mask = [0] * m
        uncolored = set(range(m))
        while uncolored:
            v = max(
                uncolored,
                key=lambda u: (sat_mask[u].bit_count(), cg.degrees[u], -u),
            )
            assign(v)
            bit = 1 << (colors[v] - 1)
            for w in iter_bits(cg.adj[v]):
                sat_mask[w] |= bit
            uncolored.remove(v)
    elif order in ("index", "random"):
        sequence = list(range(m))
        if order == "random":
            random.Random(seed).shuffle(sequence)
        for v in sequence:
            assign(v)
    else:
        raise ValueError(f"unknown order policy {order!r}")

    phi = StrongColoring(colors)
    assert verify(cg, phi), "greedy produced an invalid coloring"
    return phi


def _decision_search(
    cg: ConflictGraph,
    palette: int,
    special_cap: int | None,
    budget: _Budget,
) -> SearchResult:
    """Find a proper coloring with colors 1..palette, or prove none exists.

    When ``special_cap`` is given, the highest color id ``palette`` is
    exempt from canonical introduction but may be used on at most
    ``special_cap`` nodes; colors 1..palette-1 stay interchangeable and are
    introduced in first-use order.  The special color occupies the highest
    bit, so ascending-bit enumeration tries it last.
    """
    m = cg.n_nodes
    start_nodes = budget.nodes
    if m == 0:
        return SearchResult(FOUND, StrongColoring([], verified=True), 0)
    if palette <= 0:
        return SearchResult(EXHAUSTED, None, 0)

    regular = palette if special_cap is None else palette - 1
    special_bit = 0 if special_cap is None else 1 << (palette - 1)
    adj = cg.adj
    degrees = cg.degrees
    colors = [0] * m
    forbid = [0] * m
    solution: list[int] | None = None
    state = {"uncolored": m, "used": 0, "special_left": special_cap or 0}

    def dfs() -> str:
        nonlocal solution
        if state["uncolored"] == 0:
            solution = list(colors)
            return FOUND
        if budget.spend():
            return TIMEOUT
        legal = (1 << min(state["used"] + 1, regular)) - 1
        if special_bit and state["special_left"] > 0:
            legal |= special_bit
        # Most-constrained node first.  Zero availability is a sound dead
        # end: the next fresh color is never forbidden, so it only happens
        # once the palette is truly exhausted for that node.
        best_v = -1
        best_cnt = palette + 1
        for v in range(m):
            if colors[v]:
                continue
            cnt = (legal & ~forbid[v]).bit_count()
            if cnt == 0:
                return EXHAUSTED
            if cnt < best_cnt or (cnt == best_cnt and degrees[v] > degrees[best_v]):
                best_v, best_cnt = v, cnt
        v = best_v
        avail = legal & ~forbid[v]
        while avail:
            bit = avail & -avail
            avail ^= bit
            c = bit.bit_length()
            colors[v] = c
            is_special = bool(special_bit) and bit == special_bit
            introduced = not is_special and c == state["used"] + 1
            if is_special:
                state["special_left"] -= 1
            elif introduced:
                state["used"] += 1
            touched = []
            rest = adj[v]
            while rest:
                wbit = rest & -rest
                rest ^= wbit
                w = wbit.bit_length() - 1
                if not colors[w] and not forbid[w] & bit:
                    forbid[w] |= bit
                    touched.append(w)
            state["uncolored"] -= 1

            res = dfs()

            state["uncolored"] += 1
            for w in touched:
                forbid[w] ^= bit
            if is_special:
                state["special_left"] += 1
            elif introduced:
                state["used"] -= 1
            colors[v] = 0
            if res != EXHAUSTED:
                return res
        return EXHAUSTED

    status = dfs()
    spent = budget.nodes - start_nodes
    if status == FOUND:
        phi = StrongColoring(solution)
        assert verify(cg, phi), "search produced an invalid coloring"
        return SearchResult(FOUND, phi, spent)
    return SearchResult(status, None, spent)


def find_coloring(
    cg: ConflictGraph,
    c: int,
    *,
    budget_ms: int | None = None,
    node_budget: int | None = None,
) -> SearchResult:
    """Decision problem: a valid coloring with at most ``c`` colors, a proof
    that none exists (status ``none``), or a timeout signal."""
    if c < 0:
        raise ValueError(f"color budget must be >= 0, got {c}")
    budget = _Budget(budget_ms, node_budget)
    return _decision_search(cg, c, None, budget)


def _clique_lower_bound(cg: ConflictGraph) -> int:
    """Size of a large clique found greedily.

    Each node's closed edge neighborhood is a clique (size 2k-1 in a
    k-regular graph); every one is used as a seed and extended greedily by
    common neighbors, highest conflict degree first.
    """
    best = 0
    for i in range(cg.n_nodes):
        clique = cg.closed_clique_mask(i)
        cand = ~0
        for j in iter_bits(clique):
            cand &= cg.adj[j]
        cand &= ~clique
        while cand:
            pick = max(iter_bits(cand), key=lambda j: (cg.degrees[j], -j))
            clique |= 1 << pick
            cand &= cg.adj[pick]
        best = max(best, clique.bit_count())
    return best


def exact_chi_s(
    cg: ConflictGraph,
    *,
    budget_ms: int | None = None,
    node_budget: int | None = None,
) -> SolveOutcome:
    """Exact strong chromatic index by branch and bound.

    Seeds the lower bound with a greedy clique extension of the best closed
    edge neighborhood, takes the saturation-greedy coloring as the upper
    bound, then settles each color count in between by exhaustive decision
    search, ascending.  On budget exhaustion the outcome carries the
    best-known bounds instead of an exact value.
    """
    t0 = time.monotonic()
    budget = _Budget(budget_ms, node_budget)
    m = cg.n_nodes
    if m == 0:
        return SolveOutcome("exact", 0, StrongColoring([], verified=True), 0, 0, 0, 0.0)

    lower = _clique_lower_bound(cg)
    best = greedy_color(cg)
    upper = best.n_colors
    chi: int | None = upper if upper == lower else None
    timed_out = False

    if chi is None:
        for c in range(lower, upper):
            res = _decision_search(cg, c, None, budget)
            if res.status == FOUND:
                chi, best = c, res.coloring
                break
            if res.status == TIMEOUT:
                timed_out = True
                break
            lower = c + 1  # exhausted search: c colors proven infeasible
        else:
            chi = upper  # every count below the greedy bound was refuted

    elapsed = time.monotonic() - t0
    if chi is not None:
        return SolveOutcome("exact", chi, best, chi, chi, budget.nodes, elapsed)
    return SolveOutcome(
        "upper-bound-only", None, best, lower, upper, budget.nodes, elapsed, timed_out
    )


def brute_force_chi_s(cg: ConflictGraph) -> int:
    """Reference oracle: exact chi'_s by exhaustive search.

    Enumerates canonical colorings (color labels in first-occurrence order)
    over the nodes in static index order, deepening the color budget one at
    a time.  No branching heuristics, bounds, or cliques are shared with
    :func:`exact_chi_s`.  Capped at |E| <= 14.
    """
    m = cg.n_nodes
    if m > BRUTE_FORCE_EDGE_CAP:
        raise ValueError(
            f"brute force is capped at {BRUTE_FORCE_EDGE_CAP} edges, got {m}"
        )
    if m == 0:
        return 0
    adj = cg.adj
    colors = [0] * m

    def feasible(i: int, used: int, cap: int) -> bool:
        if i == m:
            return True
        banned = 0
        for w in iter_bits(adj[i]):
            if colors[w]:
                banned |= 1 << (colors[w] - 1)
        for c in range(1, min(used + 1, cap) + 1):
            if banned >> (c - 1) & 1:
                continue
            colors[i] = c
            if feasible(i + 1, max(used, c), cap):
                colors[i] = 0
                return True
            colors[i] = 0
        return False

    for cap in range(1, m + 1):
        if feasible(0, 0, cap):
            return cap
    raise AssertionError("m distinct colors always suffice")


def min_last_color_usage(
    cg: ConflictGraph,
    k: int,
    *,
    budget_ms: int | None = None,
    node_budget: int | None = None,
) -> MinLastUsageResult:
    """Minimize how often color 2k appears among strong colorings with
    colors 1..2k.

    Solved as a sequence of decision problems with the usage cap t = 0, 1,
    2, ... ascending, so the first feasible cap is exact by construction.
    ``infeasible`` means no 2k-coloring exists at all, which is reported
    distinctly.  On budget exhaustion the best coloring found so far is
    returned with status ``best-found``.
    """
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    palette = 2 * k
    budget = _Budget(budget_ms, node_budget)
    m = cg.n_nodes
    if m == 0:
        return MinLastUsageResult("exact", 0, StrongColoring([], verified=True), 0)

    probe = _decision_search(cg, palette, None, budget)
    if probe.status == EXHAUSTED:
        return MinLastUsageResult("infeasible", None, None, budget.nodes)
    if probe.status == TIMEOUT:
        return MinLastUsageResult("best-found", None, None, budget.nodes)

    best = _relabel_minimizing_last(probe.coloring, palette)
    best_usage = best.usage(palette)
    if best_usage == 0:
        return MinLastUsageResult("exact", 0, best, budget.nodes)

    for t in range(best_usage):
        res = _decision_search(cg, palette, t, budget)
        if res.status == FOUND:
            usage = res.coloring.usage(palette)
            assert usage == t, "caps below t were already refuted"
            return MinLastUsageResult("exact", usage, res.coloring, budget.nodes)
        if res.status == TIMEOUT:
            return MinLastUsageResult("best-found", best_usage, best, budget.nodes)
    # Every cap below the probe's usage was refuted, so the probe is optimal.
    return MinLastUsageResult("exact", best_usage, best, budget.nodes)


def _relabel_minimizing_last(phi: StrongColoring, palette: int) -> StrongColoring:
    """Swap color labels so the least-used class sits on ``palette``."""
    sizes = phi.class_sizes()
    if palette not in sizes:
        return phi
    smallest = min(sizes, key=lambda c: (sizes[c], -c))
    if smallest == palette:
        return phi
    swapped = [
        smallest if c == palette else palette if c == smallest else c
        for c in phi.colors
    ]
    return StrongColoring(swapped, verified=phi.verified)
