"""Construction of k-regular bipartite graphs with girth at least g.

The build is inductive on the degree.  The base is a Hamiltonian cycle
x0 y0 x1 y1 ... x_{n-1} y_{n-1} on 2n vertices.  Each level lifts a
(k-1)-regular graph to a k-regular one by growing a set A of cross edges,
one unit per iteration: either add an edge between low-degree vertices at
distance >= g-1, or, when no such pair exists, remove one previously added
edge x_h y_h whose endpoints are far from the chosen low pair and add the
two edges x_l y_h and y_l x_h instead.  Both moves preserve girth >= g, and
above a parameter floor (:func:`min_n`) the swap edge is guaranteed to
exist by a counting argument, so construction cannot get stuck.

Every accepted step is recorded in a :class:`GeneratorTrace`; replaying a
trace from the base cycle reproduces the output graph exactly and re-checks
the girth invariant after every step.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import ConstructionFailedError, InternalInvariantError
from .graphs import BipartiteGraph, distances_from, girth


def min_n(k: int, g: int) -> int:
    """Smallest side size with a construction guarantee for degree k and
    girth target g: max(g, ceil(3 * (k-1)^(g-1) / (k-2))) when k >= 3, and
    g itself when k = 2."""
    _check_params(k, g)
    if k == 2:
        return g
    return max(g, math.ceil(3 * (k - 1) ** (g - 1) / (k - 2)))


def choose_n(k: int, g: int) -> int:
    """Smallest guaranteed side size n with 2k-1 not dividing n.

    Since gcd(k, 2k-1) = 1, this makes 2k-1 not divide the edge count kn
    either, which is what the counting certificate needs.
    """
    n = min_n(k, g)
    window = 2 * k - 1
    while n % window == 0:
        n += 1
    return n


def _check_params(k: int, g: int) -> None:
    if k < 2:
        raise ValueError(f"degree must be >= 2, got {k}")
    if g < 3:
        raise ValueError(f"girth target must be >= 3, got {g}")


def base_cycle(n: int) -> BipartiteGraph:
    """Hamiltonian cycle on 2n vertices, alternating sides; girth 2n."""
    if n < 2:
        raise ValueError(f"cycle half-length must be >= 2, got {n}")
    g = BipartiteGraph(n, n)
    for i in range(n):
        g.add_edge(i, i)
        g.add_edge((i + 1) % n, i)
    return g


@dataclass(frozen=True)
class AddStep:
    """Edge x_l y_l added between a distant low pair (global vertex ids)."""

    x: int
    y: int
    girth_ok: bool = True


@dataclass(frozen=True)
class SwapStep:
    """Removed x_h y_h and added x_l y_h plus y_l x_h (global vertex ids)."""

    x_high: int
    y_high: int
    x_low: int
    y_low: int
    girth_ok: bool = True

    @property
    def added(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.x_low, self.y_high), (self.y_low, self.x_high))


@dataclass(frozen=True)
class GeneratorTrace:
    """Reproducible log of one construction run.

    The line format is ``ADD x y`` / ``SWAP xh yh xl yl`` with 1-based
    vertex ids matching the DIMACS numbering, after a header recording the
    run parameters.
    """

    k: int
    g: int
    n: int
    seed: int
    steps: tuple = ()

    def to_text(self) -> str:
        lines = [f"# k={self.k} g={self.g} n={self.n} seed={self.seed}"]
        for s in self.steps:
            if isinstance(s, AddStep):
                lines.append(f"ADD {s.x + 1} {s.y + 1}")
            else:
                lines.append(
                    f"SWAP {s.x_high + 1} {s.y_high + 1} {s.x_low + 1} {s.y_low + 1}"
                )
        return "\n".join(lines) + "\n"


@dataclass
class AugmentState:
    """Bookkeeping for one degree-raising level.

    ``added`` holds the edge ids of A; the four vertex sets partition each
    side by current degree (k-1 = low, k = high) and satisfy
    |x_low| == |y_low| throughout.
    """

    graph: BipartiteGraph
    k: int
    girth_target: int
    added: set[int] = field(default_factory=set)
    x_low: set[int] = field(default_factory=set)
    x_high: set[int] = field(default_factory=set)
    y_low: set[int] = field(default_factory=set)
    y_high: set[int] = field(default_factory=set)

    @classmethod
    def from_graph(cls, graph: BipartiteGraph, k: int, girth_target: int) -> "AugmentState":
        state = cls(graph=graph, k=k, girth_target=girth_target)
        for v in range(graph.n_vertices):
            d = graph.degree(v)
            if d == k - 1:
                (state.x_low if graph.is_left(v) else state.y_low).add(v)
            elif d == k:
                (state.x_high if graph.is_left(v) else state.y_high).add(v)
            else:
                raise ValueError(
                    f"vertex {v} has degree {d}; expected {k - 1} or {k}"
                )
        if len(state.x_low) != len(state.y_low):
            raise ValueError(
                f"unbalanced low sets: |x_low|={len(state.x_low)} "
                f"|y_low|={len(state.y_low)}"
            )
        return state

    def _add_cross(self, u: int, v: int) -> int:
        x, y = (u, v) if self.graph.is_left(u) else (v, u)
        return self.graph.add_edge(x, y - self.graph.n_left)

    def _raise_low(self, x: int, y: int) -> None:
        self.x_low.remove(x)
        self.x_high.add(x)
        self.y_low.remove(y)
        self.y_high.add(y)


def _edge_keeps_girth(graph: BipartiteGraph, eid: int, girth_target: int) -> bool:
    """True iff every cycle through edge ``eid`` has length >= girth_target.

    A cycle through the edge closes a path between its endpoints avoiding
    it, so a single BFS from one endpoint that skips the edge and stops at
    depth girth_target - 2 decides the question exactly.
    """
    u, v = graph.endpoints(eid)
    cutoff = girth_target - 2
    if cutoff < 1:
        return True
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        da = dist[a]
        if da >= cutoff:
            continue
        for b, e in graph._adj[a]:
            if e == eid or b in dist:
                continue
            if b == v:
                return False
            dist[b] = da + 1
            queue.append(b)
    return True


def find_distant_low_pair(state: AugmentState, rng: random.Random) -> tuple[int, int] | None:
    """Some low pair (x_l, y_l) at distance >= g-1, or None if none exists.

    Low vertices are tried in seeded-random order; for each x_l one BFS to
    depth g-2 finds its ball, and a uniformly random low y outside the ball
    is taken.  Any vertex not reached within g-2 hops is at distance
    >= g-1, which is exactly the admission threshold.
    """
    xs = sorted(state.x_low)
    rng.shuffle(xs)
    ys = sorted(state.y_low)
    for x in xs:
        oracle = distances_from(state.graph, [x], state.girth_target - 2)
        candidates = [y for y in ys if not oracle.reached(y)]
        if candidates:
            return x, rng.choice(candidates)
    return None


def find_swap_edge(
    state: AugmentState, x_l: int, y_l: int, rng: random.Random
) -> tuple[int, int]:
    """An added edge (x_h, y_h) with all four distances to {x_l, y_l} at
    least g-1.

    Above the parameter floor such an edge always exists once no distant
    low pair does (the added edges outnumber the ones close to the low
    pair), so failure to find one raises
    :class:`InternalInvariantError`.
    """
    if not state.added:
        raise InternalInvariantError("swap requested with no added edges")
    oracle = distances_from(state.graph, [x_l, y_l], state.girth_target - 2)
    candidates = sorted(state.added)
    rng.shuffle(candidates)
    for eid in candidates:
        u, v = state.graph.endpoints(eid)
        if not oracle.reached(u) and not oracle.reached(v):
            return (u, v) if state.graph.is_left(u) else (v, u)
    raise InternalInvariantError(
        f"no swap edge among {len(state.added)} added edges is distant from "
        f"({x_l}, {y_l}); the counting guarantee was violated"
    )


def apply_swap(state: AugmentState, x_l: int, y_l: int, x_h: int, y_h: int) -> None:
    """Replace edge x_h y_h by x_l y_h and y_l x_h.

    Grows the added set by one net edge, raises the degrees of x_l and y_l
    to k while leaving x_h and y_h untouched, and re-checks that both new
    edges keep the girth at the target.
    """
    graph = state.graph
    eid = graph.edge_id(x_h, y_h)
    if eid is None or eid not in state.added:
        raise ValueError(f"({x_h}, {y_h}) is not a currently added edge")
    graph.remove_edge(eid)
    state.added.discard(eid)
    e1 = state._add_cross(x_l, y_h)
    e2 = state._add_cross(y_l, x_h)
    state.added.update((e1, e2))
    if not _edge_keeps_girth(graph, e1, state.girth_target) or not _edge_keeps_girth(
        graph, e2, state.girth_target
    ):
        raise InternalInvariantError(
            f"girth dropped below {state.girth_target} after swapping out "
            f"({x_h}, {y_h}) for ({x_l}, {y_h}) and ({y_l}, {x_h})"
        )
    state._raise_low(x_l, y_l)
    assert graph.degree(x_h) == state.k and graph.degree(y_h) == state.k


def augment_to_degree(
    g_base: BipartiteGraph,
    k: int,
    girth_target: int,
    rng: random.Random | None = None,
    *,
    force: bool = False,
) -> tuple[BipartiteGraph, list]:
    """Lift a (k-1)-regular bipartite graph to a k-regular one, keeping
    girth >= girth_target.

    The input is copied, never mutated.  An already k-regular input returns
    unchanged with an empty step list.  Preconditions (balanced sides,
    degrees k-1 everywhere, girth already >= target, n above the floor
    unless ``force``) are verified up front.
    """
    _check_params(k, girth_target)
    if rng is None:
        rng = random.Random(0)
    graph = g_base.copy()
    if graph.is_regular(k):
        return graph, []
    if not graph.is_regular(k - 1):
        raise ValueError(f"input graph is neither {k}- nor {k - 1}-regular")
    if graph.n_left != graph.n_right:
        raise ValueError(
            f"sides must balance, got ({graph.n_left}, {graph.n_right})"
        )
    n = graph.n_left
    if not force and n < min_n(k, girth_target):
        raise ValueError(
            f"n={n} is below the guaranteed floor min_n({k}, {girth_target})"
            f"={min_n(k, girth_target)}; pass force to try anyway"
        )
    if girth(graph) < girth_target:
        raise ValueError(f"input girth is below the target {girth_target}")

    state = AugmentState.from_graph(graph, k, girth_target)
    steps: list = []
    while state.x_low:
        pair = find_distant_low_pair(state, rng)
        if pair is not None:
            x_l, y_l = pair
            eid = state._add_cross(x_l, y_l)
            state.added.add(eid)
            state._raise_low(x_l, y_l)
            steps.append(AddStep(x_l, y_l))
        else:
            x_l = rng.choice(sorted(state.x_low))
            y_l = rng.choice(sorted(state.y_low))
            x_h, y_h = find_swap_edge(state, x_l, y_l, rng)
            apply_swap(state, x_l, y_l, x_h, y_h)
            steps.append(SwapStep(x_h, y_h, x_l, y_l))

    if len(state.added) != n:
        raise InternalInvariantError(
            f"level finished with {len(state.added)} added edges, expected {n}"
        )
    if girth(graph) < girth_target:
        raise InternalInvariantError("final girth check failed after augmentation")
    graph.compact()
    return graph, steps


def generate(
    k: int, g: int, n: int, seed: int = 0, *, force: bool = False
) -> tuple[BipartiteGraph, GeneratorTrace]:
    """Build a k-regular bipartite graph on 2n vertices with girth >= g.

    A pure function of its arguments: the same inputs give an identical
    graph and trace on every run.  ``n`` below :func:`min_n` is rejected
    unless ``force`` is set, in which case an unlucky construction raises
    :class:`ConstructionFailedError` instead of being guaranteed.
    """
    _check_params(k, g)
    floor = min_n(k, g)
    if not force and n < floor:
        raise ValueError(
            f"n={n} is below the guaranteed floor min_n({k}, {g})={floor}; "
            f"pass force to try anyway"
        )
    if n < 2 or k > n or 2 * n < g:
        raise ValueError(f"no simple {k}-regular bipartite graph of girth {g} fits n={n}")

    rng = random.Random(seed)
    graph = base_cycle(n)
    steps: list = []
    try:
        for level in range(3, k + 1):
            graph, level_steps = augment_to_degree(graph, level, g, rng, force=force)
            steps.extend(level_steps)
    except InternalInvariantError as exc:
        if force:
            raise ConstructionFailedError(
                f"construction failed for n={n} below the guaranteed floor "
                f"{floor}; retry with a different seed"
            ) from exc
        raise
    return graph, GeneratorTrace(k=k, g=g, n=n, seed=seed, steps=tuple(steps))


def replay_trace(trace: GeneratorTrace) -> BipartiteGraph:
    """Re-apply a trace from the base cycle, re-checking every step.

    Asserts after each step that the maximum degree stays at most k and
    that every newly added edge lies on no cycle shorter than g; combined
    with the base cycle's girth this certifies girth >= g at every
    intermediate state.  Returns the reconstructed graph.
    """
    graph = base_cycle(trace.n)
    if 2 * trace.n < trace.g:
        raise InternalInvariantError("base cycle shorter than the girth target")
    for idx, step in enumerate(trace.steps):
        if isinstance(step, AddStep):
            new_edges = [_replay_add(graph, step.x, step.y)]
        else:
            eid = graph.edge_id(step.x_high, step.y_high)
            if eid is None:
                raise InternalInvariantError(
                    f"step {idx}: swap removes missing edge "
                    f"({step.x_high}, {step.y_high})"
                )
            graph.remove_edge(eid)
            new_edges = [_replay_add(graph, a, b) for a, b in step.added]
        for eid in new_edges:
            if not _edge_keeps_girth(graph, eid, trace.g):
                raise InternalInvariantError(
                    f"step {idx}: girth dropped below {trace.g}"
                )
            u, v = graph.endpoints(eid)
            if graph.degree(u) > trace.k or graph.degree(v) > trace.k:
                raise InternalInvariantError(f"step {idx}: degree exceeds {trace.k}")
    if not graph.is_regular(trace.k):
        raise InternalInvariantError("replayed graph is not k-regular")
    if girth(graph) < trace.g:
        raise InternalInvariantError("replayed graph has girth below the target")
    return graph


def _replay_add(graph: BipartiteGraph, u: int, v: int) -> int:
    x, y = (u, v) if graph.is_left(u) else (v, u)
    return graph.add_edge(x, y - graph.n_left)
