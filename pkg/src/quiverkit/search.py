"""Green/reddening sequence verification, bounded search, and class enumeration."""

from __future__ import annotations

import hashlib
import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from quiverkit.quiver import (
    InternalInvariantError,
    MutationState,
    Quiver,
    QuiverError,
    canonical_form,
    canonical_framed_key,
    frame,
)

VERDICT_GREEN = "green"
VERDICT_MAXIMAL_GREEN = "maximal_green"
VERDICT_REDDENING_NOT_GREEN = "reddening_not_green"
VERDICT_NEITHER = "neither"


@dataclass(frozen=True)
class StepRecord:
    """Bookkeeping for one mutation step: the c-vector seen before mutating."""

    vertex: int
    c_vector: tuple[int, ...]
    sign: int
    was_green: bool

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "c_vector": list(self.c_vector),
            "sign": self.sign,
            "green": self.was_green,
        }


@dataclass(frozen=True)
class SequenceReport:
    sequence: tuple[int, ...]
    per_step: tuple[StepRecord, ...]
    verdict: str
    final_state: MutationState

    def is_reddening(self) -> bool:
        return self.verdict in (VERDICT_MAXIMAL_GREEN, VERDICT_REDDENING_NOT_GREEN)

    def to_dict(self) -> dict:
        return {
            "sequence": list(self.sequence),
            "verdict": self.verdict,
            "steps": [s.to_dict() for s in self.per_step],
            "final_greens": self.final_state.greens(),
            "final_reds": self.final_state.reds(),
        }


def verify_sequence(q: Quiver, seq: Sequence[int]) -> SequenceReport:
    """Replay ``seq`` on the freshly framed quiver and classify it.

    Non-green steps are recorded, never rejected.  The verdict is
    ``maximal_green`` (every step green, final quiver all red),
    ``reddening_not_green`` (some step red, final all red), ``green``
    (a nonempty all-green sequence that stops short) or ``neither``.
    """
    if q.is_framed():
        raise QuiverError("verify_sequence expects an unframed quiver")
    state = frame(q)
    steps = []
    for k in seq:
        if not (1 <= k <= q.n):
            raise QuiverError(f"vertex {k} out of range 1..{q.n}")
        c = state.c_matrix()
        row = c.row(k)
        sign = c.row_sign(k)
        steps.append(StepRecord(k, row, sign, sign > 0))
        state = state.mutate(k)
    all_green_steps = all(s.was_green for s in steps)
    final_red = state.all_red()
    if final_red:
        verdict = VERDICT_MAXIMAL_GREEN if all_green_steps else VERDICT_REDDENING_NOT_GREEN
    elif steps and all_green_steps:
        verdict = VERDICT_GREEN
    else:
        verdict = VERDICT_NEITHER
    return SequenceReport(tuple(seq), tuple(steps), verdict, state)


# -- green-sequence search --------------------------------------------


@dataclass(frozen=True)
class GreenSearchResult:
    sequences: tuple[tuple[int, ...], ...]
    truncated: bool


@dataclass
class _GreenDag:
    """Classes of framed quivers reachable by green mutations only."""

    root: bytes
    states: dict  # key -> representative MutationState
    edges: dict  # key -> list[(vertex, key)]
    sinks: set  # keys of all-red classes
    truncated: bool


def _explore_green(q: Quiver, max_depth: int, max_nodes: int) -> _GreenDag:
    root_state = frame(q)
    root = canonical_framed_key(root_state)
    states = {root: root_state}
    edges: dict[bytes, list[tuple[int, bytes]]] = {}
    sinks: set[bytes] = set()
    depth = {root: 0}
    truncated = False
    queue = deque([root])
    while queue:
        key = queue.popleft()
        state = states[key]
        greens = state.greens()
        if not greens:
            sinks.add(key)
            edges[key] = []
            continue
        if depth[key] >= max_depth:
            truncated = True
            edges[key] = []
            continue
        out = []
        for k in greens:
            child = state.mutate(k)
            ckey = canonical_framed_key(child)
            if ckey not in states:
                if len(states) >= max_nodes:
                    truncated = True
                    continue
                states[ckey] = child
                depth[ckey] = depth[key] + 1
                queue.append(ckey)
            out.append((k, ckey))
        edges[key] = out
    return _GreenDag(root, states, edges, sinks, truncated)


def _min_sink_distance(dag: _GreenDag) -> dict:
    """Shortest distance from each class to an all-red class (BFS on reversed edges)."""
    rev: dict[bytes, list[bytes]] = {k: [] for k in dag.states}
    for src, outs in dag.edges.items():
        for _, dst in outs:
            if dst in rev:
                rev[dst].append(src)
    dist = {k: 0 for k in dag.sinks}
    queue = deque(dag.sinks)
    while queue:
        key = queue.popleft()
        for prev in rev[key]:
            if prev not in dist:
                dist[prev] = dist[key] + 1
                queue.append(prev)
    return dist


def _iter_green_sequences(q: Quiver, max_depth: int, dag: _GreenDag) -> Iterator[tuple[int, ...]]:
    """Yield maximal green sequences in ascending branch order.

    Walks actual states (not class representatives) so that vertex
    labels stay correct along every path; the class DAG only prunes
    branches that cannot reach an all-red quiver in the remaining depth.
    """
    dist = None if dag.truncated else _min_sink_distance(dag)
    stack: list[tuple[MutationState, tuple[int, ...]]] = [(frame(q), ())]
    while stack:
        state, prefix = stack.pop()
        greens = state.greens()
        if not greens:
            yield prefix
            continue
        if len(prefix) >= max_depth:
            continue
        if dist is not None:
            key = canonical_framed_key(state)
            if key not in dist or len(prefix) + dist[key] > max_depth:
                continue
        for k in reversed(greens):
            stack.append((state.mutate(k), prefix + (k,)))


def search_green_sequences(
    q: Quiver,
    max_depth: int,
    max_nodes: int = 100_000,
    want: str = "all",
) -> GreenSearchResult:
    """Bounded deterministic search for maximal green sequences.

    ``want="first"`` stops at the first hit.  A truncated result means
    the bounds were reached, never that no sequence exists.
    """
    if q.is_framed():
        raise QuiverError("search expects an unframed quiver")
    if max_depth < 1 or max_nodes < 1:
        raise QuiverError("search bounds must be positive")
    if want not in ("first", "all"):
        raise QuiverError(f'want must be "first" or "all", got {want!r}')
    dag = _explore_green(q, max_depth, max_nodes)
    found = []
    for seq in _iter_green_sequences(q, max_depth, dag):
        found.append(seq)
        if want == "first":
            break
    return GreenSearchResult(tuple(found), dag.truncated)


def find_reddening_sequences(
    q: Quiver, max_depth: int, max_nodes: int, limit: int
) -> tuple[list[tuple[int, ...]], bool]:
    """Up to ``limit`` maximal green sequences plus the truncation flag."""
    dag = _explore_green(q, max_depth, max_nodes)
    out: list[tuple[int, ...]] = []
    for seq in _iter_green_sequences(q, max_depth, dag):
        out.append(seq)
        if len(out) >= limit:
            break
    return out, dag.truncated


# -- mutation class enumeration ----------------------------------------


@dataclass(frozen=True)
class ClassEnumeration:
    count: int
    representatives: frozenset
    complete: bool

    def to_dict(self) -> dict:
        return {"count": self.count, "complete": self.complete}


def enumerate_mutation_class(q: Quiver, max_size: int) -> ClassEnumeration:
    """Breadth-first closure of ``q`` under mutation, up to isomorphism.

    Representatives are canonical keys; ``complete`` is False when the
    ``max_size`` bound stopped the walk.
    """
    if q.is_framed():
        raise QuiverError("enumeration expects an unframed quiver")
    if max_size < 1:
        raise QuiverError("max_size must be >= 1")
    b0 = q.b
    key0 = canonical_form(q)
    seen_raw = {b0: key0}
    reps = {key0}
    queue = deque([b0])
    complete = True
    n = q.n
    while queue:
        b = queue.popleft()
        quiv = Quiver(n, 0, b)
        for k in range(1, n + 1):
            nb = quiv.mutate(k).b
            if nb in seen_raw:
                continue
            key = canonical_form(Quiver(n, 0, nb))
            seen_raw[nb] = key
            if key not in reps:
                if len(reps) >= max_size:
                    complete = False
                    queue.clear()
                    break
                reps.add(key)
                queue.append(nb)
    return ClassEnumeration(len(reps), frozenset(reps), complete)


# -- oriented exchange graph -------------------------------------------


def key_digest(key: bytes, length: int = 8) -> str:
    """Short printable prefix of a canonical key (raw keys share long prefixes)."""
    return hashlib.sha1(key).hexdigest()[:length]


@dataclass(frozen=True)
class ExchangeGraphSlice:
    nodes: tuple  # canonical keys in BFS discovery order
    edges: tuple  # (source key, mutated vertex, target key)
    root: bytes
    has_unique_source: bool
    sink_count: int
    truncated: bool

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def to_dot(self) -> str:
        """GraphViz text; nodes are labeled by a canonical-key digest prefix."""
        names = {key: f"q{idx}" for idx, key in enumerate(self.nodes)}
        lines = ["digraph exchange {"]
        for key in self.nodes:
            shape = ' shape="doublecircle"' if key == self.root else ""
            lines.append(f'  {names[key]} [label="{key_digest(key)}"{shape}];')
        for src, vertex, dst in self.edges:
            lines.append(f'  {names[src]} -> {names[dst]} [label="{vertex}"];')
        lines.append("}")
        return "\n".join(lines)


def build_exchange_graph(q: Quiver, max_nodes: int = 10_000) -> ExchangeGraphSlice:
    """BFS along green mutations, nodes identified up to frozen isomorphism."""
    if q.is_framed():
        raise QuiverError("exchange graph expects an unframed quiver")
    if max_nodes < 1:
        raise QuiverError("max_nodes must be >= 1")
    dag = _explore_green(q, max_depth=10**9, max_nodes=max_nodes)
    order = []
    seen = set()
    queue = deque([dag.root])
    while queue:
        key = queue.popleft()
        if key in seen:
            continue
        seen.add(key)
        order.append(key)
        for _, dst in dag.edges.get(key, ()):
            if dst not in seen:
                queue.append(dst)
    edges = tuple(
        (src, vertex, dst) for src in order for vertex, dst in dag.edges.get(src, ())
    )
    indeg = {key: 0 for key in order}
    for _, _, dst in edges:
        indeg[dst] += 1
    sources = [key for key, d in indeg.items() if d == 0]
    return ExchangeGraphSlice(
        nodes=tuple(order),
        edges=edges,
        root=dag.root,
        has_unique_source=(sources == [dag.root]),
        sink_count=len(dag.sinks),
        truncated=dag.truncated,
    )


# -- acyclic quivers ----------------------------------------------------


def _find_cycle(q: Quiver) -> Optional[list[int]]:
    color = [0] * (q.n + 1)  # 0 new, 1 active, 2 done
    parent = [0] * (q.n + 1)

    def dfs(u: int) -> Optional[list[int]]:
        color[u] = 1
        for w in range(1, q.n + 1):
            if q.b[u - 1][w - 1] > 0:
                if color[w] == 1:
                    cycle = [w, u]
                    x = u
                    while parent[x] != 0 and x != w:
                        x = parent[x]
                        if x != w:
                            cycle.append(x)
                    return cycle[::-1]
                if color[w] == 0:
                    parent[w] = u
                    got = dfs(w)
                    if got is not None:
                        return got
        color[u] = 2
        return None

    for v in range(1, q.n + 1):
        if color[v] == 0:
            got = dfs(v)
            if got is not None:
                return got
    return None


def acyclic_green_sequence(q: Quiver) -> tuple[int, ...]:
    """Topological order of an acyclic quiver, verified maximal green.

    Sources come first; ties break by ascending label.
    """
    if q.is_framed():
        raise QuiverError("expects an unframed quiver")
    n = q.n
    indeg = [0] * (n + 1)
    for i in range(n):
        for j in range(n):
            if q.b[i][j] > 0:
                indeg[j + 1] += 1
    ready = [v for v in range(1, n + 1) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in range(1, n + 1):
            if q.b[v - 1][w - 1] > 0:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
    if len(order) < n:
        cycle = _find_cycle(q)
        raise QuiverError(f"quiver is not acyclic: cycle {cycle}")
    report = verify_sequence(q, order)
    if report.verdict != VERDICT_MAXIMAL_GREEN:
        raise InternalInvariantError(
            f"topological sequence {order} failed to verify as maximal green"
        )
    return tuple(order)
