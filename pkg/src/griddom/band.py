"""Vertical band graphs: greedy runs, period certificates, transition graphs.

A band run either closes a PDS of some finite grid (a 0-free row) or revisits
a row word, which by memorylessness of the advance pins an eventually periodic
continuation.  The transition graph makes the whole reachable word space
explicit: solid edges advance to new words, dashed threads point back at words
already seen.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import GridError, InitialClass, InitialCondition, PdsSolution, classify_initial, init_word
from .theta import (
    ALPHA,
    AllAlpha,
    AllBeta,
    BETA,
    Decision,
    DecisionContext,
    Strategy,
    advance_level,
    make_chooser,
    table_from_row,
    tau,
    vertices_of_rows,
)


@dataclass(frozen=True)
class PeriodCertificate:
    """Rows repeat from level k with period ell; slices are rows k..k+ell-1."""

    k: int
    ell: int
    slices: tuple[str, ...]


@dataclass(frozen=True)
class Finite:
    solution: PdsSolution


@dataclass(frozen=True)
class Periodic:
    certificate: PeriodCertificate


BandOutcome = Finite | Periodic


def _require_band_seed(initial: InitialCondition) -> str:
    cls = classify_initial(initial.m, initial.columns)
    if cls not in (InitialClass.IAVS, InitialClass.COMPLETE):
        raise GridError(f"band seed is {cls.value}, need IAVS or Complete")
    return init_word(initial.m, initial.columns)


def greedy_from_row(
    row0: str, strategy: Strategy | None = None, row_cap: int | None = None
) -> BandOutcome:
    """Memoryless greedy run: stop at the first 0-free row or repeated word.

    Only strategies whose choice depends on the current row alone keep the
    repeated-word certificate sound; the default is AllAlpha.
    """
    if strategy is None:
        strategy = AllAlpha()
    if not isinstance(strategy, (AllAlpha, AllBeta)):
        raise GridError("greedy certificates need a memoryless strategy")
    m = len(row0)
    cap = row_cap if row_cap is not None else 5**m + 1
    choose = make_chooser(strategy)
    words = [row0]
    seen = {row0: 0}
    trace: list[Decision] = []
    level = 0
    while level < cap:
        nxt, decisions = advance_level(words[-1], level, choose)
        trace.extend(decisions)
        level += 1
        if tau(nxt) == 0:
            words.append(nxt)
            sol = PdsSolution(m, len(words), vertices_of_rows(words), tuple(trace))
            return Finite(sol)
        if nxt in seen:
            k = seen[nxt]
            ell = level - k
            return Periodic(PeriodCertificate(k, ell, tuple(words[k : k + ell])))
        seen[nxt] = level
        words.append(nxt)
    raise GridError(f"row cap {cap} exceeded without a repeat")


def greedy_band(initial: InitialCondition, row_cap: int | None = None) -> BandOutcome:
    return greedy_from_row(_require_band_seed(initial), AllAlpha(), row_cap)


def verify_period(
    cert: PeriodCertificate,
    initial: InitialCondition,
    strategy: Strategy | None = None,
) -> bool:
    """Replay the run (never stopping at 0-free rows) and check the repeat."""
    return verify_period_from_row(cert, _require_band_seed(initial), strategy)


def verify_period_from_row(
    cert: PeriodCertificate, row0: str, strategy: Strategy | None = None
) -> bool:
    if strategy is None:
        strategy = AllAlpha()
    rows = table_from_row(row0, strategy, cert.k + cert.ell + 1)
    words = [r.labels for r in rows]
    if words[cert.k] != words[cert.k + cert.ell]:
        return False
    return tuple(words[cert.k : cert.k + cert.ell]) == cert.slices


@dataclass(frozen=True)
class Edge:
    src: str
    choices: tuple[str, ...]
    dst: str
    thread: bool = False


WalkStep = Edge


@dataclass
class TransitionGraph:
    m: int
    root: str
    nodes: list[str]  # discovery order
    edges: list[Edge]
    threads: list[Edge]
    complete: bool
    replay_path: tuple[str, ...] | None = None  # strategy-restricted builds only

    def out_steps(self, word: str) -> list[Edge]:
        steps = [e for e in self.edges + self.threads if e.src == word]
        steps.sort(key=lambda e: e.choices)
        return steps


class _NeedChoice(Exception):
    def __init__(self, ctx: DecisionContext):
        self.ctx = ctx


def _expansions(labels: str):
    """All (choices, next word) for one advance, alpha extensions first."""

    def attempt(script: tuple[str, ...]):
        it = iter(script)

        def choose(ctx, cur, prev):
            try:
                return next(it)
            except StopIteration:
                raise _NeedChoice(ctx) from None

        try:
            nxt, _ = advance_level(labels, 0, choose)
        except _NeedChoice:
            yield from attempt(script + (ALPHA,))
            yield from attempt(script + (BETA,))
            return
        yield script, nxt

    yield from attempt(())


def build_graph_from_row(
    row0: str, state_cap: int = 10_000, strategy: Strategy | None = None
) -> TransitionGraph:
    if strategy is not None:
        return _build_restricted(row0, state_cap, strategy)
    m = len(row0)
    nodes = [row0]
    seen = {row0}
    edges: list[Edge] = []
    threads: list[Edge] = []
    queue: deque[str] = deque([row0])
    complete = True
    while queue:
        word = queue.popleft()
        for choices, nxt in _expansions(word):
            if nxt in seen:
                threads.append(Edge(word, choices, nxt, thread=True))
                continue
            if len(seen) >= state_cap:
                complete = False
                queue.clear()
                break
            seen.add(nxt)
            nodes.append(nxt)
            edges.append(Edge(word, choices, nxt))
            queue.append(nxt)
        if not complete:
            break
    return TransitionGraph(m, row0, nodes, edges, threads, complete)


def _build_restricted(row0: str, state_cap: int, strategy: Strategy) -> TransitionGraph:
    # The gamma rule reads the row before the current one, so single words are
    # not Markov states; replay on (previous, current) pairs instead and stop
    # at the first repeated pair.
    m = len(row0)
    choose = make_chooser(strategy)
    nodes = [row0]
    word_seen = {row0}
    edges: list[Edge] = []
    threads: list[Edge] = []
    path = [row0]
    pair_seen = {(None, row0)}
    prev: str | None = None
    cur = row0
    level = 0
    complete = True
    while True:
        nxt, decisions = advance_level(cur, level, choose, prev)
        choices = tuple(d.opt for d in decisions)
        is_thread = nxt in word_seen
        step = Edge(cur, choices, nxt, thread=is_thread)
        (threads if is_thread else edges).append(step)
        path.append(nxt)
        if not is_thread:
            word_seen.add(nxt)
            nodes.append(nxt)
        pair = (cur, nxt)
        if pair in pair_seen:
            break
        pair_seen.add(pair)
        if len(word_seen) > state_cap:
            complete = False
            break
        prev, cur = cur, nxt
        level += 1
    return TransitionGraph(m, row0, nodes, edges, threads, complete, tuple(path))


def build_transition_graph(
    initial: InitialCondition, state_cap: int = 10_000, strategy: Strategy | None = None
) -> TransitionGraph:
    return build_graph_from_row(_require_band_seed(initial), state_cap, strategy)


def closed_walk(graph: TransitionGraph) -> list[WalkStep]:
    """Depth-first itinerary covering every edge and thread, alpha detours first."""
    if not graph.complete:
        raise GridError("refusing to walk an incomplete transition graph")
    adj: dict[str, list[Edge]] = {}
    for e in graph.edges + graph.threads:
        adj.setdefault(e.src, []).append(e)
    for steps in adj.values():
        steps.sort(key=lambda e: e.choices)
    out: list[WalkStep] = []
    visited: set[str] = set()

    def visit(word: str) -> None:
        if word in visited:
            return
        visited.add(word)
        for e in adj.get(word, ()):
            out.append(e)
            visit(e.dst)

    visit(graph.root)
    return out


def thread_cycles(graph: TransitionGraph) -> list[tuple[tuple[str, ...], tuple[str, ...], int, int]]:
    """For each thread, a replayable (prefix choices, cycle choices, k, ell).

    The prefix runs root -> thread target, the cycle thread target -> ... ->
    thread source -> (thread) -> target.  Threads whose source is unreachable
    from their target are skipped.
    """
    steps = graph.edges + graph.threads

    def bfs(src: str, dst: str) -> list[Edge] | None:
        if src == dst:
            return []
        prev: dict[str, Edge] = {}
        q = deque([src])
        while q:
            w = q.popleft()
            for e in steps:
                if e.src != w or e.dst in prev or e.dst == src:
                    continue
                prev[e.dst] = e
                if e.dst == dst:
                    path = []
                    node = dst
                    while node != src:
                        path.append(prev[node])
                        node = prev[node].src
                    return path[::-1]
                q.append(e.dst)
        return None

    out = []
    for t in graph.threads:
        prefix = bfs(graph.root, t.dst)
        back = bfs(t.dst, t.src)
        if prefix is None or back is None:
            continue
        cycle = back + [t]
        prefix_choices = tuple(c for e in prefix for c in e.choices)
        cycle_choices = tuple(c for e in cycle for c in e.choices)
        out.append((prefix_choices, cycle_choices, len(prefix), len(cycle)))
    return out
