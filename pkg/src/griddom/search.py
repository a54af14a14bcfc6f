"""Exhaustive depth-first enumeration of every PDS reachable from an initial row.

The tree branches at each decision (alpha explored before beta).  A 0-free row
closes a solution; the branch keeps advancing afterwards, since deeper rows can
close further solutions on top of the same prefix.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import InitialCondition, PdsSolution, init_word
from .theta import ALPHA, BETA, Decision, DecisionContext, advance_level, require_iavs, tau


class _NeedChoice(Exception):
    def __init__(self, ctx: DecisionContext):
        self.ctx = ctx


def _advance_scripted(
    labels: str, level: int, prev: str | None, script: tuple[str, ...]
) -> tuple[str, list[Decision]]:
    it = iter(script)

    def choose(ctx: DecisionContext, cur: str, pre: str | None) -> str:
        try:
            return next(it)
        except StopIteration:
            raise _NeedChoice(ctx) from None

    return advance_level(labels, level, choose, prev)


SolutionKey = tuple[int, frozenset]


@dataclass
class EnumerationReport:
    m: int
    n_max: int
    initial: tuple[int, ...] | None
    solutions: list[PdsSolution]
    traces: dict[SolutionKey, list[tuple[Decision, ...]]]
    nodes_expanded: int
    max_depth: int

    def count_by_n(self) -> dict[int, int]:
        return dict(sorted(Counter(sol.n for sol in self.solutions).items()))


def count_by_n(report: EnumerationReport) -> dict[int, int]:
    return report.count_by_n()


def enumerate_from_row(
    row0: str, n_max: int, initial: tuple[int, ...] | None = None
) -> EnumerationReport:
    """DFS from an arbitrary admissible bottom row; no Iavs gate."""
    m = len(row0)
    solutions: list[PdsSolution] = []
    traces: dict[SolutionKey, list[tuple[Decision, ...]]] = {}
    stats = {"nodes": 0, "depth": 0}
    words: list[str] = [row0]

    def expansions(labels: str, level: int, prev: str | None, script: tuple[str, ...]):
        try:
            nxt, ds = _advance_scripted(labels, level, prev, script)
        except _NeedChoice:
            stats["nodes"] += 1
            yield from expansions(labels, level, prev, script + (ALPHA,))
            yield from expansions(labels, level, prev, script + (BETA,))
            return
        yield nxt, ds

    def dfs(level: int, trace: tuple[Decision, ...]) -> None:
        stats["depth"] = max(stats["depth"], len(trace))
        if level + 1 > n_max - 1:
            return
        prev = words[level - 1] if level > 0 else None
        for nxt, ds in expansions(words[level], level, prev, ()):
            full = trace + tuple(ds)
            words.append(nxt)
            if tau(nxt) == 0:
                verts = frozenset(
                    (i, j) for j, w in enumerate(words) for i, c in enumerate(w) if c == "2"
                )
                key: SolutionKey = (len(words), verts)
                if key not in traces:
                    solutions.append(PdsSolution(m, len(words), verts, full))
                traces.setdefault(key, []).append(full)
            dfs(level + 1, full)
            words.pop()

    dfs(0, ())
    return EnumerationReport(
        m=m,
        n_max=n_max,
        initial=initial,
        solutions=solutions,
        traces=traces,
        nodes_expanded=stats["nodes"],
        max_depth=stats["depth"],
    )


def enumerate_all(initial: InitialCondition, n_max: int) -> EnumerationReport:
    """Every PDS in grids of height 2..n_max whose bottom-row code is `initial`."""
    require_iavs(initial)
    return enumerate_from_row(
        init_word(initial.m, initial.columns), n_max, initial=initial.columns
    )
