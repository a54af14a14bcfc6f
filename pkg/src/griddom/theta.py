"""Row-by-row construction of perfect dominating sets from an initial condition.

Rows are words over {0,1,2,3,4}: 2 marks a code vertex, 1/3/4/0 say where the
unique dominating neighbor sits (right/left/above/below, i.e. still pending).
Advancing a row writes the next one in five steps; steps 3 and 4 can raise
binary decisions (alpha keeps the code going sideways, beta pushes it up).
A row with no 0s closes a PDS of the grid built so far.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import (
    GridError,
    InitialClass,
    InitialCondition,
    PdsSolution,
    classify_initial,
    init_word,
)

ALPHA = "a"
BETA = "b"

BOD = "BOD"  # scan ran into the border
BID = "BID"  # scan stopped inside the row


class StrategyExhausted(GridError):
    """An Explicit strategy ran out of choices at a live decision."""


@dataclass(frozen=True)
class LabelRow:
    labels: str
    level: int

    def __post_init__(self) -> None:
        if set(self.labels) - set("01234"):
            raise GridError(f"bad labels {self.labels!r}")

    @property
    def m(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class DecisionContext:
    """Where a decision arose: j is the level of the row being written."""

    j: int
    step: int  # 3 or 4
    kind: str  # BOD or BID
    i: int | None  # step-4 anchor column; None for step 3
    k: int  # scan end; k == m marks a step-4 BOD

    @property
    def run_length(self) -> int:
        return self.k if self.step == 3 else self.k - self.i - 1


@dataclass(frozen=True)
class Decision:
    ctx: DecisionContext
    opt: str  # "a" | "b"

    def __post_init__(self) -> None:
        if self.opt not in (ALPHA, BETA):
            raise GridError(f"bad option {self.opt!r}")


Chooser = Callable[[DecisionContext, str, "str | None"], str]


def advance_level(
    labels: str,
    level: int,
    choose: Chooser,
    previous: str | None = None,
) -> tuple[str, list[Decision]]:
    """Write row level+1 from the row at `level`; returns it with its decisions.

    `previous` is the row below the current one (None for the seed); choosers
    that look one row back (gamma) receive it verbatim.
    """
    m = len(labels)
    f = [int(c) for c in labels]
    g = [0] * m
    decisions: list[Decision] = []
    j_new = level + 1

    def ask(ctx: DecisionContext) -> str:
        opt = choose(ctx, labels, previous)
        if opt not in (ALPHA, BETA):
            raise GridError(f"chooser returned {opt!r}")
        decisions.append(Decision(ctx, opt))
        return opt

    # Step 1: each pending vertex becomes a code vertex; its already-dominated
    # neighbors get their arrows, runs of 2s beyond them get 4s.
    for i in range(m):
        if f[i] != 0:
            continue
        if i > 0 and f[i - 1] > 0:
            g[i - 1] = 1
            k = i - 2
            while k >= 0 and f[k] == 2:
                g[k] = 4
                k -= 1
        if i < m - 1 and f[i + 1] > 0:
            g[i + 1] = 3
            k = i + 2
            while k < m and f[k] == 2:
                g[k] = 4
                k += 1
        g[i] = 2

    # Step 2: an isolated 1,2,3 column continues upward when untouched.
    for i in range(m - 2):
        if (
            f[i] == 1
            and f[i + 1] == 2
            and f[i + 2] == 3
            and g[i] == 0
            and g[i + 1] == 0
            and g[i + 2] == 0
        ):
            g[i] = 1
            g[i + 1] = 2
            g[i + 2] = 3

    # Step 3: a run of 2s starting at the left border with nothing written
    # above it must either continue up (alpha) or stop (beta).
    if f[0] == 2 and g[0] == 0:
        k = 0
        while k < m and f[k] == 2 and g[k] == 0:
            k += 1
        opt = ask(DecisionContext(j_new, 3, BOD, None, k))
        if opt == ALPHA:
            for w in range(k):
                g[w] = 2
            if k < m:
                g[k] = 3
        else:
            for w in range(k):
                g[w] = 4

    # Step 4: a 1 with an undominated cell above its run of 2s raises the same
    # choice; the scan ends inside (BID) or at the border (BOD).  The sweep
    # observes its own writes.
    for i in range(m - 1):
        if f[i] != 1 or g[i + 1] != 0:
            continue
        k = i + 1
        while k < m and f[k] == 2 and g[k] == 0:
            k += 1
        if k < m:
            if g[k] != 0:
                continue  # blocked scan: nothing to decide
            opt = ask(DecisionContext(j_new, 4, BID, i, k))
            if opt == ALPHA:
                g[i] = 1
                for w in range(i + 1, k):
                    g[w] = 2
                g[k] = 3
            else:
                for w in range(i + 1, k):
                    g[w] = 4
        else:
            opt = ask(DecisionContext(j_new, 4, BOD, i, k))
            if opt == ALPHA:
                g[i] = 1
                for w in range(i + 1, m):
                    g[w] = 2
            else:
                for w in range(i + 1, m):
                    g[w] = 4

    return "".join(map(str, g)), decisions


def tau(labels: str) -> int:
    """Number of still-undominated cells; 0 closes a PDS."""
    return labels.count("0")


# --- strategies -------------------------------------------------------------


@dataclass(frozen=True)
class Explicit:
    """Fixed choice word, consumed left to right; exhaustion stalls the run."""

    choices: tuple[str, ...]

    def __post_init__(self) -> None:
        if set(self.choices) - {ALPHA, BETA}:
            raise GridError(f"bad choices {self.choices}")


@dataclass(frozen=True)
class AllAlpha:
    pass


@dataclass(frozen=True)
class AllBeta:
    pass


@dataclass(frozen=True)
class Gamma:
    """Continue sideways only for a lone 2 with a pending cell two rows back."""


@dataclass(frozen=True)
class Callback:
    fn: Chooser


Strategy = Explicit | AllAlpha | AllBeta | Gamma | Callback


def gamma_choice(ctx: DecisionContext, current: str, previous: str | None) -> str:
    if ctx.run_length != 1:
        return BETA
    cell = ctx.k - 1 if ctx.step == 3 else ctx.i + 1
    if previous is None or previous[cell] == "0":
        return ALPHA
    return BETA


def make_chooser(strategy: Strategy) -> Chooser:
    if isinstance(strategy, Explicit):
        seq = iter(strategy.choices)

        def explicit(ctx: DecisionContext, current: str, previous: str | None) -> str:
            try:
                return next(seq)
            except StopIteration:
                raise StrategyExhausted(f"choices exhausted at {ctx}") from None

        return explicit
    if isinstance(strategy, AllAlpha):
        return lambda ctx, cur, prev: ALPHA
    if isinstance(strategy, AllBeta):
        return lambda ctx, cur, prev: BETA
    if isinstance(strategy, Gamma):
        return gamma_choice
    if isinstance(strategy, Callback):
        return strategy.fn
    raise GridError(f"unknown strategy {strategy!r}")


def parse_strategy(text: str) -> Strategy:
    t = text.strip().lower()
    if t in ("alpha", "all-alpha", "allalpha"):
        return AllAlpha()
    if t in ("beta", "all-beta", "allbeta"):
        return AllBeta()
    if t == "gamma":
        return Gamma()
    if t and set(t) <= {ALPHA, BETA}:
        return Explicit(tuple(t))
    raise GridError(f"cannot parse strategy {text!r}")


# --- runs -------------------------------------------------------------------


@dataclass(frozen=True)
class Pds:
    solution: PdsSolution
    rows: tuple[LabelRow, ...]


@dataclass(frozen=True)
class Running:
    rows: tuple[LabelRow, ...]


@dataclass(frozen=True)
class Stalled:
    reason: str
    rows: tuple[LabelRow, ...]


ThetaOutcome = Pds | Running | Stalled


def iterate_rows(
    row0: str,
    strategy: Strategy,
    max_rows: int,
) -> Iterator[tuple[LabelRow, list[Decision]]]:
    """Seed row first, then advanced rows with their decisions, up to max_rows rows."""
    choose = make_chooser(strategy)
    prev: str | None = None
    cur = row0
    level = 0
    yield LabelRow(cur, 0), []
    while level + 1 < max_rows:
        nxt, decisions = advance_level(cur, level, choose, prev)
        level += 1
        yield LabelRow(nxt, level), decisions
        prev, cur = cur, nxt


def vertices_of_rows(words: list[str]) -> frozenset[tuple[int, int]]:
    return frozenset(
        (i, j) for j, w in enumerate(words) for i, c in enumerate(w) if c == "2"
    )


def run_from_row(row0: str, strategy: Strategy, max_rows: int) -> ThetaOutcome:
    """Advance until a 0-free row closes a PDS; internal entry, no Iavs gate."""
    m = len(row0)
    rows: list[LabelRow] = []
    trace: list[Decision] = []
    try:
        for row, decisions in iterate_rows(row0, strategy, max_rows):
            rows.append(row)
            trace.extend(decisions)
            if row.level >= 1 and tau(row.labels) == 0:
                words = [r.labels for r in rows]
                sol = PdsSolution(m, len(words), vertices_of_rows(words), tuple(trace))
                return Pds(sol, tuple(rows))
    except StrategyExhausted as exc:
        return Stalled(str(exc), tuple(rows))
    return Running(tuple(rows))


def require_iavs(initial: InitialCondition) -> None:
    cls = classify_initial(initial.m, initial.columns)
    if cls is not InitialClass.IAVS:
        raise GridError(f"initial condition is {cls.value}, not IAVS")


def run_theta(
    initial: InitialCondition,
    strategy: Strategy,
    max_rows: int | None = None,
) -> ThetaOutcome:
    """Run the construction from an incomplete admissible initial condition."""
    require_iavs(initial)
    if max_rows is None:
        max_rows = 4 * initial.m
    return run_from_row(init_word(initial.m, initial.columns), strategy, max_rows)


def init_labels(initial: InitialCondition) -> LabelRow:
    require_iavs(initial)
    return LabelRow(init_word(initial.m, initial.columns), 0)


def label_table(
    initial: InitialCondition,
    strategy: Strategy,
    rows: int,
) -> list[LabelRow]:
    """Exactly `rows` rows of the construction, not stopping at closed PDSs."""
    require_iavs(initial)
    return table_from_row(init_word(initial.m, initial.columns), strategy, rows)


def table_from_row(row0: str, strategy: Strategy, rows: int) -> list[LabelRow]:
    return [row for row, _ in iterate_rows(row0, strategy, rows)]
