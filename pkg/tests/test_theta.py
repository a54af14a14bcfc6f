"""Row-advance engine: frozen label tables, traces, and run outcomes."""
from __future__ import annotations

import pytest

from griddom.core import GridDims, GridError, InitialCondition, is_pds
from griddom.theta import (
    AllAlpha,
    AllBeta,
    Decision,
    DecisionContext,
    Explicit,
    Gamma,
    Pds,
    Running,
    Stalled,
    advance_level,
    init_labels,
    label_table,
    make_chooser,
    parse_strategy,
    run_theta,
    tau,
)

# 16-column construction, strategy b,a,b,a,b: closes an 11-row grid.
WIDE_INITIAL = InitialCondition(16, (1, 2, 3, 9, 13, 14))
WIDE_ROWS = [
    "1222300012301223",
    "0444122234123440",
    "2300044400123012",
    "4122230122341234",
    "0044412344001230",
    "2230012301223412",
    "4412234123440012",
    "0004400123012234",
    "2223122341234400",
    "2223044001230122",
    "4441231223412344",
]
WIDE_TRACE = [
    (2, 4, "BID", 4, 8, "b"),
    (6, 4, "BOD", 14, 16, "a"),
    (7, 4, "BID", 2, 5, "b"),
    (9, 3, "BOD", None, 3, "a"),
    (9, 4, "BID", 4, 7, "b"),
]

# 5-column construction, strategy b,b: closes a 7-row grid.
NARROW_INITIAL = InitialCondition(5, (1,))
NARROW_ROWS = ["12300", "04122", "23044", "41230", "00412", "22304", "44123"]
NARROW_TRACE = [
    (2, 4, "BOD", 2, 5, "b"),
    (5, 4, "BOD", 3, 5, "b"),
]


def _flat(trace) -> list[tuple]:
    return [(d.ctx.j, d.ctx.step, d.ctx.kind, d.ctx.i, d.ctx.k, d.opt) for d in trace]


def test_init_labels_wide():
    assert init_labels(WIDE_INITIAL).labels == WIDE_ROWS[0]


def test_init_labels_requires_iavs():
    with pytest.raises(GridError):
        init_labels(InitialCondition(4, (1, 2)))
    with pytest.raises(GridError):
        init_labels(InitialCondition(4, ()))


def test_advance_level_single_example():
    nxt, decisions = advance_level(WIDE_ROWS[1], 1, make_chooser(Explicit(("b",))))
    assert nxt == WIDE_ROWS[2]
    assert _flat(decisions) == [(2, 4, "BID", 4, 8, "b")]


def test_wide_run_table_and_trace_frozen():
    out = run_theta(WIDE_INITIAL, Explicit(tuple("babab")))
    assert isinstance(out, Pds)
    assert [r.labels for r in out.rows] == WIDE_ROWS
    assert _flat(out.solution.trace) == WIDE_TRACE
    assert out.solution.n == 11
    assert is_pds(GridDims(16, 11), out.solution.vertices)
    assert {i for (i, j) in out.solution.vertices if j == 0} == {1, 2, 3, 9, 13, 14}


def test_narrow_run_table_and_trace_frozen():
    out = run_theta(NARROW_INITIAL, Explicit(tuple("bb")))
    assert isinstance(out, Pds)
    assert [r.labels for r in out.rows] == NARROW_ROWS
    assert _flat(out.solution.trace) == NARROW_TRACE
    assert out.solution.n == 7
    assert is_pds(GridDims(5, 7), out.solution.vertices)


def test_label_table_matches_run():
    rows = label_table(WIDE_INITIAL, Explicit(tuple("babab")), rows=11)
    assert [r.labels for r in rows] == WIDE_ROWS
    assert [r.level for r in rows] == list(range(11))
    short = label_table(InitialCondition(3, (0,)), AllAlpha(), rows=1)
    assert [r.labels for r in short] == ["230"]


def test_small_grid_alpha_beta_split():
    # 4 columns, S'={1}: alpha closes a 3-row grid, beta a 4-row diagonal.
    ic = InitialCondition(4, (1,))
    out_a = run_theta(ic, AllAlpha())
    assert isinstance(out_a, Pds)
    assert [r.labels for r in out_a.rows] == ["1230", "0412", "2312"]
    assert _flat(out_a.solution.trace) == [(2, 4, "BOD", 2, 4, "a")]
    assert out_a.solution.vertices == frozenset({(1, 0), (3, 1), (0, 2), (3, 2)})

    out_b = run_theta(ic, AllBeta())
    assert isinstance(out_b, Pds)
    assert [r.labels for r in out_b.rows] == ["1230", "0412", "2304", "4123"]
    assert _flat(out_b.solution.trace) == [(2, 4, "BOD", 2, 4, "b")]
    assert out_b.solution.vertices == frozenset({(1, 0), (3, 1), (0, 2), (2, 3)})
    assert is_pds(GridDims(4, 4), out_b.solution.vertices)


def test_continued_run_reaches_deeper_solution():
    # Continuing past the 3-row close with alpha,alpha adds a fourth row.
    ic = InitialCondition(4, (1,))
    rows = label_table(ic, AllAlpha(), rows=4)
    assert [r.labels for r in rows] == ["1230", "0412", "2312", "2312"]
    verts = {(i, j) for j, r in enumerate(rows) for i, c in enumerate(r.labels) if c == "2"}
    assert verts == {(1, 0), (3, 1), (0, 2), (3, 2), (0, 3), (3, 3)}
    assert is_pds(GridDims(4, 4), verts)


def test_advancing_past_close_raises_fresh_decisions():
    seen = []

    def spy(ctx, cur, prev):
        seen.append((ctx.j, ctx.step, ctx.kind, ctx.i, ctx.k))
        return "a"

    from griddom.theta import Callback

    nxt, ds = advance_level("2312", 2, make_chooser(Callback(spy)))
    assert nxt == "2312"
    assert seen == [(3, 3, "BOD", None, 1), (3, 4, "BOD", 2, 4)]


def test_run_theta_gate():
    with pytest.raises(GridError):
        run_theta(InitialCondition(4, (1, 2)), AllAlpha())
    with pytest.raises(GridError):
        run_theta(InitialCondition(4, (0, 2)), AllAlpha())


def test_stalled_on_exhausted_choices():
    # The single 'b' is consumed at j=2; the j=6 decision finds nothing left.
    out = run_theta(WIDE_INITIAL, Explicit(("b",)))
    assert isinstance(out, Stalled)
    assert [r.labels for r in out.rows] == WIDE_ROWS[:6]


def test_running_on_max_rows():
    out = run_theta(NARROW_INITIAL, AllBeta(), max_rows=4)
    assert isinstance(out, Running)
    assert [r.labels for r in out.rows] == NARROW_ROWS[:4]


def test_beta_free_close_without_decisions():
    out = run_theta(InitialCondition(3, (0,)), AllBeta())
    assert isinstance(out, Pds)
    assert [r.labels for r in out.rows] == ["230", "412"]
    assert out.solution.trace == ()
    assert is_pds(GridDims(3, 2), out.solution.vertices)


def test_tau():
    assert tau("1222300012301223") == 4
    assert tau("4441231223412344") == 0


def test_decision_run_length():
    assert DecisionContext(9, 3, "BOD", None, 3).run_length == 3
    assert DecisionContext(2, 4, "BID", 4, 8).run_length == 3
    assert DecisionContext(2, 4, "BOD", 2, 4).run_length == 1


def test_parse_strategy():
    assert parse_strategy("alpha") == AllAlpha()
    assert parse_strategy("beta") == AllBeta()
    assert parse_strategy("gamma") == Gamma()
    assert parse_strategy("bab") == Explicit(("b", "a", "b"))
    with pytest.raises(GridError):
        parse_strategy("xyz")


def test_determinism_no_decisions_is_markov():
    # Advancing depends only on the current row: recompute a mid-table row.
    nxt, ds = advance_level(WIDE_ROWS[4], 99, make_chooser(AllAlpha()))
    assert ds == []
    assert nxt == WIDE_ROWS[5]


def test_complete_row_with_no_zeros_closes_pds_everywhere():
    # Any 0-free advanced row means every column is dominated; frozen sample.
    for j, row in enumerate(WIDE_ROWS[1:], start=1):
        if tau(row) == 0:
            verts = {
                (i, jj)
                for jj, r in enumerate(WIDE_ROWS[: j + 1])
                for i, c in enumerate(r)
                if c == "2"
            }
            assert is_pds(GridDims(16, j + 1), verts)


def test_slice_extension_fact():
    # A row free of 0s and 4s equals the initial word of its own 2-set, so the
    # construction can restart from it as a fresh bottom row.
    from griddom.core import init_word

    for row in ["2312", "1223", "223122", "23", "123"]:
        assert "0" not in row and "4" not in row
        cols = {i for i, c in enumerate(row) if c == "2"}
        assert init_word(len(row), cols) == row
