"""Exhaustive enumeration against the oracle, plus report bookkeeping."""
from __future__ import annotations

from griddom.core import (
    GridDims,
    InitialClass,
    InitialCondition,
    classify_initial,
    is_pds,
    oracle_enumerate,
)
from griddom.search import count_by_n, enumerate_all
from griddom.theta import AllAlpha, Pds, run_theta


def _iavs_initials(m: int):
    for bits in range(1, 1 << m):
        cols = tuple(i for i in range(m) if bits >> i & 1)
        if classify_initial(m, cols) is InitialClass.IAVS:
            yield InitialCondition(m, cols)


def test_matches_oracle_small():
    n_max = 6
    for m in (3, 4):
        for ic in _iavs_initials(m):
            report = enumerate_all(ic, n_max)
            got = {(s.n, s.vertices) for s in report.solutions}
            expect = set()
            for n in range(2, n_max + 1):
                for sol in oracle_enumerate(GridDims(m, n), ic.columns):
                    expect.add((n, sol.vertices))
            assert got == expect, (m, ic.columns)


def test_solutions_are_pds_with_initial_bottom_row():
    ic = InitialCondition(5, (1,))
    report = enumerate_all(ic, 7)
    assert report.solutions
    for sol in report.solutions:
        assert is_pds(GridDims(sol.m, sol.n), sol.vertices)
        assert {i for (i, j) in sol.vertices if j == 0} == {1}


def test_continuation_finds_deeper_solution_on_same_branch():
    # From a single code vertex in a 4-wide row, both the 3-row close and the
    # 4-row extension on the same alpha branch must be reported.
    report = enumerate_all(InitialCondition(4, (1,)), 4)
    got = {(s.n, s.vertices) for s in report.solutions}
    shallow = frozenset({(1, 0), (3, 1), (0, 2), (3, 2)})
    deeper = shallow | {(0, 3), (3, 3)}
    diagonal = frozenset({(1, 0), (3, 1), (0, 2), (2, 3)})
    assert (3, shallow) in got
    assert (4, deeper) in got
    assert (4, diagonal) in got
    assert count_by_n(report) == {3: 1, 4: 2}


def test_first_solution_is_the_all_alpha_run():
    for ic in [InitialCondition(4, (1,)), InitialCondition(5, (1,)), InitialCondition(3, (0,))]:
        out = run_theta(ic, AllAlpha(), max_rows=8)
        if isinstance(out, Pds):
            report = enumerate_all(ic, out.solution.n)
            assert report.solutions[0].vertices == out.solution.vertices
            assert report.solutions[0].n == out.solution.n


def test_duplicate_vertex_sets_keep_all_traces():
    report = enumerate_all(InitialCondition(4, (1,)), 6)
    assert all(len(v) >= 1 for v in report.traces.values())
    total_traces = sum(len(v) for v in report.traces.values())
    assert total_traces >= len(report.solutions)
    keys = {(s.n, s.vertices) for s in report.solutions}
    assert set(report.traces) == keys


def test_node_count_bound():
    report = enumerate_all(InitialCondition(5, (1,)), 8)
    assert report.nodes_expanded <= 2 ** (report.max_depth + 1)
    assert report.max_depth >= 1


def test_gate():
    import pytest

    from griddom.core import GridError

    with pytest.raises(GridError):
        enumerate_all(InitialCondition(4, (1, 2)), 5)
