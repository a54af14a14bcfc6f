"""Total perfect codes: gamma runs, shape transplants, existence, and S1."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from griddom.codec import to_pds_array
from griddom.core import GridDims, GridError, is_tpc, oracle_enumerate
from griddom.theta import Gamma
from griddom.tpc import (
    SQUARE_EXTRA_POSTFIXES,
    SYMMETRY_MAPS,
    TpcShape,
    build_s1,
    build_tpc,
    gamma_strategy,
    kg_has_tpc,
    phi_transform,
    rotate_table_180,
    run_gamma,
    s1_member,
    search_tpcs,
    seed_condition,
    symmetry_group,
    tau_prime,
    tpc_exists_search,
    tpc_seed,
    tpc_words,
    translation_is_symmetry,
)

# Gamma runs from the canonical seeds; the last row repeats the seed.
GAMMA_TABLES = {
    2: ("22", "44", "00", "22"),
    4: ("1223", "0440", "2312", "2312", "4004", "1223"),
    6: (
        "223122", "440044", "012230", "234412",
        "230012", "412234", "004400", "223122",
    ),
    8: (
        "12231223", "04400440", "23122312", "23044012", "41231234",
        "01231230", "23400412", "23122312", "40044004", "12231223",
    ),
    10: (
        "2231223122", "4400440044", "0122312230", "2344004412",
        "2301223012", "4123441234", "0123001230", "2341223412",
        "2300440012", "4122312234", "0044004400", "2231223122",
    ),
}

SQUARE_EXTRA_6 = ("231223", "230440", "412312", "012312", "234004", "231223")

# Room/ladder arrays of the tall codes, width 2 through 10.
TPC_ARRAYS = {
    2: (1, (((3, 2),), ((3, 1),), ((3, 2),))),
    4: (0, (
        ((1, 2), (3, 2), (1, 2)),
        ((2, 3), (1, 3), (2, 3)),
        ((1, 2), (3, 2), (1, 2)),
    )),
    6: (1, (
        ((3, 2), (1, 2), (3, 2)),
        ((2, 1), (3, 2), (2, 1)),
        ((2, 3), (3, 1), (2, 3)),
        ((2, 1), (3, 2), (2, 1)),
        ((3, 2), (1, 2), (3, 2)),
    )),
    8: (0, (
        ((1, 2), (3, 2), (1, 2), (3, 2), (1, 2)),
        ((2, 3), (1, 2), (3, 2), (1, 2), (2, 3)),
        ((2, 1), (2, 3), (1, 3), (2, 3), (2, 1)),
        ((2, 3), (1, 2), (3, 2), (1, 2), (2, 3)),
        ((1, 2), (3, 2), (1, 2), (3, 2), (1, 2)),
    )),
    10: (1, (
        ((3, 2), (1, 2), (3, 2), (1, 2), (3, 2)),
        ((2, 1), (3, 2), (1, 2), (3, 2), (2, 1)),
        ((2, 3), (2, 1), (3, 2), (2, 1), (2, 3)),
        ((2, 1), (2, 3), (3, 1), (2, 3), (2, 1)),
        ((2, 3), (2, 1), (3, 2), (2, 1), (2, 3)),
        ((2, 1), (3, 2), (1, 2), (3, 2), (2, 1)),
        ((3, 2), (1, 2), (3, 2), (1, 2), (3, 2)),
    )),
}

KLEIN_FOUR = frozenset({"identity", "mirror_x", "mirror_y", "rot180"})


def test_seed_words():
    assert tpc_seed(2) == "22"
    assert tpc_seed(4) == "1223"
    assert tpc_seed(6) == "223122"
    assert tpc_seed(8) == "12231223"
    assert tpc_seed(10) == "2231223122"
    for bad in (0, 1, 3, 7):
        with pytest.raises(GridError):
            tpc_seed(bad)


def test_seed_condition_positions():
    cond = seed_condition(6)
    assert cond.columns == (0, 1, 4, 5)
    assert seed_condition(4).columns == (1, 2)


def test_gamma_strategy_is_the_lookback_strategy():
    assert isinstance(gamma_strategy(), Gamma)


def test_tau_prime_counts_agreements():
    assert tau_prime("1223", "1223") == 4
    assert tau_prime("0440", "1223") == 0
    assert tau_prime("2312", "1223") == 0
    assert tau_prime("1243", "1223") == 3
    with pytest.raises(GridError):
        tau_prime("12", "123")


@given(st.integers(2, 12).flatmap(
    lambda m: st.tuples(
        st.text("01234", min_size=m, max_size=m),
        st.text("01234", min_size=m, max_size=m),
    )
))
def test_tau_prime_matches_direct_count(pair):
    a, b = pair
    assert tau_prime(a, b) == sum(x == y for x, y in zip(a, b))


@pytest.mark.parametrize("m", sorted(GAMMA_TABLES))
def test_gamma_tables_frozen(m):
    words = run_gamma(m)
    assert words == GAMMA_TABLES[m]
    # The run closes exactly when the written row repeats the seed.
    assert tau_prime(words[-1], words[0]) == m
    assert all(tau_prime(w, words[0]) < m for w in words[1:-1])
    assert len(words) == m + 2


@pytest.mark.parametrize("m", (2, 4, 6, 8, 10))
def test_tall_code_is_tpc(m):
    sol = build_tpc(m, TpcShape.TALL_PLUS2)
    assert (sol.m, sol.n) == (m, m + 2)
    assert is_tpc(GridDims(m, m + 2), sol.vertices)


@pytest.mark.parametrize("m", (4, 6, 8, 10))
def test_square_codes(m):
    square = build_tpc(m, "Square")
    rotated = build_tpc(m, "SquareRotated")
    assert (square.m, square.n) == (m, m)
    assert is_tpc(GridDims(m, m), square.vertices)
    assert is_tpc(GridDims(m, m), rotated.vertices)
    # The half-turn copy is a different code given by the same table read
    # upside down, which equals the run shifted two rows.
    assert square.vertices != rotated.vertices
    assert rotate_table_180(run_gamma(m)[:m]) == run_gamma(m)[2 : m + 2]
    assert rotated.vertices == frozenset(
        (m - 1 - i, m - 1 - j) for (i, j) in square.vertices
    )


@pytest.mark.parametrize("m", (4, 6, 8, 10))
def test_short_codes(m):
    short = build_tpc(m, "ShortMinus2")
    assert (short.m, short.n) == (m, m - 2)
    assert is_tpc(GridDims(m, m - 2), short.vertices)
    assert tpc_words(m, "ShortMinus2") == phi_transform(run_gamma(m - 2))


def test_square_extra_frozen_and_postfixed_variant():
    assert tpc_words(6, "SquareExtra") == SQUARE_EXTRA_6
    for m in (6, 10):
        sol = build_tpc(m, TpcShape.SQUARE_EXTRA)
        assert is_tpc(GridDims(m, m), sol.vertices)
        assert sol.vertices != build_tpc(m, "Square").vertices
        # Widening on the right with the mirrored pairs also yields a code.
        inner = run_gamma(m - 2)
        rows = [w + SQUARE_EXTRA_POSTFIXES[j % 4] for j, w in enumerate(inner)]
        verts = frozenset(
            (i, j) for j, w in enumerate(rows) for i, c in enumerate(w) if c == "2"
        )
        assert is_tpc(GridDims(m, m), verts)


def test_shape_domain_errors():
    for shape in ("Square", "SquareRotated", "ShortMinus2"):
        with pytest.raises(GridError):
            build_tpc(2, shape)
    for m in (2, 4, 8, 12):
        with pytest.raises(GridError):
            build_tpc(m, "SquareExtra")
    with pytest.raises(GridError):
        build_tpc(5, "TallPlus2")
    with pytest.raises(ValueError):
        build_tpc(4, "NoSuchShape")


@pytest.mark.parametrize("m", (2, 4, 6, 8))
def test_phi_carries_each_table_onto_the_next_core(m):
    assert phi_transform(run_gamma(m)) == run_gamma(m + 2)[2 : m + 2]


def test_phi_twice_is_half_turn():
    for m in (2, 4, 6):
        table = run_gamma(m)
        assert phi_transform(phi_transform(table)) == rotate_table_180(table)


def test_kg_predicate_examples():
    assert kg_has_tpc(4, 6)
    assert kg_has_tpc(2, 2)
    assert kg_has_tpc(4, 4)      # n = m (mod m+1)
    assert kg_has_tpc(4, 2)      # n = m-2 (mod m+1)
    assert kg_has_tpc(6, 4)      # orientation swap of (4,6)
    assert not kg_has_tpc(3, 5)
    assert not kg_has_tpc(4, 3)
    assert all(kg_has_tpc(2, n) for n in range(2, 13))
    for m, n in ((1, 5), (5, 1), (0, 4)):
        with pytest.raises(GridError):
            kg_has_tpc(m, n)


def test_search_tpcs_gamma22():
    sols = search_tpcs(2, 2)
    assert len(sols) == 4
    assert {s.vertices for s in sols} == {
        frozenset({(0, 0), (1, 0)}),
        frozenset({(0, 1), (1, 1)}),
        frozenset({(0, 0), (0, 1)}),
        frozenset({(1, 0), (1, 1)}),
    }


def test_search_matches_oracle_filter():
    for m in range(2, 5):
        for n in range(2, 5):
            dims = GridDims(m, n)
            from_oracle = {
                s.vertices for s in oracle_enumerate(dims) if is_tpc(dims, s.vertices)
            }
            assert {s.vertices for s in search_tpcs(m, n)} == from_oracle


def test_search_agrees_with_predicate_small():
    for m in range(2, 5):
        for n in range(2, 9):
            assert tpc_exists_search(m, n) == kg_has_tpc(m, n)


@pytest.mark.parametrize("m", sorted(TPC_ARRAYS))
def test_tall_code_arrays_frozen(m):
    delta, entries = TPC_ARRAYS[m]
    sol = build_tpc(m, "TallPlus2")
    arr = to_pds_array(GridDims(m, m + 2), sol.vertices)
    assert arr.entries == entries
    assert arr.delta == delta
    assert (arr.r, arr.s) == (len(entries[0]), len(entries))


@pytest.mark.parametrize("m", sorted(TPC_ARRAYS))
def test_tall_code_tiles_are_dominoes(m):
    arr = to_pds_array(GridDims(m, m + 2), build_tpc(m, "TallPlus2").vertices)
    flat = [e for row in arr.entries for e in row]
    rooms = {(2, 3), (3, 2)}
    ladders = {(1, 2), (2, 1), (1, 3), (3, 1)}
    assert set(flat) <= rooms | ladders
    # Exactly one long central ladder spans the middle of the code.
    assert sum(e in {(1, 3), (3, 1)} for e in flat) == 1


def test_s1_window_interior_and_membership():
    window = build_s1(12)
    assert window.interior_is_tpc()
    assert all(window.member(u, v) == s1_member(u, v) for (u, v) in window.domain())
    # The innermost ring: two horizontal dominoes flanked by two vertical ones.
    assert {p for p in window.members if p[0] in (0, 1) and -1 <= p[1] <= 2} == {
        (0, -1), (1, -1), (0, 2), (1, 2),
    }
    assert {(-2, 0), (-2, 1), (3, 0), (3, 1)} <= window.members
    with pytest.raises(GridError):
        window.member(14, 0)
    with pytest.raises(GridError):
        build_s1(1)


def test_s1_core_blocks_reproduce_the_tall_codes():
    def quarter_turn(u, v):
        # Image of a vertex under the turn carrying each table onto the core
        # of the next (doubled center-relative coordinates stay integral).
        x, y = 2 * u - 1, 2 * v - 1
        x, y = -y, x
        return ((x + 1) // 2, (y + 1) // 2)

    def centered(m):
        half = m // 2
        return {
            (i - half + 1, j - half)
            for j, w in enumerate(run_gamma(m))
            for i, c in enumerate(w)
            if c == "2"
        }

    # Shell 0 is the width-2 table; shell 1 is the width-4 table turned once.
    t2_box = {(u, v) for u in (0, 1) for v in range(-1, 3)}
    assert {p for p in t2_box if s1_member(*p)} == centered(2)
    turned_t4 = {quarter_turn(*p) for p in centered(4)}
    t4_box = {(u, v) for u in range(-2, 4) for v in range(-1, 3)}
    assert {p for p in t4_box if s1_member(*p)} == turned_t4 & t4_box


def test_s1_symmetry_group_is_klein_four():
    window = build_s1(12)
    assert symmetry_group(window) == KLEIN_FOUR
    # Concrete quarter-turn failure: a member maps onto a non-member.
    assert s1_member(0, 2)
    assert SYMMETRY_MAPS["rot90"](0, 2) == (-1, 0)
    assert not s1_member(-1, 0)


def test_s1_window_admits_no_translation():
    window = build_s1(12)
    for t in range(1, 7):
        assert not translation_is_symmetry(window, t)
        assert not translation_is_symmetry(window, 0, t)
    assert translation_is_symmetry(window, 0, 0)
