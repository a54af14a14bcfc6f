"""Total perfect codes: the gamma construction family and the lattice code S1.

A total perfect code is a perfect dominating set whose induced components are
all single edges, so every vertex of the grid (code vertices included) has
exactly one neighbor in the code.  The builders here grow such codes with the
gamma strategy from fixed seed rows, transplant them between grid shapes, and
assemble the infinite lattice code S1 out of concentric rotated copies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .core import (
    GridDims,
    GridError,
    InitialCondition,
    PdsSolution,
    init_word,
    is_admissible,
    is_tpc,
)
from .search import enumerate_from_row
from .theta import Gamma, LabelRow, advance_level, make_chooser, vertices_of_rows

__all__ = [
    "TpcShape",
    "LatticeWindow",
    "gamma_strategy",
    "tpc_seed",
    "tau_prime",
    "run_gamma",
    "gamma_table",
    "build_tpc",
    "phi_transform",
    "kg_has_tpc",
    "search_tpcs",
    "tpc_exists_search",
    "s1_member",
    "build_s1",
    "SYMMETRY_MAPS",
    "symmetry_group",
    "translation_is_symmetry",
]

# The gamma run from a seed of width m returns to the seed after m+1 rows; a
# run that overshoots this by a wide margin has left the periodic orbit.
_RUN_SAFETY_FACTOR = 4


def gamma_strategy() -> Gamma:
    """The one-row-lookback strategy used by every TPC construction."""
    return Gamma()


def _require_even(m: int) -> None:
    if m < 2 or m % 2:
        raise GridError("TPC seeds exist only for even widths m >= 2")


def tpc_seed(m: int) -> str:
    """Seed word of width m: blocks of 22 with alternating 1/3 separators."""
    _require_even(m)
    if m % 4 == 0:
        word = "1223" * (m // 4)
    else:
        word = "22" + "3122" * ((m - 2) // 4)
    # Self-check: the word is the induced labeling of its own code columns.
    columns = tuple(i for i, c in enumerate(word) if c == "2")
    assert word == init_word(m, columns)
    return word


def seed_condition(m: int) -> InitialCondition:
    """The seed as an initial condition (Complete for m > 2, full row at m=2)."""
    word = tpc_seed(m)
    return InitialCondition(m, tuple(i for i, c in enumerate(word) if c == "2"))


def tau_prime(next_row: LabelRow | str, row0: LabelRow | str) -> int:
    """Number of positions where a written row agrees with the seed row."""
    a = next_row.labels if isinstance(next_row, LabelRow) else next_row
    b = row0.labels if isinstance(row0, LabelRow) else row0
    if len(a) != len(b):
        raise GridError("rows of different widths")
    return sum(x == y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def run_gamma(m: int) -> tuple[str, ...]:
    """Gamma run from the seed, stopped when the written row repeats the seed.

    Intermediate 0-free rows do not stop the run; only full agreement
    (tau_prime == m) closes it.  The returned table has m+2 rows, the last one
    equal to the first.
    """
    seed = tpc_seed(m)
    choose = make_chooser(gamma_strategy())
    words = [seed]
    prev: str | None = None
    while len(words) <= _RUN_SAFETY_FACTOR * (m + 2):
        nxt, _ = advance_level(words[-1], len(words) - 1, choose, prev)
        prev = words[-1]
        words.append(nxt)
        if tau_prime(nxt, seed) == m:
            return tuple(words)
    raise GridError(f"gamma run from width-{m} seed did not return to the seed")


def gamma_table(m: int) -> list[LabelRow]:
    return [LabelRow(w, j) for j, w in enumerate(run_gamma(m))]


class TpcShape(str, Enum):
    TALL_PLUS2 = "TallPlus2"
    SQUARE = "Square"
    SQUARE_ROTATED = "SquareRotated"
    SHORT_MINUS2 = "ShortMinus2"
    SQUARE_EXTRA = "SquareExtra"


# Pairs prepended to the width-(m-2) gamma run to widen it into a new square
# code; the period-4 column pattern continues downward indefinitely.
SQUARE_EXTRA_PREFIXES = ("23", "23", "41", "01")
SQUARE_EXTRA_POSTFIXES = ("12", "12", "34", "30")

_ROT180 = str.maketrans("04132", "40312")


def rotate_table_180(words: Sequence[str]) -> tuple[str, ...]:
    """Rotate a label table half a turn: reverse both axes, swap 0/4 and 1/3."""
    return tuple(w[::-1].translate(_ROT180) for w in reversed(words))


def tpc_words(m: int, shape: TpcShape | str) -> tuple[str, ...]:
    """Label rows of the requested construction, top row first."""
    shape = TpcShape(shape)
    _require_even(m)
    if shape is TpcShape.TALL_PLUS2:
        return run_gamma(m)
    if shape in (TpcShape.SQUARE, TpcShape.SQUARE_ROTATED, TpcShape.SHORT_MINUS2):
        if m <= 2:
            raise GridError(f"{shape.value} needs m > 2")
        if shape is TpcShape.SQUARE:
            return run_gamma(m)[:m]
        if shape is TpcShape.SQUARE_ROTATED:
            return rotate_table_180(run_gamma(m)[:m])
        return run_gamma(m)[2:m]
    if m < 6 or m % 4 != 2:
        raise GridError("SquareExtra needs m >= 6 with m = 2 (mod 4)")
    inner = run_gamma(m - 2)
    return tuple(
        SQUARE_EXTRA_PREFIXES[j % 4] + w for j, w in enumerate(inner)
    )


def build_tpc(m: int, shape: TpcShape | str) -> PdsSolution:
    """A verified total perfect code of the requested shape."""
    words = tpc_words(m, shape)
    n = len(words)
    vertices = vertices_of_rows(list(words))
    if not is_tpc(GridDims(m, n), vertices):
        raise GridError(f"{TpcShape(shape).value} construction broke for m={m}")
    return PdsSolution(m, n, vertices)


_PHI = str.maketrans("0341", "3410")


def phi_transform(words: Sequence[str]) -> tuple[str, ...]:
    """Quarter-turn of a label table with the matching relabeling.

    The table is rotated a quarter turn (columns become rows read bottom-up)
    and labels follow the cycle 0 -> 3 -> 4 -> 1 -> 0 with 2 fixed, so arrows
    keep pointing at the code vertex they pointed at.  Applied to the m-wide
    TallPlus2 table it reproduces rows 2..m+1 of the (m+2)-wide one.
    """
    nrows = len(words)
    ncols = len(words[0]) if words else 0
    if any(len(w) != ncols for w in words):
        raise GridError("ragged label table")
    return tuple(
        "".join(words[nrows - 1 - c][r] for c in range(nrows)).translate(_PHI)
        for r in range(ncols)
    )


def kg_has_tpc(m: int, n: int) -> bool:
    """Whether the m x n grid admits a total perfect code.

    The characterization covers grids with both sides at least 2: one side
    must be even, say m, with n = 1, m-2 or m modulo m+1.  Both orientations
    are tried since the grid is symmetric in its sides.
    """
    if min(m, n) <= 1:
        raise GridError("characterized only for grids with both sides >= 2")

    def one_way(a: int, b: int) -> bool:
        return a % 2 == 0 and b % (a + 1) in {1, a - 2, a}

    return one_way(m, n) or one_way(n, m)


def _admissible_seeds(m: int) -> Iterator[str]:
    for bits in itertools.product((0, 1), repeat=m):
        columns = tuple(i for i, b in enumerate(bits) if b)
        if is_admissible(m, columns):
            yield init_word(m, columns)


def search_tpcs(m: int, n: int) -> tuple[PdsSolution, ...]:
    """Every total perfect code of the m x n grid, by exhausting seed rows.

    Runs the construction tree from every admissible bottom row (the empty
    and full rows included) and keeps the height-n solutions whose induced
    components are all single edges.
    """
    dims = GridDims(m, n)
    found: dict[frozenset, PdsSolution] = {}
    for row0 in _admissible_seeds(m):
        report = enumerate_from_row(row0, n)
        for sol in report.solutions:
            if sol.n == n and sol.vertices not in found:
                if is_tpc(dims, sol.vertices):
                    found[sol.vertices] = sol
    return tuple(sorted(found.values(), key=PdsSolution.key))


def tpc_exists_search(m: int, n: int) -> bool:
    return bool(search_tpcs(m, n))


# --- the lattice code S1 ------------------------------------------------

# Window coordinates are plain integers; the distinguished central cell is
# the unit square [0,1]^2, so its center (1/2, 1/2) is the fixed point of
# every symmetry below and the window [-R, R+1]^2 is closed under all eight.


@lru_cache(maxsize=None)
def _centered_code(m: int) -> frozenset[tuple[int, int]]:
    """Code vertices of the width-m TallPlus2 table, centered on the window."""
    half = m // 2
    return frozenset(
        (i - half + 1, j - half)
        for j, w in enumerate(run_gamma(m))
        for i, c in enumerate(w)
        if c == "2"
    )


def s1_member(u: int, v: int) -> bool:
    """Membership of lattice vertex (u, v) in the code S1.

    S1 is the union of concentric shells: shell k is the width-(2+2k) table
    code rotated k quarter turns about the cell center (1/2, 1/2).  The
    shells agree where they overlap (the quarter-turn transform carries each
    table onto the core of the next), so the smallest shell whose box holds
    the point decides.  Doubled center-relative coordinates keep the
    arithmetic integral.
    """
    x, y = 2 * u - 1, 2 * v - 1
    for k in itertools.count():
        m = 2 + 2 * k
        if abs(x) <= m - 1 and abs(y) <= m + 1:
            return ((x + 1) // 2, (y + 1) // 2) in _centered_code(m)
        x, y = -y, x  # quarter turn of the query undoes the shell's turn


@dataclass(frozen=True)
class LatticeWindow:
    """A finite square window onto S1, centered on the cell [0,1]^2."""

    radius: int
    members: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.radius < 2:
            raise GridError("window radius must be at least 2")

    @property
    def coords(self) -> range:
        return range(-self.radius, self.radius + 2)

    def domain(self) -> Iterator[tuple[int, int]]:
        for v in self.coords:
            for u in self.coords:
                yield (u, v)

    def member(self, u: int, v: int) -> bool:
        if u not in self.coords or v not in self.coords:
            raise GridError(f"({u}, {v}) lies outside the window")
        return (u, v) in self.members

    def interior_is_tpc(self) -> bool:
        """Every vertex with all four neighbors in the window has exactly
        one member neighbor, itself included or not."""
        inner = range(-self.radius + 1, self.radius + 1)
        for v in inner:
            for u in inner:
                around = ((u - 1, v), (u + 1, v), (u, v - 1), (u, v + 1))
                if sum(p in self.members for p in around) != 1:
                    return False
        return True


def build_s1(radius: int) -> LatticeWindow:
    if radius < 2:
        raise GridError("window radius must be at least 2")
    coords = range(-radius, radius + 2)
    members = frozenset(
        (u, v) for v in coords for u in coords if s1_member(u, v)
    )
    return LatticeWindow(radius, members)


# The eight unit-cell symmetries, as maps on integer vertices fixing the
# center (1/2, 1/2) of the central cell.
SYMMETRY_MAPS: dict[str, Callable[[int, int], tuple[int, int]]] = {
    "identity": lambda u, v: (u, v),
    "rot90": lambda u, v: (1 - v, u),
    "rot180": lambda u, v: (1 - u, 1 - v),
    "rot270": lambda u, v: (v, 1 - u),
    "mirror_x": lambda u, v: (1 - u, v),
    "mirror_y": lambda u, v: (u, 1 - v),
    "diagonal": lambda u, v: (v, u),
    "antidiagonal": lambda u, v: (1 - v, 1 - u),
}


def symmetry_group(window: LatticeWindow) -> frozenset[str]:
    """Which of the eight unit-cell symmetries preserve membership on the window."""
    held = set()
    for name, f in SYMMETRY_MAPS.items():
        if all((p in window.members) == (f(*p) in window.members) for p in window.domain()):
            held.add(name)
    return frozenset(held)


def translation_is_symmetry(window: LatticeWindow, dx: int, dy: int = 0) -> bool:
    """Whether shifting by (dx, dy) preserves membership on the overlap."""
    if (dx, dy) == (0, 0):
        return True
    for u, v in window.domain():
        s, t = u + dx, v + dy
        if s in window.coords and t in window.coords:
            if ((u, v) in window.members) != ((s, t) in window.members):
                return False
    return True
