"""Grid-graph model: initial conditions, perfect-domination predicates, brute-force oracle.

A vertex set S of the m x n grid graph is a perfect dominating set (PDS) when
every vertex outside S has exactly one neighbor in S.  A total perfect code
(TPC) is a PDS whose components are all single edges.  Initial conditions live
on the bottom row H0 and are admissible when their runs sit at least three
columns apart.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

Vertex = tuple[int, int]  # (column i, row j)

ORACLE_CAP_DEFAULT = 30
ORACLE_CAP_ENV = "GRIDDOM_MAX_ORACLE"


class GridError(ValueError):
    """Bad dimensions, out-of-range vertices, or refused oracle sizes."""


@dataclass(frozen=True)
class GridDims:
    """Dimensions of a grid graph; n=None means the vertical band (infinite rows)."""

    m: int
    n: int | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise GridError(f"m must be >= 1, got {self.m}")
        if self.n is not None and self.n < 1:
            raise GridError(f"n must be >= 1 or None, got {self.n}")

    @property
    def finite(self) -> bool:
        return self.n is not None

    @property
    def order(self) -> int:
        if self.n is None:
            raise GridError("band graph has no finite order")
        return self.m * self.n

    def contains(self, v: Vertex) -> bool:
        i, j = v
        if not 0 <= i < self.m or j < 0:
            return False
        return self.n is None or j < self.n

    def vertices(self) -> Iterator[Vertex]:
        if self.n is None:
            raise GridError("cannot iterate the band graph")
        for j in range(self.n):
            for i in range(self.m):
                yield (i, j)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        i, j = v
        out = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
        return [w for w in out if self.contains(w)]


class InitialClass(str, Enum):
    IAVS = "IAVS"
    COMPLETE = "Complete"
    EMPTY_OR_FULL = "EmptyOrFull"
    INADMISSIBLE = "Inadmissible"


def _check_columns(m: int, columns: Iterable[int]) -> tuple[int, ...]:
    cols = tuple(sorted(set(columns)))
    for c in cols:
        if not 0 <= c < m:
            raise GridError(f"column {c} outside [0, {m})")
    return cols


def runs(columns: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive columns, as inclusive (start, end) pairs."""
    cols = sorted(set(columns))
    out: list[tuple[int, int]] = []
    for c in cols:
        if out and c == out[-1][1] + 1:
            out[-1] = (out[-1][0], c)
        else:
            out.append((c, c))
    return out


def is_admissible(m: int, columns: Iterable[int]) -> bool:
    """True when consecutive runs of S' sit at least 3 columns apart."""
    rs = runs(_check_columns(m, columns))
    return all(b[0] - a[1] >= 3 for a, b in zip(rs, rs[1:]))


def init_word(m: int, columns: Iterable[int]) -> str:
    """Labels induced on H0: 2 on S', 1 left of each run, 3 right, 0 elsewhere.

    Defined for any admissible column set (including the empty and full rows);
    raises GridError when runs collide.
    """
    cols = _check_columns(m, columns)
    if not is_admissible(m, cols):
        raise GridError("initial condition is not admissible")
    f = [0] * m
    for c in cols:
        f[c] = 2
    for a, b in runs(cols):
        if a - 1 >= 0:
            f[a - 1] = 1
        if b + 1 < m:
            f[b + 1] = 3
    return "".join(map(str, f))


def classify_initial(m: int, columns: Iterable[int]) -> InitialClass:
    cols = _check_columns(m, columns)
    if len(cols) in (0, m):
        return InitialClass.EMPTY_OR_FULL
    if not is_admissible(m, cols):
        return InitialClass.INADMISSIBLE
    if "0" in init_word(m, cols):
        return InitialClass.IAVS
    return InitialClass.COMPLETE


@dataclass(frozen=True)
class InitialCondition:
    """An admissible vertex subset S' of the bottom row H0."""

    m: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", _check_columns(self.m, self.columns))

    @property
    def classification(self) -> InitialClass:
        return classify_initial(self.m, self.columns)

    @property
    def is_iavs(self) -> bool:
        return self.classification is InitialClass.IAVS


@dataclass(frozen=True)
class PdsSolution:
    """A perfect dominating set of an m x n grid plus the decisions that built it."""

    m: int
    n: int
    vertices: frozenset[Vertex]
    trace: tuple = ()

    @property
    def dims(self) -> GridDims:
        return GridDims(self.m, self.n)

    def sorted_vertices(self) -> list[Vertex]:
        return sorted(self.vertices, key=lambda v: (v[1], v[0]))

    def key(self) -> tuple[int, tuple[Vertex, ...]]:
        return (self.n, tuple(self.sorted_vertices()))


def is_pds(dims: GridDims, vertices: Iterable[Vertex]) -> bool:
    """Every vertex outside the set has exactly one neighbor inside it."""
    s = frozenset(vertices)
    for v in s:
        if not dims.contains(v):
            raise GridError(f"vertex {v} outside the grid")
    for v in dims.vertices():
        if v in s:
            continue
        if sum(1 for w in dims.neighbors(v) if w in s) != 1:
            return False
    return True


def components(vertices: Iterable[Vertex]) -> list[frozenset[Vertex]]:
    """Connected components of the induced subgraph (4-adjacency)."""
    todo = set(vertices)
    out: list[frozenset[Vertex]] = []
    while todo:
        seed = todo.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            i, j = frontier.pop()
            for w in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if w in todo:
                    todo.remove(w)
                    comp.add(w)
                    frontier.append(w)
        out.append(frozenset(comp))
    return out


def components_are_rectangles(vertices: Iterable[Vertex]) -> bool:
    """Each component fills its own bounding box."""
    for comp in components(vertices):
        xs = [v[0] for v in comp]
        ys = [v[1] for v in comp]
        w = max(xs) - min(xs) + 1
        h = max(ys) - min(ys) + 1
        if w * h != len(comp):
            return False
    return True


def is_tpc(dims: GridDims, vertices: Iterable[Vertex]) -> bool:
    """PDS whose components are all single edges (1-cubes)."""
    s = frozenset(vertices)
    if not s or not is_pds(dims, s):
        return False
    return all(len(c) == 2 for c in components(s))


def oracle_cap() -> int:
    raw = os.environ.get(ORACLE_CAP_ENV)
    return int(raw) if raw else ORACLE_CAP_DEFAULT


def _neighbor_masks(m: int, n: int) -> list[int]:
    masks = []
    for j in range(n):
        for i in range(m):
            mask = 0
            for u, v in GridDims(m, n).neighbors((i, j)):
                mask |= 1 << (v * m + u)
            masks.append(mask)
    return masks


def oracle_enumerate_naive(dims: GridDims, initial: Iterable[int] | None = None) -> list[PdsSolution]:
    """Literal scan over all 2^(m*n) subsets; kept small-only as a cross-check."""
    m, n = dims.m, dims.n
    if n is None:
        raise GridError("oracle needs a finite grid")
    if m * n > 20:
        raise GridError(f"naive oracle refuses m*n={m * n} > 20")
    nbr = _neighbor_masks(m, n)
    total = m * n
    forced = None
    if initial is not None:
        cols = _check_columns(m, initial)
        forced = sum(1 << c for c in cols)
    row0 = (1 << m) - 1
    found = []
    for mask in range(1 << total):
        if forced is not None and (mask & row0) != forced:
            continue
        ok = True
        for v in range(total):
            if mask >> v & 1:
                continue
            if bin(nbr[v] & mask).count("1") != 1:
                ok = False
                break
        if ok:
            found.append(mask)
    out = []
    for mask in found:
        verts = frozenset((v % m, v // m) for v in range(total) if mask >> v & 1)
        out.append(PdsSolution(m, n, verts))
    out.sort(key=PdsSolution.key)
    return out


def _row_masks_ok(m: int, below: int, row: int, above: int) -> bool:
    # Vertex constraints for the middle row once both neighbors are fixed.
    for i in range(m):
        if row >> i & 1:
            continue
        count = (row >> (i - 1) & 1 if i > 0 else 0) + (row >> (i + 1) & 1 if i < m - 1 else 0)
        count += below >> i & 1
        count += above >> i & 1
        if count != 1:
            return False
    return True


def _oracle_rows(m: int, n: int, first_row: int | None) -> Iterator[tuple[int, ...]]:
    """DFS over per-row bitmasks; row j is checked once rows j-1 and j+1 exist."""
    all_rows = range(1 << m)
    first_choices = [first_row] if first_row is not None else all_rows

    def rec(rows: list[int]) -> Iterator[tuple[int, ...]]:
        depth = len(rows)
        if depth == n:
            if _row_masks_ok(m, rows[-2] if n > 1 else 0, rows[-1], 0):
                yield tuple(rows)
            return
        for nxt in all_rows:
            if depth >= 1:
                below = rows[depth - 2] if depth >= 2 else 0
                if not _row_masks_ok(m, below, rows[-1], nxt):
                    continue
            rows.append(nxt)
            yield from rec(rows)
            rows.pop()

    for r0 in first_choices:
        yield from rec([r0])


def oracle_enumerate(dims: GridDims, initial: Iterable[int] | None = None) -> list[PdsSolution]:
    """All PDSs of the grid, optionally restricted to S intersect H0 = initial.

    Exact search over per-row bitmasks.  Refuses grids over the cap (default
    30 vertices; override with the GRIDDOM_MAX_ORACLE environment variable).
    """
    m, n = dims.m, dims.n
    if n is None:
        raise GridError("oracle needs a finite grid")
    cap = oracle_cap()
    if m * n > cap:
        raise GridError(f"oracle refuses m*n={m * n} > cap {cap}")
    forced = None
    if initial is not None:
        cols = _check_columns(m, initial)
        forced = sum(1 << c for c in cols)
    if forced is None and m > n:
        swapped = oracle_enumerate(GridDims(n, m))
        out = [
            PdsSolution(m, n, frozenset((j, i) for (i, j) in sol.vertices))
            for sol in swapped
        ]
        out.sort(key=PdsSolution.key)
        return out
    out = []
    for rows in _oracle_rows(m, n, forced):
        verts = frozenset((i, j) for j, r in enumerate(rows) for i in range(m) if r >> i & 1)
        out.append(PdsSolution(m, n, verts))
    out.sort(key=PdsSolution.key)
    return out
