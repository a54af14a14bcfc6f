"""Codification of a PDS as an array of room/ladder rectangle dimensions.

The complement of a PDS, together with the boundary ring one step outside the
grid, splits the unit cells of the augmented grid into rooms (cells incident
to a code vertex, grouped around each code component) and ladders (maximal
runs of cells seeing no code vertex at all).  Reading the rectangles row by
row, top-aligned, yields an array of (width, height) pairs with strong
staggering invariants; the array determines the PDS.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import GridDims, GridError, Vertex, components, is_pds

GOOD = "good"
BAD = "bad"


class CodecError(GridError):
    """Labeling breaks the room/ladder structure theory."""


@dataclass(frozen=True)
class Rect:
    """Inclusive cell rectangle; cells (x, y) with x in [-1, m-1], y in [-1, n-1]."""

    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def cells(self):
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield (x, y)

    def contains(self, cell: tuple[int, int]) -> bool:
        x, y = cell
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


def direction_labels(dims: GridDims, vertices) -> list[str]:
    """Label rows for a PDS: 2 in the code, else the unique code neighbor's side."""
    s = frozenset(vertices)
    if not is_pds(dims, s):
        raise CodecError("vertex set is not a PDS")
    rows = []
    for j in range(dims.n):
        row = []
        for i in range(dims.m):
            if (i, j) in s:
                row.append("2")
                continue
            arrows = []
            if (i, j + 1) in s:
                arrows.append("0")
            if (i + 1, j) in s:
                arrows.append("1")
            if (i - 1, j) in s:
                arrows.append("3")
            if (i, j - 1) in s:
                arrows.append("4")
            assert len(arrows) == 1
            row.append(arrows[0])
        rows.append("".join(row))
    return rows


def _label_at(labels: list[str], m: int, n: int, i: int, j: int) -> int:
    if 0 <= i < m and 0 <= j < n:
        return int(labels[j][i])
    return 5  # boundary ring of the augmented grid


def _arrow_target(i: int, j: int, label: int) -> tuple[int, int]:
    return {
        0: (i, j + 1),
        1: (i + 1, j),
        3: (i - 1, j),
        4: (i, j - 1),
    }[label]


def classify_cell(tl: int, tr: int, bl: int, br: int) -> str:
    """Good/bad for one cell given its four corner labels (5 = ring).

    An arrow must point at an in-cell corner exactly when that corner holds a
    2; anything else breaks perfect domination around the cell.
    """
    corners = {(0, 0): tl, (1, 0): tr, (0, 1): bl, (1, 1): br}
    neighbors = {
        (0, 0): [(1, 0), (0, 1)],
        (1, 0): [(0, 0), (1, 1)],
        (0, 1): [(0, 0), (1, 1)],
        (1, 1): [(1, 0), (0, 1)],
    }
    for pos, lab in corners.items():
        if lab in (2, 5):
            continue
        target = _arrow_target(pos[0], pos[1], lab)
        for u in neighbors[pos]:
            if corners[u] == 2 and target != u:
                raise CodecError(f"corner {pos} ignores its code neighbor {u}")
            if target == u and corners[u] != 2:
                raise CodecError(f"corner {pos} points at non-code corner {u}")
    return GOOD if any(lab == 2 for lab in corners.values()) else BAD


def classify_4cycles(labels: list[str]) -> dict[tuple[int, int], str]:
    """Good/bad for every cell of the boundary-augmented grid."""
    n = len(labels)
    m = len(labels[0])
    out = {}
    for y in range(-1, n):
        for x in range(-1, m):
            out[(x, y)] = classify_cell(
                _label_at(labels, m, n, x, y),
                _label_at(labels, m, n, x + 1, y),
                _label_at(labels, m, n, x, y + 1),
                _label_at(labels, m, n, x + 1, y + 1),
            )
    return out


@dataclass(frozen=True)
class RoomsAndLadders:
    rooms: tuple[Rect, ...]
    ladders: tuple[Rect, ...]
    adjacency: tuple[tuple[int, int], ...]  # index pairs into rooms+ladders

    @property
    def regions(self) -> tuple[Rect, ...]:
        return self.rooms + self.ladders

    def is_room(self, index: int) -> bool:
        return index < len(self.rooms)


def _cell_components(cells: set[tuple[int, int]]) -> list[set[tuple[int, int]]]:
    todo = set(cells)
    comps = []
    while todo:
        seed = todo.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            x, y = frontier.pop()
            for w in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                if w in todo:
                    todo.remove(w)
                    comp.add(w)
                    frontier.append(w)
        comps.append(comp)
    return comps


def _edge_adjacent(a: Rect, b: Rect) -> bool:
    horiz = (a.x1 + 1 == b.x0 or b.x1 + 1 == a.x0) and min(a.y1, b.y1) >= max(a.y0, b.y0)
    vert = (a.y1 + 1 == b.y0 or b.y1 + 1 == a.y0) and min(a.x1, b.x1) >= max(a.x0, b.x0)
    return horiz or vert


def decompose(labels: list[str]) -> RoomsAndLadders:
    """Split the augmented cells into room and ladder rectangles and check them."""
    n = len(labels)
    m = len(labels[0])
    classes = classify_4cycles(labels)
    code = {
        (i, j) for j in range(n) for i in range(m) if labels[j][i] == "2"
    }

    rooms = []
    for comp in sorted(components(code), key=lambda c: min((v[1], v[0]) for v in c)):
        xs = [v[0] for v in comp]
        ys = [v[1] for v in comp]
        if (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1) != len(comp):
            raise CodecError("code component is not a rectangle")
        rooms.append(Rect(min(xs) - 1, min(ys) - 1, max(xs), max(ys)))

    good = {c for c, cls in classes.items() if cls == GOOD}
    covered: set[tuple[int, int]] = set()
    for room in rooms:
        for cell in room.cells():
            if cell in covered:
                raise CodecError(f"rooms overlap at {cell}")
            if cell not in good:
                raise CodecError(f"room cell {cell} is not good")
            covered.add(cell)
    if covered != good:
        raise CodecError("good cells not exhausted by rooms")

    bad = {c for c, cls in classes.items() if cls == BAD}
    ladders = []
    for comp in sorted(_cell_components(bad), key=min):
        xs = [c[0] for c in comp]
        ys = [c[1] for c in comp]
        rect = Rect(min(xs), min(ys), max(xs), max(ys))
        if rect.area != len(comp):
            raise CodecError("ladder is not a rectangle")
        if min(rect.width, rect.height) != 1:
            raise CodecError("ladder thicker than one cell")
        ladders.append(rect)

    # Distinct ladders can never share an edge (maximal components); rooms can
    # edge-abut when their code components are diagonal neighbors.
    regions = rooms + ladders
    adjacency = []
    for a in range(len(regions)):
        for b in range(a + 1, len(regions)):
            if _edge_adjacent(regions[a], regions[b]):
                adjacency.append((a, b))
    return RoomsAndLadders(tuple(rooms), tuple(ladders), tuple(adjacency))


def extended_lengths(rect: Rect, dims: GridDims) -> tuple[int, int]:
    """Rectangle extent in cells, the array entry; checks the span accounting.

    Along each axis the cell count equals the number of interior grid columns
    (rows) the rectangle crosses plus one per boundary-ring side it touches.
    """
    inner_w = min(rect.x1, dims.m - 2) - max(rect.x0, 0) + 1
    inner_h = min(rect.y1, dims.n - 2) - max(rect.y0, 0) + 1
    w = max(inner_w, 0) + (rect.x0 == -1) + (rect.x1 == dims.m - 1)
    h = max(inner_h, 0) + (rect.y0 == -1) + (rect.y1 == dims.n - 1)
    if (w, h) != (rect.width, rect.height):
        raise CodecError(f"span accounting broke for {rect}")
    return (w, h)


Entry = tuple[int, int]


@dataclass(frozen=True)
class PdsArray:
    m: int
    n: int
    r: int  # columns
    s: int  # rows
    delta: int
    entries: tuple[tuple[Entry, ...], ...]

    @property
    def designation(self) -> str:
        return f"A({self.m},{self.n},{self.r},{self.s},{self.delta})"


def _delta_of(entries: tuple[tuple[Entry, ...], ...]) -> int:
    parities = {
        (r + c) % 2
        for r, row in enumerate(entries)
        for c, (a, b) in enumerate(row)
        if min(a, b) == 1
    }
    if len(parities) > 1:
        raise CodecError("ladders on both parities")
    if parities:
        return parities.pop()
    return 1  # no ladders: only the vacuous parity class works


def to_pds_array(dims: GridDims, vertices) -> PdsArray:
    """Codify a PDS as its room/ladder array; validates before returning."""
    labels = direction_labels(dims, vertices)
    decomp = decompose(labels)
    regions = decomp.regions
    if not regions:
        raise CodecError("no regions")

    def region_at(cell: tuple[int, int]) -> int:
        for idx, rect in enumerate(regions):
            if rect.contains(cell):
                return idx
        raise CodecError(f"no region contains {cell}")

    # Display row t+1, column c+1 starts directly below the bottom of the
    # region at row t, column c+1; in row 0 every region's top is -1.
    used = set()
    rows: list[list[int]] = []
    while True:
        top = -1 if not rows else regions[rows[-1][0]].y1 + 1
        row = [region_at((-1, top))]
        cur = regions[row[-1]]
        while cur.x1 < dims.m - 1:
            if rows:
                prev = rows[-1]
                if len(row) >= len(prev):
                    raise CodecError("ragged assembly rows")
                probe_y = regions[prev[len(row)]].y1 + 1
            else:
                probe_y = -1
            nxt = region_at((cur.x1 + 1, probe_y))
            row.append(nxt)
            cur = regions[nxt]
        for idx in row:
            if idx in used:
                raise CodecError("region visited twice during assembly")
            used.add(idx)
        rows.append(row)
        if regions[row[0]].y1 >= dims.n - 1:
            break
    if used != set(range(len(regions))):
        raise CodecError("assembly missed regions")
    if len({len(row) for row in rows}) != 1:
        raise CodecError("ragged assembly rows")

    entries = tuple(
        tuple(extended_lengths(regions[idx], dims) for idx in row) for row in rows
    )
    arr = PdsArray(
        m=dims.m,
        n=dims.n,
        r=len(rows[0]),
        s=len(rows),
        delta=_delta_of(entries),
        entries=entries,
    )
    bad_axioms = validate_pds_array(arr, dims.m, dims.n)
    if bad_axioms:
        raise CodecError(f"assembled array violates axioms {bad_axioms}")
    return arr


def validate_pds_array(array: PdsArray, m: int, n: int) -> list[int]:
    """Return the numbers of the structural axioms the array violates."""
    e = array.entries
    if len(e) != array.s or any(len(row) != array.r for row in e):
        raise GridError("entry shape does not match (r, s)")
    violated = set()
    # (1) the delta parity class carries exactly the 1-thin entries
    for r, row in enumerate(e):
        for c, (a, b) in enumerate(row):
            if (r + c) % 2 == array.delta and min(a, b) != 1:
                violated.add(1)
    # (2) widths change by at most 2 down a column
    for c in range(array.r):
        for r in range(array.s - 1):
            if abs(e[r + 1][c][0] - e[r][c][0]) > 2:
                violated.add(2)
    # (3) heights change by at most 2 along a row
    for row in e:
        for c in range(array.r - 1):
            if abs(row[c + 1][1] - row[c][1]) > 2:
                violated.add(3)
    # (4) width prefix sums of adjacent rows stagger by at most 1
    for r in range(array.s - 1):
        acc_a = acc_b = 0
        for c in range(array.r):
            acc_a += e[r][c][0]
            acc_b += e[r + 1][c][0]
            if abs(acc_a - acc_b) > 1:
                violated.add(4)
    # (5) height prefix sums of adjacent columns stagger by at most 1
    for c in range(array.r - 1):
        acc_a = acc_b = 0
        for r in range(array.s):
            acc_a += e[r][c][1]
            acc_b += e[r][c + 1][1]
            if abs(acc_a - acc_b) > 1:
                violated.add(5)
    # (6) row widths tile m+1
    for row in e:
        if sum(a for a, _ in row) != m + 1:
            violated.add(6)
    # (7) column heights tile n+1
    for c in range(array.r):
        if sum(e[r][c][1] for r in range(array.s)) != n + 1:
            violated.add(7)
    return sorted(violated)


def reverse_array(array: PdsArray) -> PdsArray:
    """The array of the left-right mirrored PDS: rows reverse entry order."""
    entries = tuple(tuple(reversed(row)) for row in array.entries)
    return PdsArray(
        m=array.m,
        n=array.n,
        r=array.r,
        s=array.s,
        delta=_delta_of(entries),
        entries=entries,
    )
