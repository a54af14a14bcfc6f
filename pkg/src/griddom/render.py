"""Renderers: text, JSON, DOT, golden figure composition, and matplotlib plots.

Text output follows the house style of the worked examples: label tables as
digit rows, grids as ● (code vertex) and ○ (dominated vertex), traces as one
line per decision.  JSON schemas are the documented round-trip formats.  The
matplotlib backends are imported lazily so headless use stays cheap.
"""

from __future__ import annotations

import difflib
import json
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .band import Edge, TransitionGraph
from .codec import PdsArray, Rect, decompose, direction_labels, to_pds_array
from .core import GridDims, InitialCondition, PdsSolution, Vertex
from .theta import (
    Decision,
    DecisionContext,
    LabelRow,
    Pds,
    parse_strategy,
    run_theta,
    table_from_row,
    vertices_of_rows,
)
from .tpc import LatticeWindow, build_tpc, phi_transform, run_gamma

__all__ = [
    "grid_text",
    "labels_text",
    "trace_text",
    "array_text",
    "walk_text",
    "window_text",
    "solution_to_json",
    "solution_from_json",
    "array_to_json",
    "array_from_json",
    "dot_graph",
    "diff_text",
    "golden_text",
    "FIGURES",
    "figure_text",
    "draw_solution",
    "draw_decomposition",
    "draw_window",
    "draw_histogram",
]

CODE_DOT = "●"   # filled circle: code vertex
OTHER_DOT = "○"  # open circle: dominated vertex


# --- plain text ----------------------------------------------------------


def grid_text(m: int, n: int, vertices: Iterable[Vertex]) -> str:
    s = set(vertices)
    return "\n".join(
        " ".join(CODE_DOT if (i, j) in s else OTHER_DOT for i in range(m))
        for j in range(n)
    )


def labels_text(rows: Sequence[LabelRow | str]) -> str:
    return "\n".join(r.labels if isinstance(r, LabelRow) else r for r in rows)


def trace_text(trace: Sequence[Decision]) -> str:
    lines = []
    for d in trace:
        c = d.ctx
        i = "-" if c.i is None else c.i
        lines.append(f"j={c.j} step={c.step} kind={c.kind} i={i} k={c.k} opt={d.opt}")
    return "\n".join(lines)


def _entry_text(entry: tuple[int, int]) -> str:
    w, h = entry
    return f"{w}{h}" if w < 10 and h < 10 else f"{w},{h}"


def array_text(array: PdsArray) -> str:
    body = "\n".join(" ".join(_entry_text(e) for e in row) for row in array.entries)
    return f"{array.designation}\n{body}"


def walk_text(steps: Sequence[Edge]) -> str:
    lines = []
    for e in steps:
        label = "".join(e.choices) or "."
        suffix = "  (thread)" if e.thread else ""
        lines.append(f"{e.src} -{label}-> {e.dst}{suffix}")
    return "\n".join(lines)


def window_text(window: LatticeWindow) -> str:
    return "\n".join(
        " ".join(
            CODE_DOT if (u, v) in window.members else OTHER_DOT
            for u in window.coords
        )
        for v in window.coords
    )


# --- JSON round-trips ----------------------------------------------------


def _decision_obj(d: Decision) -> dict:
    obj: dict = {"j": d.ctx.j, "step": str(d.ctx.step), "kind": d.ctx.kind}
    if d.ctx.i is not None:
        obj["i"] = d.ctx.i
    obj["k"] = d.ctx.k
    obj["opt"] = d.opt
    return obj


def solution_to_json(sol: PdsSolution) -> str:
    obj = {
        "m": sol.m,
        "n": sol.n,
        "s": [[i, j] for (i, j) in sol.sorted_vertices()],
        "trace": [_decision_obj(d) for d in sol.trace],
    }
    return json.dumps(obj)


def solution_from_json(text: str) -> PdsSolution:
    obj = json.loads(text)
    decisions = tuple(
        Decision(
            DecisionContext(
                j=raw["j"],
                step=int(raw["step"]),
                kind=raw["kind"],
                i=raw.get("i"),
                k=raw["k"],
            ),
            raw["opt"],
        )
        for raw in obj["trace"]
    )
    vertices = frozenset((i, j) for i, j in obj["s"])
    return PdsSolution(obj["m"], obj["n"], vertices, decisions)


def array_to_json(array: PdsArray) -> str:
    obj = {
        "m": array.m,
        "n": array.n,
        "r": array.r,
        "s": array.s,
        "delta": array.delta,
        "entries": [[list(e) for e in row] for row in array.entries],
    }
    return json.dumps(obj)


def array_from_json(text: str) -> PdsArray:
    obj = json.loads(text)
    entries = tuple(tuple((w, h) for w, h in row) for row in obj["entries"])
    return PdsArray(obj["m"], obj["n"], obj["r"], obj["s"], obj["delta"], entries)


# --- DOT -----------------------------------------------------------------


def dot_graph(graph: TransitionGraph) -> str:
    lines = ["digraph transitions {", "  rankdir=LR;"]
    lines.append(f'  "{graph.root}" [peripheries=2];')
    for e in graph.edges + graph.threads:
        label = "".join(e.choices)
        style = ", style=dashed" if e.thread else ""
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- golden figures ------------------------------------------------------


def diff_text(expected: str, actual: str, fromfile: str, tofile: str) -> str:
    return "".join(
        difflib.unified_diff(
            expected.splitlines(keepends=True),
            actual.splitlines(keepends=True),
            fromfile,
            tofile,
        )
    )


def golden_text(name: str) -> str:
    return (resources.files("griddom") / "goldens" / f"{name}.txt").read_text()


def _run_block(m: int, columns: tuple[int, ...], script: str) -> str:
    initial = InitialCondition(m, columns)
    outcome = run_theta(initial, parse_strategy(script))
    assert isinstance(outcome, Pds)
    sol = outcome.solution
    cols = ",".join(map(str, columns))
    parts = [
        f"run m={m} s'=({cols}) choices={script} -> {m}x{sol.n}",
        labels_text(outcome.rows),
        grid_text(sol.m, sol.n, sol.vertices),
        trace_text(sol.trace),
    ]
    return "\n".join(p for p in parts if p)


def _array_block(m: int, n: int, vertices: frozenset) -> str:
    return array_text(to_pds_array(GridDims(m, n), vertices))


def fig1_text() -> str:
    """The two worked constructions: 16 columns (babab) and 5 columns (bb)."""
    blocks = [
        _run_block(16, (1, 2, 3, 9, 13, 14), "babab"),
        _run_block(5, (1,), "bb"),
    ]
    return "\n\n".join(blocks) + "\n"


def fig2_text() -> str:
    """The 4-column seed {1}: both one-decision runs and the extended square."""
    blocks = [
        _run_block(4, (1,), "a"),
        _run_block(4, (1,), "b"),
    ]
    for script in ("a", "b"):
        outcome = run_theta(InitialCondition(4, (1,)), parse_strategy(script))
        assert isinstance(outcome, Pds)
        sol = outcome.solution
        blocks.append(_array_block(4, sol.n, sol.vertices))
    rows = table_from_row("1230", parse_strategy("alpha"), 4)
    words = [r.labels for r in rows]
    verts = vertices_of_rows(words)
    blocks.append("extended alpha run to 4x4\n" + labels_text(rows))
    blocks.append(_array_block(4, 4, verts))
    return "\n\n".join(blocks) + "\n"


def fig3_text() -> str:
    """The five total-perfect-code blocks with their arrays and core checks."""
    blocks = []
    for m in (2, 4, 6, 8, 10):
        sol = build_tpc(m, "TallPlus2")
        blocks.append(
            f"code block m={m} ({m}x{m + 2})\n"
            + labels_text(run_gamma(m))
            + "\n"
            + _array_block(m, m + 2, sol.vertices)
        )
    checks = [
        f"phi core check {m}->{m + 2}: "
        + ("OK" if phi_transform(run_gamma(m)) == run_gamma(m + 2)[2 : m + 2] else "DRIFT")
        for m in (2, 4, 6, 8)
    ]
    blocks.append("\n".join(checks))
    return "\n\n".join(blocks) + "\n"


def arrays_text() -> str:
    """Every printed array: the two worked runs and the five code blocks."""
    blocks = []
    for m, columns, script in ((16, (1, 2, 3, 9, 13, 14), "babab"), (5, (1,), "bb")):
        outcome = run_theta(InitialCondition(m, columns), parse_strategy(script))
        assert isinstance(outcome, Pds)
        sol = outcome.solution
        blocks.append(_array_block(m, sol.n, sol.vertices))
    for m in (2, 4, 6, 8, 10):
        sol = build_tpc(m, "TallPlus2")
        blocks.append(_array_block(m, m + 2, sol.vertices))
    return "\n\n".join(blocks) + "\n"


FIGURES = {
    "fig1": fig1_text,
    "fig2": fig2_text,
    "fig3": fig3_text,
    "arrays": arrays_text,
}


def figure_text(name: str) -> str:
    try:
        return FIGURES[name]()
    except KeyError:
        raise ValueError(f"unknown figure {name!r}") from None


# --- matplotlib ----------------------------------------------------------


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _draw_vertices(ax, m: int, n: int, vertices: set) -> None:
    xs_in = [i for (i, j) in vertices]
    ys_in = [j for (i, j) in vertices]
    xs_out = [i for j in range(n) for i in range(m) if (i, j) not in vertices]
    ys_out = [j for j in range(n) for i in range(m) if (i, j) not in vertices]
    ax.scatter(xs_out, ys_out, s=30, facecolors="white", edgecolors="black", zorder=3)
    ax.scatter(xs_in, ys_in, s=42, color="black", zorder=3)
    ax.set_xlim(-1.6, m + 0.6)
    ax.set_ylim(n + 0.6, -1.6)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])


def draw_solution(sol: PdsSolution, path: str) -> str:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(3, sol.m / 2), max(3, sol.n / 2)))
    _draw_vertices(ax, sol.m, sol.n, set(sol.vertices))
    ax.set_title(f"{sol.m} x {sol.n}, |S| = {len(sol.vertices)}")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def _rect_patch(rect: Rect, **kwargs):
    from matplotlib.patches import Rectangle

    return Rectangle(
        (rect.x0, rect.y0), rect.x1 + 1 - rect.x0, rect.y1 + 1 - rect.y0, **kwargs
    )


def draw_decomposition(dims: GridDims, vertices: Iterable[Vertex], path: str) -> str:
    plt = _plt()
    verts = frozenset(vertices)
    decomp = decompose(direction_labels(dims, verts))
    fig, ax = plt.subplots(figsize=(max(3, dims.m / 2), max(3, (dims.n or 1) / 2)))
    for room in decomp.rooms:
        ax.add_patch(_rect_patch(room, fill=False, edgecolor="tab:blue", linewidth=1.6))
    for ladder in decomp.ladders:
        ax.add_patch(
            _rect_patch(
                ladder,
                facecolor="tab:red",
                alpha=0.25,
                edgecolor="tab:red",
                linewidth=1.6,
            )
        )
    _draw_vertices(ax, dims.m, dims.n, set(verts))
    ax.set_title(f"rooms: {len(decomp.rooms)}, ladders: {len(decomp.ladders)}")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def _window_components(window: LatticeWindow) -> list[list[tuple[int, int]]]:
    seen: set[tuple[int, int]] = set()
    comps = []
    for p in sorted(window.members):
        if p in seen:
            continue
        comp, frontier = [], [p]
        seen.add(p)
        while frontier:
            u, v = frontier.pop()
            comp.append((u, v))
            for q in ((u - 1, v), (u + 1, v), (u, v - 1), (u, v + 1)):
                if q in window.members and q not in seen:
                    seen.add(q)
                    frontier.append(q)
        comps.append(comp)
    return comps


def window_tiling(window: LatticeWindow) -> tuple[list[Rect], list[Rect]]:
    """Room and ladder rectangles (cell coordinates) fully inside the window."""
    lo, hi = -window.radius, window.radius + 1
    rooms = []
    for comp in _window_components(window):
        us = [u for u, _ in comp]
        vs = [v for _, v in comp]
        room = Rect(min(us) - 1, min(vs) - 1, max(us), max(vs))
        if room.x0 >= lo and room.y0 >= lo and room.x1 + 1 <= hi and room.y1 + 1 <= hi:
            rooms.append(room)
    bad = {
        (u, v)
        for u in range(lo, hi)
        for v in range(lo, hi)
        if not any(
            q in window.members
            for q in ((u, v), (u + 1, v), (u, v + 1), (u + 1, v + 1))
        )
    }
    seen: set[tuple[int, int]] = set()
    ladders = []
    for c in sorted(bad):
        if c in seen:
            continue
        comp, frontier = [], [c]
        seen.add(c)
        while frontier:
            x, y = frontier.pop()
            comp.append((x, y))
            for q in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                if q in bad and q not in seen:
                    seen.add(q)
                    frontier.append(q)
        xs = [x for x, _ in comp]
        ys = [y for _, y in comp]
        rect = Rect(min(xs), min(ys), max(xs), max(ys))
        if rect.x0 > lo and rect.y0 > lo and rect.x1 < hi - 1 and rect.y1 < hi - 1:
            ladders.append(rect)
    return rooms, ladders


def draw_window(window: LatticeWindow, path: str) -> str:
    plt = _plt()
    size = max(4, (2 * window.radius + 2) / 3)
    fig, ax = plt.subplots(figsize=(size, size))
    rooms, ladders = window_tiling(window)
    for room in rooms:
        ax.add_patch(_rect_patch(room, fill=False, edgecolor="tab:blue", linewidth=1.2))
    for ladder in ladders:
        ax.add_patch(
            _rect_patch(ladder, facecolor="tab:red", alpha=0.25, edgecolor="tab:red")
        )
    for comp in _window_components(window):
        if len(comp) == 2:
            (u1, v1), (u2, v2) = comp
            ax.plot([u1, u2], [v1, v2], color="black", linewidth=2.2, zorder=2)
    xs = [u for u, _ in window.members]
    ys = [v for _, v in window.members]
    ax.scatter(xs, ys, s=22, color="black", zorder=3)
    lo, hi = -window.radius, window.radius + 1
    ax.set_xlim(lo - 1.2, hi + 1.2)
    ax.set_ylim(hi + 1.2, lo - 1.2)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(f"lattice code window, radius {window.radius}")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def draw_histogram(counts: Mapping[int, int], path: str, title: str = "") -> str:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ns = sorted(counts)
    ax.bar([str(n) for n in ns], [counts[n] for n in ns], color="tab:blue")
    ax.set_xlabel("rows n")
    ax.set_ylabel("solutions")
    if title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
