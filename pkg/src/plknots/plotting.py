"""Matplotlib rendering: diagrams with under-strand gaps and WeRe-set bars.

Drawing is file-oriented (write a PNG/SVG, return the path) because the CLI
report path is the only consumer; nothing here affects the exact-arithmetic
decision code.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import EMPTY_ENTRY, WeReSet
from .diagram import CrossingAssignment, Pseudodiagram, Shadow

PathLike = Union[str, Path]


def _as_diagram(source: Union[Shadow, Pseudodiagram]) -> Pseudodiagram:
    if isinstance(source, Shadow):
        return Pseudodiagram.bare(source)
    return source


def _edge_segments(diagram: Pseudodiagram, edge: int, gap: Fraction):
    """Sub-segments of an edge after cutting gaps where it passes under."""
    shadow = diagram.shadow
    a, b = shadow.edge(edge)
    length_sq = (b - a).dot(b - a)
    cuts: list[tuple[Fraction, Fraction]] = []
    for cid, param in shadow.crossings_on_edge(edge):
        value = diagram.assignment.get(cid)
        if value is None:
            continue
        crossing = shadow.crossings[cid]
        first_over = value is CrossingAssignment.FIRST_OVER
        is_under = (crossing.edge_a == edge) != first_over
        if is_under:
            # gap radius as a parameter interval, from squared edge length
            delta = gap / _sqrt_lower_bound(length_sq)
            cuts.append((max(Fraction(0), param - delta), min(Fraction(1), param + delta)))
    cuts.sort()
    segments = []
    cursor = Fraction(0)
    for lo, hi in cuts:
        if lo > cursor:
            segments.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < 1:
        segments.append((cursor, Fraction(1)))
    return [(a + (b - a).scaled(lo), a + (b - a).scaled(hi)) for lo, hi in segments]


def _sqrt_lower_bound(value: Fraction) -> Fraction:
    """Rational lower bound for sqrt(value), good enough for gap sizing."""
    if value <= 0:
        return Fraction(1)
    guess = Fraction(float(value) ** 0.5)
    if guess <= 0:
        return Fraction(1)
    # one Newton step keeps it close; exactness is irrelevant for plotting
    guess = (guess + value / guess) / 2
    return guess


def draw_diagram(
    source: Union[Shadow, Pseudodiagram],
    path: PathLike,
    title: Optional[str] = None,
) -> Path:
    """Render the diagram to ``path``; under strands get visible gaps."""
    diagram = _as_diagram(source)
    shadow = diagram.shadow
    xs = [float(v.x) for v in shadow.vertices]
    ys = [float(v.y) for v in shadow.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    gap = Fraction(round(span * 0.03))

    fig, ax = plt.subplots(figsize=(6, 6))
    for edge in range(shadow.num_edges):
        for start, end in _edge_segments(diagram, edge, gap):
            ax.plot(
                [float(start.x), float(end.x)],
                [float(start.y), float(end.y)],
                color="black",
                linewidth=1.6,
                solid_capstyle="round",
            )
    ax.plot(xs, ys, "o", color="black", markersize=3)
    for cid, crossing in enumerate(shadow.crossings):
        x, y = float(crossing.point.x), float(crossing.point.y)
        if cid not in diagram.assignment:
            ax.plot([x], [y], "o", markerfacecolor="white",
                    markeredgecolor="black", markersize=7)
        ax.annotate(str(cid), (x, y), textcoords="offset points",
                    xytext=(6, 6), fontsize=9, color="tab:blue")
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    out = Path(path)
    fig.savefig(out, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return out


def plot_were(were: WeReSet, path: PathLike, title: Optional[str] = None) -> Path:
    """Bar chart of a WeRe-set with exact fractions as bar labels."""
    items = sorted(were.entries.items())
    if were.empty_prob:
        items.append((EMPTY_ENTRY, were.empty_prob))
    labels = [name for name, _ in items]
    values = [float(prob) for _, prob in items]

    fig, ax = plt.subplots(figsize=(max(4, len(items) * 1.2), 4))
    bars = ax.bar(labels, values, color="tab:blue")
    for bar, (_, prob) in zip(bars, items):
        ax.annotate(
            str(prob),
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom",
            fontsize=9,
        )
    ax.set_ylabel("probability")
    ax.set_ylim(0, 1.05)
    ax.set_title(title or f"WeRe-set ({were.mode.value})")
    out = Path(path)
    fig.savefig(out, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return out
