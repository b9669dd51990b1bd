"""Staircase plots of two-dimensional covers.

Each cover point dominates an axis-aligned box anchored at the origin; a
random point is charged to the cheapest box containing it.  The exclusive
region of a point is therefore its box minus the union of all strictly
cheaper boxes, a rectilinear polygon against a staircase.  Output is a
standalone SVG plus a CSV of exact region-boundary vertices.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import ValidationError
from .measures import Cover
from .numerics import Rational, rat_str


@dataclass(frozen=True)
class Region:
    point: tuple[Rational, Rational]
    cost: Rational
    vertices: tuple[tuple[Rational, Rational], ...]

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0


def _staircase_union(boxes) -> list[tuple[Rational, Rational]]:
    """Maximal corners of a union of origin-anchored boxes.

    Sorted by x ascending (y strictly descending).  A point (u, v) lies in
    the union iff u <= x and v <= y for some returned corner.
    """
    pts = sorted({(x, y) for x, y in boxes if x > 0 and y > 0})
    frontier: list[tuple[Rational, Rational]] = []
    best_y = None
    for x, y in reversed(pts):
        if best_y is None or y > best_y:
            frontier.append((x, y))
            best_y = y
    frontier.reverse()
    return frontier


def _box_minus_staircase(box, corners):
    """Boundary vertices of box minus the staircase union, counterclockwise.

    Returns () when the box is swallowed entirely.
    """
    bx, by = box
    if bx == 0 or by == 0:
        return ()
    if any(x >= bx and y >= by for x, y in corners):
        return ()
    clipped = _staircase_union((min(x, bx), min(y, by)) for x, y in corners)
    if not clipped:
        return ((mpq(0), mpq(0)), (bx, mpq(0)), (bx, by), (mpq(0), by))
    xs = [c[0] for c in clipped]
    ys = [c[1] for c in clipped]
    poly: list[tuple[Rational, Rational]] = [(mpq(0), ys[0])]
    for i, (x, y) in enumerate(clipped):
        poly.append((x, y))
        if i + 1 < len(clipped):
            poly.append((x, ys[i + 1]))
    if xs[-1] < bx:
        poly += [(xs[-1], mpq(0)), (bx, mpq(0)), (bx, by)]
    else:
        poly += [(bx, by)]
    poly.append((mpq(0), by))
    deduped = [p for i, p in enumerate(poly) if i == 0 or p != poly[i - 1]]
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return tuple(deduped)


def cover_regions(cover: Cover, costs) -> list[Region]:
    """Exclusive cheapest-dominator regions, cheapest point first."""
    if cover.n != 2:
        raise ValidationError("staircase plots need two-dimensional covers")
    order = sorted(range(cover.k), key=lambda j: (costs[j], cover.points[j]))
    regions = []
    cheaper: list[tuple[Rational, Rational]] = []
    for j in order:
        x, y = cover.points[j]
        frontier = _staircase_union(cheaper)
        verts = _box_minus_staircase((x, y), frontier)
        regions.append(Region(point=(x, y), cost=costs[j], vertices=verts))
        cheaper.append((x, y))
    return regions


_PALETTE = ["#d4e6f7", "#a9cdef", "#7fb4e7", "#549bdf", "#2a82d7", "#0b69c7"]


def render_svg(cover: Cover, costs, size: int = 480) -> str:
    """Standalone SVG: shaded dominance boxes (priciest first) plus points."""
    if cover.n != 2:
        raise ValidationError("staircase plots need two-dimensional covers")
    order = sorted(
        range(cover.k), key=lambda j: (costs[j], cover.points[j]), reverse=True
    )
    pad = 24
    span = size - 2 * pad

    def sx(v) -> float:
        return pad + float(v) * span

    def sy(v) -> float:
        return pad + (1.0 - float(v)) * span

    out = io.StringIO()
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
    )
    out.write(
        f'<rect x="{pad}" y="{pad}" width="{span}" height="{span}" '
        f'fill="#f4f7fb" stroke="black"/>\n'
    )
    for rank, j in enumerate(order):
        x, y = cover.points[j]
        if x == 0 or y == 0:
            continue
        color = _PALETTE[min(rank, len(_PALETTE) - 1)]
        out.write(
            f'<rect x="{pad}" y="{sy(y):.3f}" width="{sx(x) - pad:.3f}" '
            f'height="{sy(0) - sy(y):.3f}" fill="{color}" stroke="black" '
            f'stroke-width="0.8"/>\n'
        )
    for j in range(cover.k):
        x, y = cover.points[j]
        out.write(
            f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="4" fill="white" '
            f'stroke="black" stroke-width="1.5"/>\n'
        )
    out.write("</svg>\n")
    return out.getvalue()


def render_csv(cover: Cover, costs) -> str:
    """CSV of exact region boundaries: one row per polygon vertex."""
    regions = cover_regions(cover, costs)
    out = io.StringIO()
    out.write("region,point_x,point_y,cost,vertex,vx,vy\n")
    for r_idx, region in enumerate(regions):
        px, py = region.point
        for v_idx, (vx, vy) in enumerate(region.vertices):
            out.write(
                f"{r_idx},{rat_str(px)},{rat_str(py)},{rat_str(region.cost)},"
                f"{v_idx},{rat_str(vx)},{rat_str(vy)}\n"
            )
    return out.getvalue()
