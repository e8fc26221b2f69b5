"""Deterministic SVG rendering of graphs, routes, cones and homothets.

Output is a plain string assembled with fixed formatting, so identical input
always yields the identical document (golden-file testable).  Coordinates are
normalised to the instance bounding box; the y axis is flipped into SVG's
downward convention.
"""

from __future__ import annotations


from .geometry import smallest_homothet
from .graph import TDGraph

_W = 640.0
_MARGIN = 0.06

_STYLE = {
    "edge": 'stroke="#607080" stroke-width="1"',
    "route": 'stroke="#d03020" stroke-width="2.5" fill="none"',
    "point": 'fill="#203040"',
    "label": 'font-family="monospace" font-size="9" fill="#203040"',
    "cone_pos": 'stroke="#208040" stroke-width="1"',
    "cone_neg": 'stroke="#208040" stroke-width="1" stroke-dasharray="4 3"',
    "cone_fill": 'fill="#208040" fill-opacity="0.08" stroke="none"',
    "homothet": 'fill="#4060c0" fill-opacity="0.12" stroke="#4060c0" stroke-width="1.2"',
}


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def render_svg(graph: TDGraph, route_vertices=None, cone_vertex: int | None = None,
               homothet_pair: tuple[int, int] | None = None,
               show_negative_cones: bool = False) -> str:
    """Render the graph to an SVG string.

    route_vertices: optional vertex id sequence drawn as an overlay polyline;
    cone_vertex: draw the six cone boundary rays at this vertex (negative
    cone shading only with show_negative_cones);
    homothet_pair: draw the smallest homothet through this vertex pair.
    """
    coords = graph.points.coords
    n = len(coords)
    xmin = float(coords[:, 0].min()) if n else 0.0
    xmax = float(coords[:, 0].max()) if n else 1.0
    ymin = float(coords[:, 1].min()) if n else 0.0
    ymax = float(coords[:, 1].max()) if n else 1.0
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = _MARGIN * span
    scale = _W / (span + 2.0 * pad)
    height = _W

    def sx(x: float) -> float:
        return (x - xmin + pad) * scale

    def sy(y: float) -> float:
        return height - (y - ymin + pad) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_W)}" '
        f'height="{int(height)}" viewBox="0 0 {int(_W)} {int(height)}">',
        f'<rect width="{int(_W)}" height="{int(height)}" fill="#ffffff"/>',
    ]

    if homothet_pair is not None:
        u, v = homothet_pair
        h = smallest_homothet(graph.shape, graph.points[u], graph.points[v])
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in h.corners)
        parts.append(f'<polygon points="{pts}" {_STYLE["homothet"]}/>')

    for e in sorted(graph.undirected_edges(), key=sorted):
        u, v = sorted(e)
        parts.append(
            f'<line x1="{_fmt(sx(coords[u, 0]))}" y1="{_fmt(sy(coords[u, 1]))}" '
            f'x2="{_fmt(sx(coords[v, 0]))}" y2="{_fmt(sy(coords[v, 1]))}" '
            f'{_STYLE["edge"]}/>'
        )

    if cone_vertex is not None:
        px, py = graph.points[cone_vertex]
        ray_len = 0.6 * span
        if show_negative_cones:
            for i in range(3):
                d0, d1 = graph.shape.cone_rays[i]
                tip0 = (px - ray_len * d0[0], py - ray_len * d0[1])
                tip1 = (px - ray_len * d1[0], py - ray_len * d1[1])
                pts = (f"{_fmt(sx(px))},{_fmt(sy(py))} "
                       f"{_fmt(sx(tip0[0]))},{_fmt(sy(tip0[1]))} "
                       f"{_fmt(sx(tip1[0]))},{_fmt(sy(tip1[1]))}")
                parts.append(f'<polygon points="{pts}" {_STYLE["cone_fill"]}/>')
        for ex, ey in graph.shape.edge_dirs:
            for dx, dy, style in ((ex, ey, _STYLE["cone_pos"]),
                                  (-ex, -ey, _STYLE["cone_neg"])):
                parts.append(
                    f'<line x1="{_fmt(sx(px))}" y1="{_fmt(sy(py))}" '
                    f'x2="{_fmt(sx(px + ray_len * dx))}" '
                    f'y2="{_fmt(sy(py + ray_len * dy))}" {style}/>'
                )

    if route_vertices:
        pts = " ".join(
            f"{_fmt(sx(coords[v, 0]))},{_fmt(sy(coords[v, 1]))}" for v in route_vertices
        )
        parts.append(f'<polyline points="{pts}" {_STYLE["route"]}/>')

    r = max(2.5, min(4.0, 120.0 / max(n, 1)))
    for i in range(n):
        parts.append(
            f'<circle cx="{_fmt(sx(coords[i, 0]))}" cy="{_fmt(sy(coords[i, 1]))}" '
            f'r="{_fmt(r)}" {_STYLE["point"]}/>'
        )
        if n <= 60:
            parts.append(
                f'<text x="{_fmt(sx(coords[i, 0]) + r + 1.5)}" '
                f'y="{_fmt(sy(coords[i, 1]) - r)}" {_STYLE["label"]}>{i}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
