"""Deterministic SVG rendering of embedded graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Embedding, Graph


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderStyle:
    stroke: str = "#222222"
    stroke_width: float = 0.03
    vertex_radius: float = 0.0  # 0 disables vertex dots
    vertex_fill: str = "#444444"
    highlight_radius: float = 0.07
    highlight_fill: str = "#cc2222"
    size: int = 640  # px of the longer side


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


def render_svg(graph: Graph, emb: Embedding, style: RenderStyle | None = None,
               highlight: list[int] | None = None) -> str:
    """One line element per edge, optional vertex dots and highlighted
    vertices; viewBox fitted with a 5% margin. Output is deterministic for
    fixed input."""
    style = style or RenderStyle()
    if graph.n_vertices == 0 or graph.n_edges == 0:
        raise RenderError("nothing to render: empty graph")
    pos = emb.coords
    x0, y0 = pos.min(axis=0)
    x1, y1 = pos.max(axis=0)
    w, h = x1 - x0, y1 - y0
    margin = 0.05 * max(w, h, 1e-9)
    vb = (x0 - margin, y0 - margin, w + 2 * margin, h + 2 * margin)
    scale = style.size / max(vb[2], vb[3])
    width = int(round(vb[2] * scale))
    height = int(round(vb[3] * scale))

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(vb[0])} {_fmt(vb[1])} {_fmt(vb[2])} {_fmt(vb[3])}">',
        f'<g stroke="{style.stroke}" stroke-width="{_fmt(style.stroke_width)}" '
        'stroke-linecap="round">',
    ]
    for i, j in graph.edges:
        lines.append(
            f'<line x1="{_fmt(pos[i, 0])}" y1="{_fmt(pos[i, 1])}" '
            f'x2="{_fmt(pos[j, 0])}" y2="{_fmt(pos[j, 1])}"/>')
    lines.append("</g>")
    if style.vertex_radius > 0:
        lines.append(f'<g fill="{style.vertex_fill}">')
        for v in range(graph.n_vertices):
            lines.append(
                f'<circle cx="{_fmt(pos[v, 0])}" cy="{_fmt(pos[v, 1])}" '
                f'r="{_fmt(style.vertex_radius)}"/>')
        lines.append("</g>")
    for v in highlight or []:
        lines.append(
            f'<circle cx="{_fmt(pos[v, 0])}" cy="{_fmt(pos[v, 1])}" '
            f'r="{_fmt(style.highlight_radius)}" fill="{style.highlight_fill}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
