"""Static SVG picture of an instance and its tour."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from jointroute.model import Instance, Solution

SIZE = 600.0
MARGIN = 20.0


def tour_points(inst: Instance, sol: Solution) -> np.ndarray:
    """Visiting order p_{π0}, s_{a(π0)}, p_{π1}, ... as a (2(n+1), 2) array."""
    seq = sol.sequence
    out = np.empty((2 * len(seq), 2))
    out[0::2] = inst.items[seq]
    out[1::2] = inst.placeholders[sol.assignment[seq]]
    return out


def svg_text(inst: Instance, sol: Solution) -> str:
    pts = np.vstack([inst.items, inst.placeholders])
    lo = pts.min(axis=0)
    span = float(max((pts.max(axis=0) - lo).max(), 1e-12))
    scale = (SIZE - 2 * MARGIN) / span

    def xy(p):
        # flip y so the picture matches the usual axis orientation
        return MARGIN + (p[0] - lo[0]) * scale, SIZE - MARGIN - (p[1] - lo[1]) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
        f"<title>{inst.name} cost={sol.cost:.3f}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    tour = tour_points(inst, sol)
    coords = [xy(p) for p in tour] + [xy(tour[0])]
    joined = " ".join(f"{x:.3f},{y:.3f}" for x, y in coords)
    lines.append(f'<polyline class="tour" points="{joined}" fill="none" stroke="#4a6fa5" stroke-width="1.2"/>')
    for i, p in enumerate(inst.items[1:], start=1):
        x, y = xy(p)
        lines.append(f'<circle class="item" data-index="{i}" cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#d1495b"/>')
    for j, s in enumerate(inst.placeholders[1:], start=1):
        x, y = xy(s)
        lines.append(f'<rect class="placeholder" data-index="{j}" x="{x - 4:.3f}" y="{y - 4:.3f}" '
                     f'width="8" height="8" fill="none" stroke="#2e933c" stroke-width="1.5"/>')
    for label, p in (("depot-start", inst.depot_start), ("depot-end", inst.depot_end)):
        x, y = xy(p)
        lines.append(f'<polygon class="{label}" points="{x:.3f},{y - 7:.3f} {x + 7:.3f},{y:.3f} '
                     f'{x:.3f},{y + 7:.3f} {x - 7:.3f},{y:.3f}" fill="#222222" fill-opacity="0.6"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(inst: Instance, sol: Solution, path) -> None:
    Path(path).write_text(svg_text(inst, sol))
