"""SVG drawings of labeled diagrams (schematic; the combinatorics are normative)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .diagram import CROSSING, CUSP, FoldDiagram
from .errors import FoldDiagramError, RealizationUnavailable
from .geometry import Realization, realize, trace_realization

PALETTE = ("#1f4e79", "#9c2f2f", "#2f7d32", "#7b3f98", "#b36b00", "#00707a")


def _label_points(arr, scale):
    """One interior point per face: the offset point right of an edge with most clearance."""
    d = arr.diagram
    segs = np.vstack([np.column_stack([p[:-1], p[1:]]) for p in arr.dart_paths.values() if len(p) > 1])
    a, b = segs[:, :2], segs[:, 2:]
    ab = b - a
    denom = np.maximum((ab * ab).sum(axis=1), 1e-300)

    def clearance(p):
        s = np.clip(((p - a) * ab).sum(axis=1) / denom, 0.0, 1.0)
        return float(np.min(np.hypot(*(a + s[:, None] * ab - p).T)))

    best: dict[int, tuple[float, np.ndarray]] = {}
    for (c, x), path in sorted(arr.dart_paths.items()):
        if len(path) < 2:
            continue
        steps = np.diff(path, axis=0)
        lens = np.hypot(steps[:, 0], steps[:, 1])
        k = int(np.argmax(lens))
        if lens[k] == 0:
            continue
        mid = 0.5 * (path[k] + path[k + 1])
        t = steps[k] / lens[k]
        normal = np.array([t[1], -t[0]])
        f = d.face_right(c, x)
        for eps in (0.04 * scale, 0.02 * scale, 0.01 * scale, 0.3 * lens[k]):
            p = mid + eps * normal
            room = clearance(p)
            if room >= 0.6 * eps:
                if f not in best or room > best[f][0]:
                    best[f] = (room, p)
                break
    return {f: p for f, (_, p) in best.items()}


def render_svg(d: FoldDiagram, lab, real: Realization | None = None, size: int = 480) -> str:
    """Draw ``d`` with face widths written inside the faces."""
    if lab is None and real is None:
        return _unavailable("a labeling is needed to orient the curves", size)
    try:
        if real is None:
            real = realize(d, lab)
        arr = trace_realization(real)
    except (FoldDiagramError, RealizationUnavailable) as exc:
        return _unavailable(str(exc), size)
    widths = arr.labeling.widths
    x0, y0, x1, y1 = real.bounds()
    scale = max(x1 - x0, y1 - y0) or 1.0
    margin = 0.08 * scale
    k = (size - 2 * 10) / (scale + 2 * margin)

    def tx(p):
        return 10 + k * (p[0] - x0 + margin), 10 + k * (y1 - p[1] + margin)

    h = 20 + k * (y1 - y0 + 2 * margin)
    w = 20 + k * (x1 - x0 + 2 * margin)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0f}" height="{h:.0f}" '
           f'viewBox="0 0 {w:.2f} {h:.2f}">',
           f'<rect x="0" y="0" width="{w:.2f}" height="{h:.2f}" fill="white"/>']
    for i, pts in enumerate(real.curves):
        coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in map(tx, pts))
        out.append(f'<polygon points="{coords}" fill="none" stroke="{PALETTE[i % len(PALETTE)]}" '
                   f'stroke-width="1.6" stroke-linejoin="round"/>')
    td = arr.diagram
    for (c, vid), p in sorted(arr.vertex_points.items()):
        v = td.components[c].vertices[vid]
        px, py = tx(p)
        if v.kind == CROSSING:
            r = 4
            out.append(f'<path d="M{px - r:.2f},{py - r:.2f}L{px + r:.2f},{py + r:.2f}'
                       f'M{px - r:.2f},{py + r:.2f}L{px + r:.2f},{py - r:.2f}" stroke="black" stroke-width="1"/>')
        elif v.kind == CUSP:
            # the wedge opens along the shared tangent of the two branches
            path = arr.dart_paths[(c, v.darts[0])]
            direction = path[1] - path[0]
            ang = math.atan2(-direction[1], direction[0])
            tip = (px + 9 * math.cos(ang), py + 9 * math.sin(ang))
            out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="2.5" fill="black"/>')
            out.append(f'<line x1="{px:.2f}" y1="{py:.2f}" x2="{tip[0]:.2f}" y2="{tip[1]:.2f}" '
                       f'stroke="black" stroke-width="1" stroke-dasharray="2,1"/>')
    for f, p in sorted(_label_points(arr, scale).items()):
        if f == td.outer_face:
            continue
        px, py = tx(p)
        out.append(f'<text x="{px:.2f}" y="{py:.2f}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="middle" dominant-baseline="middle">{widths[f]}</text>')
    out.append(f'<text x="14" y="20" font-family="sans-serif" font-size="11">{widths[td.outer_face]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _unavailable(reason: str, size: int) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="40">\n'
            f'<text x="10" y="24" font-family="sans-serif" font-size="12">REALIZATION-UNAVAILABLE: '
            f"{escape(reason)}</text>\n</svg>\n")
