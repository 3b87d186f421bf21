"""Static SVG 1.1 drawings of networks (first two coordinates only)."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .variation import first_variation
from .varifold import PolyhedralVarifold


def render_svg(V: PolyhedralVarifold, size: int = 600, title: str = "") -> str:
    w = V.window
    if w.kind == "ball":
        c = np.asarray(w.shape.center[:2])
        lo, hi = c - w.shape.radius, c + w.shape.radius
    else:
        lo, hi = np.asarray(w.shape.lo[:2]), np.asarray(w.shape.hi[:2])
    span = float(max(hi - lo))
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def xy(p):
        x = (p[0] - lo[0] + pad) * scale
        y = (hi[1] - p[1] + pad) * scale
        return f"{x:.3f}", f"{y:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(title)}</title>",
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" '
        'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#c0392b"/></marker></defs>',
    ]
    if w.kind == "ball":
        cx, cy = xy(w.shape.center)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{w.shape.radius * scale:.3f}" '
                   'fill="none" stroke="#999" stroke-dasharray="4 3"/>')
    else:
        x0, y0 = xy((lo[0], hi[1]))
        out.append(f'<rect x="{x0}" y="{y0}" width="{(hi[0] - lo[0]) * scale:.3f}" '
                   f'height="{(hi[1] - lo[1]) * scale:.3f}" fill="none" stroke="#999" '
                   'stroke-dasharray="4 3"/>')
    for i, m in enumerate(V.mult):
        p, q = V.arrangement.segment(i)
        (x1, y1), (x2, y2) = xy(p), xy(q)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#1f3a5f" '
                   f'stroke-width="{1.5 * float(m):.3f}" stroke-linecap="round">'
                   f"<title>edge {i}: multiplicity {m}</title></line>")
    for v in V.arrangement.vertex_array:
        cx, cy = xy(v)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="2.5" fill="#1f3a5f"/>')
    arrow = 0.08 * span
    for p, vec in first_variation(V):
        tip = p[:2] + arrow * vec[:2] / max(np.linalg.norm(vec[:2]), 1e-12)
        (x1, y1), (x2, y2) = xy(p), xy(tip)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#c0392b" '
                   f'stroke-width="1.5" marker-end="url(#arrow)"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
