"""Draw a section polygon in its own plane as a small SVG document."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .geometry import SectionPolygon

SIZE = 400.0
MARGIN = 60.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def render_section_svg(section: SectionPolygon, title: str = "") -> bytes:
    xy = section.plane_coords()
    xy = xy - xy.mean(axis=0)
    # principal axis horizontal, so the picture does not depend on the plane basis
    _, _, vt = np.linalg.svd(xy, full_matrices=False)
    xy = xy @ vt.T
    if np.cross(np.append(xy[1] - xy[0], 0), np.append(xy[2] - xy[1], 0))[2] < 0:
        xy[:, 1] = -xy[:, 1]
    span = float(np.abs(xy).max()) or 1.0
    k = (SIZE / 2 - MARGIN) / span
    pts = [(SIZE / 2 + k * x, SIZE / 2 - k * y) for x, y in xy]  # svg y grows downward

    n = len(pts)
    lengths = section.edge_lengths()
    center = np.array([SIZE / 2, SIZE / 2])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(SIZE)}" height="{int(SIZE)}" '
        f'viewBox="0 0 {int(SIZE)} {int(SIZE)}" font-family="monospace" font-size="11">',
    ]
    if title:
        out.append(f'<text x="10" y="18">{escape(title)}</text>')
    path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
    out.append(f'<polygon points="{path}" fill="#e8f0fa" stroke="#1f3b73" stroke-width="1.5"/>')

    for i in range(n):
        a, b = np.array(pts[i]), np.array(pts[(i + 1) % n])
        mid = 0.5 * (a + b)
        push = mid - center
        push = push / (np.linalg.norm(push) or 1.0)
        lx, ly = mid + 14 * push
        out.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" text-anchor="middle">{lengths[i]:.6g}</text>')

    for i in range(n):
        p = np.array(pts[i])
        u = np.array(pts[i - 1]) - p
        w = np.array(pts[(i + 1) % n]) - p
        angle = math.degrees(math.atan2(abs(u[0] * w[1] - u[1] * w[0]), float(u @ w)))
        inward = center - p
        inward = inward / (np.linalg.norm(inward) or 1.0)
        tx, ty = p + 22 * inward
        out.append(f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="2.5" fill="#1f3b73"/>')
        out.append(f'<text x="{_fmt(tx)}" y="{_fmt(ty)}" text-anchor="middle" fill="#a33">{angle:.2f}&#176;</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render_witness_svg(witness) -> bytes:
    """SVG of a witness section with edge lengths and interior angles."""
    title = f"{witness.failure.value} ({witness.sampler})"
    return render_section_svg(witness.section, title)
