"""Minimal self-contained SVG line plots."""

from __future__ import annotations

from html import escape

import numpy as np

W, H = 640, 420
ML, MR, MT, MB = 70, 20, 40, 50
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, n))


def plot(series, title="", xlabel="", ylabel="") -> str:
    """Render ``series`` as an SVG document.

    Each entry is ``(label, x, y)`` or ``(label, x, y, style)`` with style one
    of "line", "dashed", "steps", "points".
    """
    series = [s if len(s) == 4 else (*s, "line") for s in series]
    xs = np.concatenate([np.asarray(s[1], float) for s in series])
    ys = np.concatenate([np.asarray(s[2], float) for s in series])
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = min(0.0, float(np.min(ys))), float(np.max(ys))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return ML + (np.asarray(x) - x0) / (x1 - x0) * (W - ML - MR)

    def py(y):
        return H - MB - (np.asarray(y) - y0) / (y1 - y0) * (H - MT - MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{W / 2}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<line x1="{ML}" y1="{H - MB}" x2="{W - MR}" y2="{H - MB}" stroke="black"/>',
        f'<line x1="{ML}" y1="{MT}" x2="{ML}" y2="{H - MB}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{px(t):.1f}" y="{H - MB + 16}" text-anchor="middle" font-size="11">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{ML - 6}" y="{py(t) + 4:.1f}" text-anchor="end" font-size="11">{t:.3g}</text>')
    out.append(f'<text x="{W / 2}" y="{H - 12}" text-anchor="middle" font-size="13">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{H / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {H / 2})">{escape(ylabel)}</text>'
    )

    for k, (label, x, y, style) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        x, y = np.asarray(x, float), np.asarray(y, float)
        if style == "steps":
            x = np.repeat(x, 2)[1:]
            y = np.repeat(y, 2)[:-1]
        if style == "points":
            for a, b in zip(px(x), py(y)):
                out.append(f'<circle cx="{a:.1f}" cy="{b:.1f}" r="2" fill="{color}"/>')
        else:
            pts = " ".join(f"{a:.1f},{b:.1f}" for a, b in zip(px(x), py(y)))
            dash = ' stroke-dasharray="6,4"' if style == "dashed" else ""
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
        ly = MT + 14 + 16 * k
        out.append(f'<line x1="{W - MR - 150}" y1="{ly - 4}" x2="{W - MR - 130}" y2="{ly - 4}" stroke="{color}"/>')
        out.append(f'<text x="{W - MR - 125}" y="{ly}" font-size="11">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write(path, series, **kw):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(plot(series, **kw))
