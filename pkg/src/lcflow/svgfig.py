"""Deterministic SVG figures (fixed viewport, fixed palette, no timestamps).

Coordinates are formatted with six significant digits, so identical inputs
produce identical bytes on every platform.
"""

import math

import numpy as np

PALETTE = ("#1f6feb", "#d29922", "#2ea043", "#cf222e", "#8250df",
           "#bf3989", "#57606a", "#0a3069")


def _fmt(v):
    return format(float(v), ".6g")


class Canvas:
    def __init__(self, width, height):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" '
            'fill="#ffffff"/>',
        ]

    def line(self, x1, y1, x2, y2, color="#222222", width=1.0):
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{color}" stroke-width="{_fmt(width)}"/>')

    def polyline(self, xs, ys, color, width=1.5, dashed=False):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
        dash = ' stroke-dasharray="4,3"' if dashed else ""
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{_fmt(width)}"{dash}/>')

    def circle(self, x, y, radius, color, fill="none", width=1.5):
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
            f'fill="{fill}" stroke="{color}" stroke-width="{_fmt(width)}"/>')

    def dot(self, x, y, color, radius=3.0):
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
            f'fill="{color}" stroke="none"/>')

    def text(self, x, y, s, size=11, color="#222222", anchor="start"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
            f'font-size="{size}" fill="{color}" '
            f'text-anchor="{anchor}">{s}</text>')

    def to_bytes(self):
        return ("\n".join(self.parts) + "\n</svg>\n").encode("ascii")


class Axes:
    """Affine map from data space to a pixel box (y flipped)."""

    def __init__(self, x0, y0, w, h, xlim, ylim):
        self.x0, self.y0, self.w, self.h = x0, y0, w, h
        self.xlim = xlim
        self.ylim = ylim

    def px(self, x):
        lo, hi = self.xlim
        span = hi - lo if hi > lo else 1.0
        return self.x0 + (np.asarray(x, dtype=float) - lo) / span * self.w

    def py(self, y):
        lo, hi = self.ylim
        span = hi - lo if hi > lo else 1.0
        return self.y0 + self.h - (np.asarray(y, dtype=float) - lo) / span * self.h

    def frame(self, canvas, title=""):
        canvas.parts.append(
            f'<rect x="{_fmt(self.x0)}" y="{_fmt(self.y0)}" '
            f'width="{_fmt(self.w)}" height="{_fmt(self.h)}" fill="none" '
            'stroke="#888888" stroke-width="1"/>')
        if title:
            canvas.text(self.x0 + self.w / 2, self.y0 - 6, title,
                        anchor="middle")


def curve_figure(params, times, psi_ranges, phi_of):
    """curve.svg: the (phi, psi) image curve with the attained psi range
    highlighted per time, plus the orthographic (d1, d3) sphere view."""
    canvas = Canvas(860, 430)
    margin = 0.02
    lo = params.delta1 + margin
    hi = math.pi - params.delta1 - margin
    base_psi = np.linspace(lo, hi, 721)
    base_phi = phi_of(base_psi)

    left = Axes(60, 40, 330, 330,
                (float(np.min(base_phi)), float(np.max(base_phi))),
                (lo, hi))
    left.frame(canvas, "image curve (phi, psi)")
    canvas.polyline(left.px(base_phi), left.py(base_psi), "#bbbbbb", 1.0)
    for i, (t, (pmin, pmax)) in enumerate(zip(times, psi_ranges)):
        color = PALETTE[i % len(PALETTE)]
        if pmax - pmin < 1e-12:
            canvas.dot(float(left.px(phi_of(pmin))), float(left.py(pmin)),
                       color)
        else:
            seg = np.linspace(pmin, pmax, 181)
            canvas.polyline(left.px(phi_of(seg)), left.py(seg), color, 2.5)
        canvas.text(400, 60 + 16 * i, f"t={_fmt(t)}", color=color)

    right = Axes(520, 40, 330, 330, (-1.05, 1.05), (-1.05, 1.05))
    right.frame(canvas, "director on the unit sphere (view from +y)")
    canvas.circle(float(right.px(0.0)), float(right.py(0.0)),
                  330 / 2.1, "#888888", width=1.0)
    d1 = np.sin(base_psi) * np.cos(base_phi)
    d3 = np.cos(base_psi)
    canvas.polyline(right.px(d1), right.py(d3), "#bbbbbb", 1.0)
    for i, (t, (pmin, pmax)) in enumerate(zip(times, psi_ranges)):
        color = PALETTE[i % len(PALETTE)]
        if pmax - pmin < 1e-12:
            x = math.sin(pmin) * math.cos(phi_of(pmin))
            z = math.cos(pmin)
            canvas.dot(float(right.px(x)), float(right.py(z)), color)
        else:
            seg = np.linspace(pmin, pmax, 181)
            segphi = phi_of(seg)
            canvas.polyline(right.px(np.sin(seg) * np.cos(segphi)),
                            right.py(np.cos(seg)), color, 2.5)
    return canvas.to_bytes()


def diagnostics_figure(times, arc, fmin, fmax, energy):
    """diagnostics.svg: arc length, F-range band, and energy against the
    time index (times may span decades, so the axis is ordinal)."""
    canvas = Canvas(860, 330)
    idx = np.arange(len(times), dtype=float)
    xlim = (-0.25, max(len(times) - 0.75, 0.25))

    def panel(x0, values_lo, values_hi, title, colors):
        lo = float(np.min(values_lo))
        hi = float(np.max(values_hi))
        if hi - lo < 1e-15:
            lo -= 0.5
            hi += 0.5
        pad = 0.08 * (hi - lo)
        ax = Axes(x0, 40, 230, 230, xlim, (lo - pad, hi + pad))
        ax.frame(canvas, title)
        return ax

    ax1 = panel(50, arc, arc, "arc length", None)
    canvas.polyline(ax1.px(idx), ax1.py(arc), PALETTE[0], 2.0)
    for x, y in zip(idx, arc):
        canvas.dot(float(ax1.px(x)), float(ax1.py(y)), PALETTE[0])

    ax2 = panel(330, fmin, fmax, "F range", None)
    canvas.polyline(ax2.px(idx), ax2.py(fmin), PALETTE[2], 2.0)
    canvas.polyline(ax2.px(idx), ax2.py(fmax), PALETTE[3], 2.0)

    ax3 = panel(610, energy, energy, "energy", None)
    canvas.polyline(ax3.px(idx), ax3.py(energy), PALETTE[4], 2.0)
    for x, y in zip(idx, energy):
        canvas.dot(float(ax3.px(x)), float(ax3.py(y)), PALETTE[4])

    for ax in (ax1, ax2, ax3):
        for i, t in enumerate(times):
            canvas.text(float(ax.px(i)), 290, _fmt(t), size=9,
                        anchor="middle")
    return canvas.to_bytes()
