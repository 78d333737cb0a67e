"""Minimal hand-written SVG for the spacetime diagram and support dot plots.

Numbers are printed with 12 significant digits so output is byte-stable.
"""

from __future__ import annotations

import math
from typing import Sequence

from .classical import LiouvilleSupport
from .spacetime import FourVector, SpacelikeSlice

WIDTH = 480
HEIGHT = 480
MARGIN = 50


def fmt(x: float) -> str:
    return format(float(x), ".12g")


class _Canvas:
    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float]):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.items: list[str] = []

    def px(self, x: float) -> float:
        return MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)

    def py(self, y: float) -> float:
        return HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)

    def line(self, x1, y1, x2, y2, cls: str, **attrs) -> None:
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.items.append(
            f'<line class="{cls}" x1="{fmt(self.px(x1))}" y1="{fmt(self.py(y1))}" '
            f'x2="{fmt(self.px(x2))}" y2="{fmt(self.py(y2))}"{extra}/>'
        )

    def circle(self, x, y, r: float, cls: str, **attrs) -> None:
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.items.append(
            f'<circle class="{cls}" cx="{fmt(self.px(x))}" cy="{fmt(self.py(y))}" '
            f'r="{fmt(r)}"{extra}/>'
        )

    def text(self, x_px: float, y_px: float, label: str, anchor: str = "start") -> None:
        self.items.append(
            f'<text x="{fmt(x_px)}" y="{fmt(y_px)}" text-anchor="{anchor}">{label}</text>'
        )

    def render(self, title: str) -> str:
        style = (
            "line{stroke:#000;stroke-width:1}"
            ".axis{stroke:#888}"
            ".cone{stroke:#e0a000;stroke-dasharray:4 3}"
            ".worldline{stroke-width:2}"
            ".slice{stroke:#1060c0}"
            ".event,.dot{fill:#000}"
            "text{font-family:sans-serif;font-size:12px}"
        )
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f"<title>{title}</title>\n<style>{style}</style>\n{body}\n</svg>\n"
        )


def _clip_line_t(t_range, x0, t0, slope_dx_dt):
    """Segment of ``x = x0 + slope (t - t0)`` inside the window, by t range."""
    return [(x0 + slope_dx_dt * (t - t0), t) for t in t_range]


def worldline_diagram(events: dict[str, FourVector], observers: Sequence[tuple[str, float, FourVector]],
                      slices: Sequence[tuple[str, SpacelikeSlice]]) -> str:
    """Spacetime diagram in the rest frame: x horizontal, t vertical.

    ``observers`` holds (label, rapidity, event the world line passes through).
    """
    xs = [e.x for e in events.values()]
    ts = [e.t for e in events.values()]
    half = max(max(xs) - min(xs), max(ts) - min(ts), 1.0) * 1.25
    xc, tc = (max(xs) + min(xs)) / 2, (max(ts) + min(ts)) / 2
    x_range, t_range = (xc - half, xc + half), (tc - half, tc + half)
    canvas = _Canvas(x_range, t_range)

    canvas.line(x_range[0], tc, x_range[1], tc, "axis")
    canvas.line(xc, t_range[0], xc, t_range[1], "axis")
    canvas.text(WIDTH - MARGIN, canvas.py(tc) - 6, "x", "end")
    canvas.text(canvas.px(xc) + 6, MARGIN - 6, "t")

    for label, e in events.items():
        for sign in (1.0, -1.0):
            (xa, ta), (xb, tb) = _clip_line_t(t_range, e.x, e.t, sign)
            canvas.line(xa, ta, xb, tb, "cone", data_event=label)

    for label, chi, through in observers:
        (xa, ta), (xb, tb) = _clip_line_t(t_range, through.x, through.t, math.tanh(chi))
        canvas.line(xa, ta, xb, tb, "worldline", data_observer=label, data_rapidity=fmt(chi))
        canvas.text(canvas.px(xb) + 4, canvas.py(tb) + 14, label)

    for label, slc in slices:
        canvas.line(x_range[0], slc.t_at(x_range[0]), x_range[1], slc.t_at(x_range[1]), "slice",
                    data_label=label, data_rapidity=fmt(slc.chi), data_tau=fmt(slc.tau))
        canvas.text(WIDTH - MARGIN + 2, canvas.py(slc.t_at(x_range[1])), label)

    for label, e in events.items():
        canvas.circle(e.x, e.t, 4, "event", data_label=label, data_t=fmt(e.t), data_x=fmt(e.x))
        canvas.text(canvas.px(e.x) + 6, canvas.py(e.t) - 6, label)

    return canvas.render("Events and simultaneity slices")


def support_plot(support: LiouvilleSupport, energy_range: tuple[float, float], title: str) -> str:
    """Dot plot of a support on the (E1, E2) plane; dot area scales with weight."""
    lo, hi = energy_range
    pad = max((hi - lo) * 0.15, 0.5)
    rng = (lo - pad, hi + pad)
    canvas = _Canvas(rng, rng)
    canvas.line(rng[0], rng[0], rng[1], rng[0], "axis")
    canvas.line(rng[0], rng[0], rng[0], rng[1], "axis")
    canvas.text(WIDTH - MARGIN, HEIGHT - MARGIN + 20, "E1", "end")
    canvas.text(MARGIN - 8, MARGIN - 8, "E2", "end")
    for (e1, e2), w in support:
        canvas.circle(e1, e2, 8 * math.sqrt(w), "dot",
                      data_e1=fmt(e1), data_e2=fmt(e2), data_weight=fmt(w))
        canvas.text(canvas.px(e1) + 10, canvas.py(e2) - 10, f"({fmt(e1)}, {fmt(e2)}) w={fmt(w)}")
    canvas.text(WIDTH / 2, MARGIN / 2, title, "middle")
    return canvas.render(title)
