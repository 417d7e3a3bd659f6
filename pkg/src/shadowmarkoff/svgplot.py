"""Static SVG pictures of the chart gamma = 1."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from .positivity import ConvexPolygon, GridRow

SCALE = 160.0  # pixels per chart unit
PAD = 30.0


class Chart:
    def __init__(self, lo: Sequence[float], hi: Sequence[float]):
        self.x0, self.y0 = float(lo[0]), float(lo[1])
        self.x1, self.y1 = float(hi[0]), float(hi[1])
        self.items: List[str] = []

    @property
    def width(self) -> float:
        return (self.x1 - self.x0) * SCALE + 2 * PAD

    @property
    def height(self) -> float:
        return (self.y1 - self.y0) * SCALE + 2 * PAD

    def xy(self, alpha, beta):
        # beta grows upward on the page
        return (PAD + (float(alpha) - self.x0) * SCALE,
                PAD + (self.y1 - float(beta)) * SCALE)

    def polygon(self, poly: ConvexPolygon, fill: str, stroke: str, opacity: float = 0.4):
        if poly.is_empty:
            return
        pts = " ".join("%.3f,%.3f" % self.xy(*v) for v in poly.vertices)
        self.items.append(
            f'<polygon points="{pts}" fill="{fill}" fill-opacity="{opacity}" '
            f'stroke="{stroke}" stroke-width="1.5"/>'
        )

    def point(self, alpha, beta, color: str, r: float = 2.2):
        x, y = self.xy(alpha, beta)
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r}" fill="{color}"/>')

    def axes(self):
        for (a0, b0), (a1, b1), label in (((self.x0, 0), (self.x1, 0), "alpha"),
                                          ((0, self.y0), (0, self.y1), "beta")):
            (x0, y0), (x1, y1) = self.xy(a0, b0), self.xy(a1, b1)
            self.items.append(f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
                              'stroke="#444" stroke-width="1"/>')
            self.items.append(f'<text x="{x1 - 30:.3f}" y="{y1 + 14 if label == "alpha" else y1 + 4:.3f}" '
                              f'font-size="12" font-family="sans-serif">{label}</text>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width:.0f}" '
                f'height="{self.height:.0f}" viewBox="0 0 {self.width:.3f} {self.height:.3f}">')
        body = ['<rect width="100%" height="100%" fill="white"/>'] + self.items
        return "\n".join([head, *body, "</svg>"]) + "\n"


def region_svg(bbox: ConvexPolygon, quad: ConvexPolygon, outer: Optional[ConvexPolygon] = None,
               rows: Iterable[GridRow] = ()) -> str:
    """Conjectured quadrilateral, an outer polygon, and classified grid points."""
    xs = [v.alpha for v in bbox.vertices]
    ys = [v.beta for v in bbox.vertices]
    ch = Chart((min(xs), min(ys)), (max(xs), max(ys)))
    if outer is not None:
        ch.polygon(outer, "#f4a259", "#c0392b", 0.25)
    ch.polygon(quad, "#0000ff", "#0000aa", 0.45)
    ch.axes()
    for r in rows:
        ch.point(r.alpha, r.beta, "#1a7f37" if r.positive else "#b00020")
    return ch.render()
