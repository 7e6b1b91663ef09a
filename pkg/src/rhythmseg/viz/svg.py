"""Minimal SVG 1.1 writer with fixed number formatting.

Elements are emitted in insertion order and every float is printed with two
decimals, so the same calls always produce the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

__all__ = ["fmt", "Axis", "SVG"]


def fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


@dataclass(frozen=True)
class Axis:
    """Affine map from data units ``[lo, hi]`` to pixels ``[px_lo, px_hi]``."""

    lo: float
    hi: float
    px_lo: float
    px_hi: float

    def __call__(self, v):
        return self.px_lo + (v - self.lo) * (self.px_hi - self.px_lo) / (self.hi - self.lo)

    def inverse(self, px):
        return self.lo + (px - self.px_lo) * (self.hi - self.lo) / (self.px_hi - self.px_lo)


def _attrs(attrs: dict) -> str:
    parts = []
    for k, v in attrs.items():
        if v is None:
            continue
        if isinstance(v, float):
            v = fmt(v)
        parts.append(f"{k.rstrip('_').replace('_', '-')}={quoteattr(str(v))}")
    return " ".join(parts)


@dataclass
class SVG:
    width: int
    height: int
    body: list[str] = field(default_factory=list)

    def add(self, tag: str, text: str | None = None, **attrs) -> None:
        a = _attrs(attrs)
        open_tag = f"<{tag} {a}" if a else f"<{tag}"
        if text is None:
            self.body.append(open_tag + "/>")
        else:
            self.body.append(f"{open_tag}>{escape(text)}</{tag}>")

    def raw(self, markup: str) -> None:
        self.body.append(markup)

    def open(self, tag: str, **attrs) -> None:
        a = _attrs(attrs)
        self.body.append(f"<{tag} {a}>" if a else f"<{tag}>")

    def close(self, tag: str) -> None:
        self.body.append(f"</{tag}>")

    def line(self, x1: float, y1: float, x2: float, y2: float, **attrs) -> None:
        self.add("line", x1=float(x1), y1=float(y1), x2=float(x2), y2=float(y2), **attrs)

    def circle(self, cx: float, cy: float, r: float, **attrs) -> None:
        self.add("circle", cx=float(cx), cy=float(cy), r=float(r), **attrs)

    def plus(self, cx: float, cy: float, r: float, **attrs) -> None:
        d = f"M{fmt(cx - r)} {fmt(cy)}H{fmt(cx + r)}M{fmt(cx)} {fmt(cy - r)}V{fmt(cy + r)}"
        self.add("path", d=d, **attrs)

    def polyline(self, xs: Iterable[float], ys: Iterable[float], **attrs) -> None:
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in zip(xs, ys))
        self.add("polyline", points=pts, fill="none", **attrs)

    def text(self, x: float, y: float, s: str, **attrs) -> None:
        self.add("text", s, x=float(x), y=float(y), **attrs)

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([head, *self.body, "</svg>"]) + "\n"
