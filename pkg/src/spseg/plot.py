"""Deterministic CSV and SVG output for welfare samples."""

from __future__ import annotations

import csv
import io
from xml.sax.saxutils import escape
from fractions import Fraction
from typing import Sequence

from spseg.core import Segmentation
from spseg.frontier import FrontierPoint
from spseg.io import format_rational
from spseg.pricing import AggregateStats

WIDTH, HEIGHT = 800, 600
MARGIN = 70


def segmentation_token(s: Segmentation) -> str:
    """Compact one-cell encoding: markets separated by '|', masses by spaces."""
    return "|".join(" ".join(format_rational(x) for x in m.masses) for m in s.markets)


def frontier_csv(points: Sequence[FrontierPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["pi", "u", "representative"])
    for p in sorted(points, key=lambda p: (p.pi, p.u)):
        writer.writerow([format_rational(p.pi), format_rational(p.u), segmentation_token(p.representative)])
    return buf.getvalue()


def _fmt(x: Fraction) -> str:
    # exact rational -> fixed 2-decimal text, round half up
    scaled = x * 100
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 100}.{q % 100:02d}"


def surplus_svg(stats: AggregateStats, points: Sequence[FrontierPoint] = (), title: str = "") -> str:
    """Surplus triangle B-C-D with vertices A-D and sampled points, 800x600 viewBox."""
    w_bar = stats.w_bar
    sx = Fraction(WIDTH - 2 * MARGIN) / w_bar
    sy = Fraction(HEIGHT - 2 * MARGIN) / w_bar

    def xy(pi: Fraction, u: Fraction) -> tuple[str, str]:
        return _fmt(MARGIN + pi * sx), _fmt(HEIGHT - MARGIN - u * sy)

    x0, y0 = xy(Fraction(0), Fraction(0))
    xe, _ = xy(w_bar, Fraction(0))
    _, ye = xy(Fraction(0), w_bar)
    tri = stats.triangle
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{xe}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{ye}" stroke="black"/>',
        f'<text x="{xe}" y="{_fmt(Fraction(HEIGHT - MARGIN + 30))}" text-anchor="end" font-size="14">producer surplus</text>',
        f'<text x="{_fmt(Fraction(MARGIN - 10))}" y="{ye}" text-anchor="end" font-size="14">u</text>',
    ]
    poly = " ".join(",".join(xy(*tri[v])) for v in ("B", "C", "D"))
    lines.append(f'<polygon points="{poly}" fill="#e8eef7" stroke="#1f4e8c" stroke-width="2"/>')
    for label in ("A", "B", "C", "D"):
        px, py = xy(*tri[label])
        pi, u = tri[label]
        lines.append(f'<circle cx="{px}" cy="{py}" r="5" fill="#1f4e8c"/>')
        lines.append(
            f'<text x="{px}" y="{py}" dx="8" dy="-8" font-size="14">{label} ({format_rational(pi)}, {format_rational(u)})</text>'
        )
    for p in sorted(points, key=lambda p: (p.pi, p.u)):
        px, py = xy(p.pi, p.u)
        lines.append(f'<circle cx="{px}" cy="{py}" r="3" fill="#c0392b"/>')
    if title:
        lines.append(f'<text x="{WIDTH // 2}" y="30" text-anchor="middle" font-size="16">{escape(title)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
