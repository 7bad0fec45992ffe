"""Static SVG rendering of a two-colored Dyck path with its diagonal lines."""

from __future__ import annotations

from .outline import TwoColoredDyckPath, lines_of

__all__ = ["outline_svg"]

_GRID = "#d0d0d0"
_DIAG = "#2060c0"
_BLACK = "#202020"
_RED = "#c03030"
_LINE = "#2060c0"


def outline_svg(path: TwoColoredDyckPath, cell: int = 28, margin: int = 16) -> str:
    """Plain SVG of the path, the diagonal, and every maximal diagonal line.

    Lattice point (x, y) maps to pixel (margin + x*cell, margin + (n-y)*cell);
    geometry only, no interactivity.
    """
    n = len(path)
    size = 2 * margin + n * cell

    def px(x: float, y: float) -> tuple[float, float]:
        return margin + x * cell, margin + (n - y) * cell

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]

    def seg(x1, y1, x2, y2, color, width=1.0, dash=None):
        (a, b), (c, d) = px(x1, y1), px(x2, y2)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(
            f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" '
            f'stroke="{color}" stroke-width="{width}"{extra}/>'
        )

    for k in range(n + 1):
        seg(k, 0, k, n, _GRID)
        seg(0, k, n, k, _GRID)
    seg(0, 0, n, n, _DIAG, 1.5)

    for line in lines_of(path):
        if line.offset == 0:
            continue  # the diagonal is drawn above
        x_lo, x_hi = line.span
        seg(x_lo, x_lo - line.offset, x_hi, x_hi - line.offset, _LINE, 1.5, dash="4,3")

    # the path: east steps colored per step, north runs black
    y = 0
    for i in range(1, n + 1):
        h = path.height(i)
        if h > y:
            seg(i - 1, y, i - 1, h, _BLACK, 3.0)
            y = h
        seg(i - 1, y, i, y, _RED if path.is_red(i) else _BLACK, 3.0)
    if n:
        seg(n, y, n, n, _BLACK, 3.0)

    parts.append("</svg>")
    return "\n".join(parts)
