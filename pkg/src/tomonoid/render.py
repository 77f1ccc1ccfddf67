"""Level-set pictures of multiplication tables.

Rows run bottom to top and columns left to right, and each cell shows the
symbol of its product, so every level class is a region of one symbol.
"""

from __future__ import annotations

import string

from .chain import TomonoidTable

CELL = 24


def symbols(n: int) -> list[str]:
    """``0``, ``a``..``z``, ``1`` for chains up to 28 elements, decimals beyond."""
    if n == 1:
        return ["1"]
    if n <= 28:
        return ["0"] + list(string.ascii_lowercase[: n - 2]) + ["1"]
    return [str(i) for i in range(n)]


def render_ascii(t: TomonoidTable) -> str:
    n = t.n
    sym = symbols(n)
    w = max(len(s) for s in sym)
    lines = []
    for a in reversed(range(n)):
        cells = " ".join(sym[t.table[a][b]].rjust(w) for b in range(n))
        lines.append(f"{sym[a].rjust(w)} | {cells}")
    lines.append(" " * w + " +-" + "-" * (n * (w + 1) - 1))
    lines.append(" " * w + "   " + " ".join(s.rjust(w) for s in sym))
    return "\n".join(lines) + "\n"


def render_svg(t: TomonoidTable) -> str:
    """Grid with product symbols; thick lines separate different level classes."""
    n = t.n
    sym = symbols(n)
    tab = t.table
    margin = CELL
    size = n * CELL + 2 * margin

    def x(b: int) -> int:
        return margin + b * CELL

    def y(a: int) -> int:
        return margin + (n - 1 - a) * CELL

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g font-family="monospace" font-size="12" text-anchor="middle">',
    ]
    for a in range(n):
        for b in range(n):
            out.append(
                f'<rect x="{x(b)}" y="{y(a)}" width="{CELL}" height="{CELL}" '
                f'fill="white" stroke="#bbbbbb" stroke-width="0.5"/>'
            )
            out.append(f'<text x="{x(b) + CELL // 2}" y="{y(a) + CELL // 2 + 4}">{sym[tab[a][b]]}</text>')
    for i in range(n):
        out.append(f'<text x="{margin // 2}" y="{y(i) + CELL // 2 + 4}" fill="#666666">{sym[i]}</text>')
        out.append(f'<text x="{x(i) + CELL // 2}" y="{size - margin // 2 + 4}" fill="#666666">{sym[i]}</text>')
    out.append("</g>")
    segs = []
    for a in range(n):
        for b in range(n):
            # vertical edge to the right of (a, b) and horizontal edge above it
            if b + 1 == n or tab[a][b] != tab[a][b + 1]:
                segs.append((x(b + 1), y(a), x(b + 1), y(a) + CELL))
            if a + 1 == n or tab[a][b] != tab[a + 1][b]:
                segs.append((x(b), y(a), x(b) + CELL, y(a)))
            if b == 0:
                segs.append((x(0), y(a), x(0), y(a) + CELL))
            if a == 0:
                segs.append((x(b), y(0) + CELL, x(b) + CELL, y(0) + CELL))
    out.append('<g stroke="black" stroke-width="2" stroke-linecap="square">')
    out += [f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>' for x1, y1, x2, y2 in segs]
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(t: TomonoidTable, format: str = "ascii") -> str:
    if format == "ascii":
        return render_ascii(t)
    if format == "svg":
        return render_svg(t)
    raise ValueError(f"unknown render format {format!r}")
