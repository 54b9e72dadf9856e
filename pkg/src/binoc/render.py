"""Staircase pictures of congruences on N^2, as ASCII text or SVG.

Every cell of a box ``[0, bx] x [0, by]`` gets the id of its class; cells
in the same class share a letter (ASCII) or a fill color (SVG), and nil
cells are shaded.  Output is deterministic.
"""

from __future__ import annotations

import colorsys
from itertools import product
from string import ascii_uppercase

from .errors import DimensionUnsupported


def _classifier(obj):
    """A function ``e -> class key or None`` for the supported inputs."""
    from .congruence import FiniteCongruence, LocalView
    from .ideal import Ideal
    from .soccular import CongruenceComponent

    if isinstance(obj, Ideal):
        ring = obj.ring

        def cls(e):
            f = obj.normal_form(ring.monomial(e))
            return None if f.is_zero() else next(iter(f.terms))

        return cls, ring.n
    if isinstance(obj, LocalView):
        return obj.class_of, obj.n
    if isinstance(obj, FiniteCongruence):
        return obj.classify, obj.n
    if isinstance(obj, CongruenceComponent):
        return obj.label_of, obj.view.n
    raise TypeError(f"cannot render {type(obj).__name__}")


def _default_box(obj):
    from .ideal import Ideal

    ideal = obj if isinstance(obj, Ideal) else getattr(obj, "ideal", None)
    if ideal is None and hasattr(obj, "view"):
        ideal = obj.view.ideal
    if ideal is None:
        return (4, 4)
    gb = ideal.groebner()
    return tuple(max((g.lm()[i] for g in gb), default=0) + 1 for i in range(2))


def class_grid(obj, box=None) -> list:
    """Rows (top row = largest y) of class ids; ``None`` marks nil."""
    cls, n = _classifier(obj)
    if n != 2:
        raise DimensionUnsupported(f"rendering needs two variables, got {n}")
    bx, by = box or _default_box(obj)
    cells = sorted(product(range(bx + 1), range(by + 1)), key=lambda e: (sum(e), -e[0]))
    ids = {}
    grid = {}
    for e in cells:
        k = cls(e)
        if k is None:
            grid[e] = None
            continue
        if k not in ids:
            ids[k] = len(ids)
        grid[e] = ids[k]
    return [[grid[(x, y)] for x in range(bx + 1)] for y in range(by, -1, -1)]


def _name(k: int) -> str:
    out = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        out = ascii_uppercase[r] + out
    return out


def render_ascii(obj, box=None) -> str:
    rows = class_grid(obj, box)
    width = max([len(_name(c)) for r in rows for c in r if c is not None] + [1])
    lines = []
    by = len(rows) - 1
    for y, row in enumerate(rows):
        cells = [("#" * width if c is None else _name(c).rjust(width)) for c in row]
        lines.append(f"{by - y:>2} | " + " ".join(cells))
    lines.append("   +-" + "-" * ((width + 1) * len(rows[0]) - 1))
    lines.append("     " + " ".join(str(x).rjust(width) for x in range(len(rows[0]))))
    return "\n".join(lines) + "\n"


def _color(k: int) -> str:
    # golden-angle hues give well separated, reproducible colors
    h = (k * 0.381966) % 1.0
    r, g, b = colorsys.hls_to_rgb(h, 0.72, 0.55)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def render_svg(obj, box=None, cell: int = 36) -> str:
    rows = class_grid(obj, box)
    h, w = len(rows), len(rows[0])
    pad = 24
    W, H = w * cell + 2 * pad, h * cell + 2 * pad
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        "<defs>",
        '<pattern id="nil" width="6" height="6" patternUnits="userSpaceOnUse">',
        '<rect width="6" height="6" fill="#d0d0d0"/>',
        '<path d="M0,6 L6,0" stroke="#909090" stroke-width="1"/>',
        "</pattern>",
        "</defs>",
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    for r, row in enumerate(rows):
        for c, k in enumerate(row):
            x, y = pad + c * cell, pad + r * cell
            fill = "url(#nil)" if k is None else _color(k)
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}" stroke="#404040" stroke-width="1"/>')
            if k is not None:
                out.append(
                    f'<text x="{x + cell // 2}" y="{y + cell // 2 + 5}" font-family="monospace" font-size="14" '
                    f'text-anchor="middle">{_name(k)}</text>'
                )
    for c in range(w):
        out.append(f'<text x="{pad + c * cell + cell // 2}" y="{H - 6}" font-family="monospace" font-size="11" text-anchor="middle">{c}</text>')
    for r in range(h):
        out.append(f'<text x="{pad - 8}" y="{pad + r * cell + cell // 2 + 4}" font-family="monospace" font-size="11" text-anchor="middle">{h - 1 - r}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_congruence(obj, fmt: str = "ascii", box=None) -> str:
    if fmt == "ascii":
        return render_ascii(obj, box)
    if fmt == "svg":
        return render_svg(obj, box)
    raise ValueError("format must be 'ascii' or 'svg'")
