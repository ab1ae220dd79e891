"""Charts of spectral sequence pages: SVG on a 16px grid and a plain text grid."""

from __future__ import annotations

import json
import os
import tempfile

GRID = 16
MARGIN = 24


def page_data(page):
    """Accept a Page or its JSON object and return the JSON object."""
    if isinstance(page, dict):
        return page
    if isinstance(page, str):
        return json.loads(page)
    return page.to_json_obj()


def render_svg(page, boundary=None):
    """Dots for classes at (stem, filtration), one straight line per unit of rank.

    ``boundary`` is the first untrusted stem; everything from there on is shaded.
    """
    data = page_data(page)
    entries = data["entries"]
    diffs = data["differentials"]
    cells = [(x, y) for x, y, _ in entries] + [tuple(c) for pair in diffs for c in pair]
    stems = [x for x, _ in cells] or [0]
    filts = [y for _, y in cells] or [0]
    x0, x1 = min(stems), max(stems + ([boundary] if boundary is not None else []))
    y1 = max(filts)
    width = (x1 - x0 + 1) * GRID + 2 * MARGIN
    height = (y1 + 1) * GRID + 2 * MARGIN

    def px(x, y, k=0, n=1):
        # spread n dots horizontally inside a cell
        off = (k - (n - 1) / 2) * min(4, GRID / (n + 1))
        return MARGIN + (x - x0) * GRID + GRID / 2 + off, height - MARGIN - y * GRID - GRID / 2

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<title>E{data["r"]}</title>',
           '<rect width="100%" height="100%" fill="white"/>']
    if boundary is not None:
        bx = MARGIN + (boundary - x0) * GRID
        out.append(f'<rect class="boundary" x="{bx}" y="0" width="{width - bx}" height="{height}" '
                   'fill="#eeeeee"/>')
    for x in range(x0, x1 + 1):
        if x % 4 == 0:
            gx = MARGIN + (x - x0) * GRID + GRID / 2
            out.append(f'<text x="{gx}" y="{height - 6}" font-size="9" text-anchor="middle">{x}</text>')
    for x, y, n in entries:
        for k in range(n):
            cx, cy = px(x, y, k, n)
            out.append(f'<circle class="class" cx="{cx:g}" cy="{cy:g}" r="2.5" fill="black"/>')
    for src, tgt in diffs:
        ax, ay = px(*src)
        bx, by = px(*tgt)
        out.append(f'<line class="differential" x1="{ax:g}" y1="{ay:g}" x2="{bx:g}" y2="{by:g}" '
                   'stroke="#1f5fbf" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_text(page):
    """Per-bidegree counts; rows are filtrations (top first), columns are stems."""
    data = page_data(page)
    counts = {(x, y): n for x, y, n in data["entries"]}
    if not counts:
        return f"E{data['r']}: empty\n"
    xs = [x for x, _ in counts]
    ys = [y for _, y in counts]
    x0, x1, y1 = min(xs), max(xs), max(ys)
    w = max(3, len(str(x1)) + 1, len(str(x0)) + 1)
    lines = [f"E{data['r']}"]
    for y in range(y1, -1, -1):
        row = "".join(f"{counts.get((x, y), '.'):>{w}}" for x in range(x0, x1 + 1))
        lines.append(f"{y:>3} |{row}")
    lines.append("    +" + "-" * (w * (x1 - x0 + 1)))
    lines.append("     " + "".join(f"{x:>{w}}" for x in range(x0, x1 + 1)))
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
