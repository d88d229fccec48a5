# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Pictures of planar instances and solutions.

Blue points are drawn as circles and red points as crosses, colored by
group; outliers are hollow and gray. The separating lines of a solution
are dashed. SVG is written directly, PNG goes through pillow.
"""

import io
import os
import logging

from .core import is_feasible

logger = logging.getLogger(__name__)

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]
OUTLIER = "#999999"
LINE_COLORS = ["#444444", "#17becf", "#bcbd22", "#7f7f7f"]


class Canvas(object):
    """ Canvas(points, size=400, margin=0.1)

    Maps instance coordinates into a square picture of ``size`` pixels,
    with the y axis pointing up.
    """

    def __init__(self, points, size=400, margin=0.1):
        xs = [float(x[0]) for x in points]
        ys = [float(x[1]) for x in points]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        pad = margin * span
        cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
        half = span / 2 + pad
        self.box = (cx - half, cy - half, cx + half, cy + half)
        self.size = int(size)
        self.scale = self.size / (2 * half)

    def map(self, x, y):
        x0, y0, _, _ = self.box
        return (float(x) - x0) * self.scale, self.size - (float(y) - y0) * self.scale

    def clip_line(self, h):
        """ clip_line(h)

        End points (in pixels) of the part of the line p·x + q = 0 inside
        the box, or None when the line misses it.
        """
        a, b = float(h.p[0]), float(h.p[1])
        q = float(h.q)
        x0, y0, x1, y1 = self.box
        found = []
        if b != 0:
            for x in (x0, x1):
                y = -(a * x + q) / b
                if y0 <= y <= y1:
                    found.append((x, y))
        if a != 0:
            for y in (y0, y1):
                x = -(b * y + q) / a
                if x0 <= x <= x1:
                    found.append((x, y))
        if len(found) < 2:
            return None
        found.sort()
        return self.map(*found[0]), self.map(*found[-1])


def _styles(inst, assignment):
    """ Per point: (shape, color, hollow). """
    groups = assignment.groups if assignment is not None else [None] * inst.m
    out = []
    for i in range(inst.m):
        shape = "circle" if inst.is_blue(i) else "cross"
        g = groups[i]
        if assignment is None:
            out.append((shape, PALETTE[0] if inst.is_blue(i) else PALETTE[1], False))
        elif g is None:
            out.append((shape, OUTLIER, True))
        else:
            offset = 0 if inst.is_blue(i) else inst.blue_groups
            out.append((shape, PALETTE[(offset + g) % len(PALETTE)], False))
    return out


def _separators(inst, assignment):
    if assignment is None:
        return []
    witness = is_feasible(inst, assignment)
    if not witness:
        raise ValueError("The assignment is infeasible; nothing to plot as a solution.")
    return [h for _, h in sorted(witness.separators.items())]


def _check(inst):
    if inst.dimension != 2:
        raise ValueError(
            "Only planar instances can be plotted (got dimension %i)." % inst.dimension
        )


def svg_text(inst, assignment=None, size=400, radius=5):
    """ svg_text(inst, assignment=None, size=400, radius=5)

    The SVG picture of an instance and optionally an assignment with its
    separating lines.
    """
    _check(inst)
    canvas = Canvas(inst.points, size)
    r = float(radius)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%i" height="%i" '
        'viewBox="0 0 %i %i">' % (canvas.size, canvas.size, canvas.size, canvas.size),
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for n, h in enumerate(_separators(inst, assignment)):
        ends = canvas.clip_line(h)
        if ends is None:
            continue
        (ax, ay), (bx, by) = ends
        lines.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="%s" '
            'stroke-width="1.5" stroke-dasharray="6,4"/>'
            % (ax, ay, bx, by, LINE_COLORS[n % len(LINE_COLORS)])
        )
    for x, (shape, color, hollow) in zip(inst.points, _styles(inst, assignment)):
        px, py = canvas.map(x[0], x[1])
        if shape == "circle":
            fill = "none" if hollow else color
            lines.append(
                '<circle cx="%.2f" cy="%.2f" r="%.2f" fill="%s" stroke="%s" '
                'stroke-width="1.5"/>' % (px, py, r, fill, color)
            )
        else:
            width = 1.0 if hollow else 2.0
            for dx, dy in ((r, r), (r, -r)):
                lines.append(
                    '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="%s" '
                    'stroke-width="%.1f"/>' % (px - dx, py - dy, px + dx, py + dy, color, width)
                )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _dashed(draw, a, b, color, dash=6, gap=4):
    (ax, ay), (bx, by) = a, b
    length = ((bx - ax) ** 2 + (by - ay) ** 2) ** 0.5
    if length == 0:
        return
    ux, uy = (bx - ax) / length, (by - ay) / length
    t = 0.0
    while t < length:
        s = min(t + dash, length)
        draw.line([(ax + ux * t, ay + uy * t), (ax + ux * s, ay + uy * s)], fill=color, width=2)
        t = s + gap


def png_image(inst, assignment=None, size=400, radius=5):
    """ png_image(inst, assignment=None, size=400, radius=5)

    The same picture as svg_text() as a PIL image.
    """
    from PIL import Image, ImageDraw

    _check(inst)
    canvas = Canvas(inst.points, size)
    im = Image.new("RGB", (canvas.size, canvas.size), "white")
    draw = ImageDraw.Draw(im)
    for n, h in enumerate(_separators(inst, assignment)):
        ends = canvas.clip_line(h)
        if ends is not None:
            _dashed(draw, ends[0], ends[1], LINE_COLORS[n % len(LINE_COLORS)])
    r = float(radius)
    for x, (shape, color, hollow) in zip(inst.points, _styles(inst, assignment)):
        px, py = canvas.map(x[0], x[1])
        if shape == "circle":
            box = [px - r, py - r, px + r, py + r]
            draw.ellipse(box, fill=None if hollow else color, outline=color)
        else:
            width = 1 if hollow else 2
            draw.line([(px - r, py - r), (px + r, py + r)], fill=color, width=width)
            draw.line([(px - r, py + r), (px + r, py - r)], fill=color, width=width)
    return im


def write_plot(inst, uri, assignment=None, size=400, radius=5):
    """ write_plot(inst, uri, assignment=None, size=400, radius=5)

    Write the picture to a filename; the extension picks SVG or PNG.
    A text file object receives SVG.
    """
    if not isinstance(uri, str):
        uri.write(svg_text(inst, assignment, size, radius))
        return
    path = os.path.expanduser(uri)
    ext = os.path.splitext(path)[1].lower()
    if ext == ".png":
        png_image(inst, assignment, size, radius).save(path)
    elif ext == ".svg":
        with io.open(path, "w", encoding="utf-8") as f:
            f.write(svg_text(inst, assignment, size, radius))
    else:
        raise ValueError("Cannot plot to %r: use a .svg or .png file." % uri)
    logger.info("Wrote %s" % path)
