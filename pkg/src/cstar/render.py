"""SVG drawings of multidivisors, degeneration diagrams and paths.

Slices are horizontal number lines with a tick per vertex; markers are
circles at the line ends (filled for bullet).  Output is deterministic.
"""

from fractions import Fraction

from .degeneration import DegenerationDiagram
from .multidivisor import BULLET, Multidivisor, fmt_point, fmt_rat

WIDTH = 480
ROW = 56
PAD = 40


def _span(values):
    vals = list(values) or [Fraction(0)]
    lo, hi = min(vals + [Fraction(0)]), max(vals + [Fraction(0)])
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    return lo - Fraction(1, 2), hi + Fraction(1, 2)


def _x(v, span):
    lo, hi = span
    return PAD + float((Fraction(v) - lo) / (hi - lo)) * (WIDTH - 2 * PAD)


def _num(x):
    return ("%.2f" % x).rstrip("0").rstrip(".")


def _line(y, label, verts, span, out):
    out.append('<line x1="%d" y1="%s" x2="%d" y2="%s" stroke="black"/>' % (PAD, _num(y), WIDTH - PAD, _num(y)))
    out.append('<text x="4" y="%s" font-size="11">%s</text>' % (_num(y + 4), label))
    for v in verts:
        x = _num(_x(v, span))
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="black"/>' % (x, _num(y - 5), x, _num(y + 5)))
        out.append('<text x="%s" y="%s" font-size="10" text-anchor="middle">%s</text>' % (x, _num(y - 8), fmt_rat(v)))


def _markers(M, y, out):
    for side, x in (("minus", PAD - 10), ("plus", WIDTH - PAD + 10)):
        fill = "black" if M.marker(side) == BULLET else "white"
        out.append('<circle cx="%d" cy="%s" r="4" stroke="black" fill="%s"/>' % (x, _num(y), fill))


def _multidivisor_body(M, y0, out):
    span = _span(v for _, vs in M.slices for v in vs)
    rows = M.slices or ((Fraction(0), (Fraction(0),)),)
    for k, (p, vs) in enumerate(rows):
        _line(y0 + ROW * (k + 0.5), fmt_point(p), vs, span, out)
    _markers(M, y0 + ROW * 0.5 * len(rows), out)
    return ROW * len(rows)


def _diagram_body(d, y0, out):
    verts = list(d.slice0) + list(d.slices) + [v for _, vs in d.M.slices for v in vs]
    span = _span(verts)
    ya, yb = y0 + ROW * 0.5, y0 + ROW * 1.5
    for a, b in d.sorted_edges():
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="gray"/>'
            % (_num(_x(a, span)), _num(ya), _num(_x(b, span)), _num(yb))
        )
    _line(ya, fmt_point(d.p0), d.slice0, span, out)
    _line(yb, fmt_point(d.ps), d.slices, span, out)
    rest = [(p, vs) for p, vs in d.M.slices if p not in (d.p0, d.ps)]
    for k, (p, vs) in enumerate(rest):
        _line(y0 + ROW * (k + 2.5), fmt_point(p), vs, span, out)
    _markers(d.M, y0 + ROW, out)
    return ROW * (2 + len(rest))


def _wrap(body, height):
    head = '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">' % (
        WIDTH,
        height,
        WIDTH,
        height,
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>'] + body + ["</svg>"]) + "\n"


def render(obj):
    """SVG text for a multidivisor, a diagram, or a deformation path."""
    out = []
    if isinstance(obj, Multidivisor):
        h = _multidivisor_body(obj, 0, out)
        return _wrap(out, int(h))
    if isinstance(obj, DegenerationDiagram):
        h = _diagram_body(obj, 0, out)
        return _wrap(out, int(h))
    steps = getattr(obj, "steps", None)
    if steps is None:
        raise TypeError("cannot render %r" % type(obj).__name__)
    y = 0
    for k, step in enumerate(steps):
        out.append('<g class="panel" id="step%d">' % k)
        out.append('<text x="4" y="%d" font-size="12">step %d: %s</text>' % (y + 14, k, step.direction))
        y += 20
        y += _diagram_body(step.diagram, y, out)
        out.append("</g>")
    return _wrap(out, int(max(y, ROW)))
