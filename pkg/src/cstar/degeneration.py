"""Degeneration diagrams of C*-surfaces.

A diagram is a multidivisor together with two designated points ``p0`` and
``ps`` and a bipartite graph between the vertices of their slices.  The
special fiber replaces the slice at ``p0`` by the Minkowski sums along the
edges and forgets the slice at ``ps``.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbiguousEdge,
    BothEndpointsHighDegree,
    InvalidDiagram,
    NotMinusOne,
    NotSmoothAfterBlowup,
    ParseError,
    PreconditionViolated,
)
from .multidivisor import (
    BULLET,
    CIRC,
    INF,
    DMinus,
    DPlus,
    Multidivisor,
    VertexDiv,
    beyond,
    fmt_point,
    fmt_rat,
    is_smooth,
    mediant,
    multidivisor_from_dict,
    nontrivial_points,
    parse_point,
    validate,
)
from .toric_core import Report

# ---------------------------------------------------------------- data type


@dataclass(frozen=True)
class DegenerationDiagram:
    M: Multidivisor
    p0: object
    ps: object
    edges: frozenset

    @staticmethod
    def make(M, p0, ps, edges):
        return DegenerationDiagram(M, p0, ps, frozenset((Fraction(a), Fraction(b)) for a, b in edges))

    @property
    def slice0(self):
        return self.M.slice(self.p0)

    @property
    def slices(self):
        return self.M.slice(self.ps)

    def sorted_edges(self):
        return sorted(self.edges)

    def degree0(self):
        deg = defaultdict(int)
        for a, _ in self.edges:
            deg[a] += 1
        return deg

    def degrees(self):
        deg = defaultdict(int)
        for _, b in self.edges:
            deg[b] += 1
        return deg

    def to_dict(self):
        s0, ss = list(self.slice0), list(self.slices)
        d = self.M.to_dict()
        d["p0"] = fmt_point(self.p0)
        d["ps"] = fmt_point(self.ps)
        d["edges"] = [[s0.index(a), ss.index(b)] for a, b in self.sorted_edges()]
        return d

    def __repr__(self):
        es = ",".join("(%s,%s)" % (fmt_rat(a), fmt_rat(b)) for a, b in self.sorted_edges())
        return "Diagram(%r; p0=%s, ps=%s; %s)" % (self.M, fmt_point(self.p0), fmt_point(self.ps), es)


def diagram_from_dict(d):
    M = multidivisor_from_dict(d)
    try:
        p0 = parse_point(d.get("p0", "0"))
        ps = parse_point(d.get("ps", INF))
        s0, ss = M.slice(p0), M.slice(ps)
        edges = [(s0[i], ss[j]) for i, j in d["edges"]]
    except (KeyError, IndexError, TypeError) as exc:
        raise ParseError("malformed diagram: %s" % exc) from None
    return DegenerationDiagram.make(M, p0, ps, edges)


# ---------------------------------------------------------------- validation


def _components(d):
    nodes = [("0", v) for v in d.slice0] + [("s", w) for w in d.slices]
    adj = defaultdict(set)
    for a, b in d.edges:
        adj[("0", a)].add(("s", b))
        adj[("s", b)].add(("0", a))
    seen, comps = set(), 0
    for n in nodes:
        if n in seen:
            continue
        comps += 1
        stack = [n]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
    return comps


def validate_diagram(d):
    failures = []
    rep = validate(d.M)
    failures.extend(rep.failures)
    if d.p0 == d.ps:
        failures.append("designated points coincide")
    s0, ss = set(d.slice0), set(d.slices)
    for a, b in d.edges:
        if a not in s0 or b not in ss:
            failures.append("edge (%s,%s) not on slice vertices" % (fmt_rat(a), fmt_rat(b)))
    if not failures:
        deg0, degs = d.degree0(), d.degrees()
        for v in d.slice0:
            if deg0[v] == 0:
                failures.append("vertex %s at p0 is isolated" % fmt_rat(v))
            elif deg0[v] > 1 and v.denominator != 1:
                failures.append("vertex %s at p0 has degree > 1 but is not integral" % fmt_rat(v))
        for w in d.slices:
            if degs[w] == 0:
                failures.append("vertex %s at ps is isolated" % fmt_rat(w))
            elif degs[w] > 1 and w.denominator != 1:
                failures.append("vertex %s at ps has degree > 1 but is not integral" % fmt_rat(w))
        es = d.sorted_edges()
        for i, (a, b) in enumerate(es):
            for a2, b2 in es[i + 1 :]:
                if (a < a2 and b > b2) or (a > a2 and b < b2):
                    failures.append("edges (%s,%s) and (%s,%s) cross" % tuple(map(fmt_rat, (a, b, a2, b2))))
        if _components(d) != 1:
            failures.append("graph is not connected")
    # a star around a single integral vertex only shifts the other slice
    trivial = len(d.edges) == 1 or any(len(vs) == 1 and vs[0].denominator == 1 for vs in (d.slice0, d.slices))
    return Report(not failures, failures, {"trivial": trivial})


def _require_valid(d):
    rep = validate_diagram(d)
    if not rep.ok:
        raise InvalidDiagram("; ".join(rep.failures))


def special_fiber(d):
    _require_valid(d)
    sums = sorted({a + b for a, b in d.edges})
    M = d.M.remove_slice(d.ps).replace_slice(d.p0, sums)
    return M


def general_fiber(d):
    return d.M


def edge_sum_map(d):
    """Map each special-fiber vertex at ``p0`` to its edge."""
    return {a + b: (a, b) for a, b in d.edges}


# ---------------------------------------------------------------- constructors


def hirzebruch_diagram(r, alpha, alternate=False, p0=Fraction(0), ps=INF):
    """The family with general fiber F_r and special fiber F_{r+2 alpha}.

    ``alternate`` selects the graph whose two 0 vertices have degree one;
    it only exists for r = 0, alpha = 1.
    """
    if r < 0 or alpha <= 0:
        raise PreconditionViolated("need r >= 0 and alpha > 0")
    a, b = Fraction(-1, r + alpha), Fraction(1, alpha)
    M = Multidivisor.make({p0: [a, 0], ps: [0, b]})
    zero = Fraction(0)
    if alternate:
        if not (r == 0 and alpha == 1):
            raise PreconditionViolated("alternate graph exists only for r = 0, alpha = 1")
        edges = [(a, zero), (a, b), (zero, b)]
    else:
        edges = [(a, zero), (zero, zero), (zero, b)]
    d = DegenerationDiagram.make(M, p0, ps, edges)
    _require_valid(d)
    return d


def toric_deformation_diagram(X, r):
    """Diagram realizing the toric deformation of ``X`` with parameter ``r``.

    The single slice of ``from_fan(X, 0, r)`` is split at 0.
    """
    from .multidivisor import from_fan

    b = tuple(X.b if hasattr(X, "b") else X)
    if len(b) <= 3 or b[0] >= 0 or not 0 <= r <= -b[0]:
        raise PreconditionViolated("need b0 < 0, l > 2 and 0 <= r <= -b0")
    M, _ = from_fan(X, 0, r)
    p0, ps = Fraction(0), INF
    S = M.slice(p0)
    m0 = [v for v in S if v >= 0]
    ms = [v for v in S if v <= 0]
    G = Multidivisor.make({p0: m0, ps: ms}, M.minus, M.plus)
    zero = Fraction(0)
    edges = [(v, zero) for v in m0] + [(zero, w) for w in ms]
    d = DegenerationDiagram.make(G, p0, ps, edges)
    _require_valid(d)
    return d


def leftmost(M, P):
    return M.slice(P)[0]


def rightmost(M, P):
    return M.slice(P)[-1]


def merge_slices_degeneration(M, P, Q):
    """Double star diagram merging the slices at ``P`` and ``Q``."""
    ess = nontrivial_points(M)
    if P == Q or P not in ess or Q not in ess:
        raise PreconditionViolated("P and Q must be distinct nontrivial points")
    vP, vQ = leftmost(M, P), rightmost(M, Q)
    if vP.denominator != 1 or vQ.denominator != 1:
        raise PreconditionViolated("leftmost(M_P) and rightmost(M_Q) must be integral")
    edges = {(v, vQ) for v in M.slice(P)} | {(vP, w) for w in M.slice(Q)}
    d = DegenerationDiagram.make(M, P, Q, edges)
    _require_valid(d)
    return d


def mergeable_pairs(M):
    ess = nontrivial_points(M)
    return [
        (P, Q)
        for P in ess
        for Q in ess
        if P != Q and leftmost(M, P).denominator == 1 and rightmost(M, Q).denominator == 1
    ]


# ---------------------------------------------------------------- blowdown


def _self_intersection(M, E):
    from .picard_transport import intersect, prime_class

    return intersect(M, prime_class(M, E), prime_class(M, E))


def diagram_blowdown(d, E, return_exceptional=False):
    """Blow down the invariant (-1)-curve ``E`` of the special fiber.

    With ``return_exceptional`` also returns the general-fiber divisor that
    is contracted alongside.
    """
    _require_valid(d)
    S = special_fiber(d)
    from .multidivisor import invariant_prime_divisors

    if E not in invariant_prime_divisors(S) or _self_intersection(S, E) != -1:
        raise NotMinusOne("%r is not an invariant (-1)-curve of the special fiber" % (E,))
    M = d.M
    if E in (DPlus, DMinus):
        side = "plus" if E == DPlus else "minus"
        out = DegenerationDiagram(M.with_marker(side, CIRC), d.p0, d.ps, d.edges)
        Es = E
    elif E.kind == "vertex" and E.point != d.p0:
        verts = [v for v in M.slice(E.point) if v != E.v]
        out = DegenerationDiagram(M.replace_slice(E.point, verts), d.p0, d.ps, d.edges)
        Es = E
    elif E.kind == "vertex":
        a, b = edge_sum_map(d)[E.v]
        deg0, degs = d.degree0(), d.degrees()
        edges = d.edges - {(a, b)}
        if not edges:
            raise PreconditionViolated("cannot blow down the only edge of a diagram")
        if deg0[a] == 1:
            M2 = M.replace_slice(d.p0, [v for v in d.slice0 if v != a])
            Es = VertexDiv(d.p0, a)
        elif degs[b] == 1:
            M2 = M.replace_slice(d.ps, [w for w in d.slices if w != b])
            Es = VertexDiv(d.ps, b)
        else:
            raise BothEndpointsHighDegree("edge (%s,%s)" % (fmt_rat(a), fmt_rat(b)))
        out = DegenerationDiagram(M2, d.p0, d.ps, frozenset(edges))
    else:
        raise NotMinusOne("generic fiber has self-intersection 0")
    _require_valid(out)
    return (out, Es) if return_exceptional else out


# ---------------------------------------------------------------- blowup


@dataclass(frozen=True)
class ToggleMarker:
    side: str


@dataclass(frozen=True)
class InsertVertex:
    point: object
    v: Fraction

    def __init__(self, point, v):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "v", Fraction(v))


def _partner(d, at_p0, v):
    """Opposite vertex for a new vertex ``v`` inserted at ``p0`` (or ``ps``)."""
    own = list(d.slice0 if at_p0 else d.slices)
    nbr = defaultdict(set)
    for a, b in d.edges:
        if at_p0:
            nbr[a].add(b)
        else:
            nbr[b].add(a)
    lower = [u for u in own if u < v]
    upper = [u for u in own if u > v]
    if lower and upper:
        common = nbr[lower[-1]] & nbr[upper[0]]
        if len(common) != 1:
            raise AmbiguousEdge("%d candidate partners for %s" % (len(common), fmt_rat(v)))
        return next(iter(common))
    if upper:
        return min(nbr[upper[0]])
    return max(nbr[lower[-1]])


def diagram_blowup(d, move):
    _require_valid(d)
    M = d.M
    edges = set(d.edges)
    if isinstance(move, ToggleMarker):
        if M.marker(move.side) != CIRC:
            raise PreconditionViolated("marker on %s side is already bullet" % move.side)
        M2 = M.with_marker(move.side, BULLET)
    elif isinstance(move, InsertVertex):
        P, v = move.point, move.v
        cur = M.slice(P)
        if v in cur:
            raise PreconditionViolated("vertex %s already present" % fmt_rat(v))
        if P in (d.p0, d.ps):
            w = _partner(d, P == d.p0, v)
            edges.add((v, w) if P == d.p0 else (w, v))
            M2 = M.replace_slice(P, list(cur) + [v])
        elif P in M.points():
            M2 = M.replace_slice(P, list(cur) + [v])
        else:
            M2 = M.replace_slice(P, [Fraction(0), v])
    else:
        raise PreconditionViolated("unknown move %r" % (move,))
    out = DegenerationDiagram(M2, d.p0, d.ps, frozenset(edges))
    rep = validate_diagram(out)
    if not rep.ok:
        raise NotSmoothAfterBlowup("; ".join(rep.failures))
    if not is_smooth(M2) or not is_smooth(special_fiber(out)):
        raise NotSmoothAfterBlowup("resulting surface is singular")
    return out


def candidate_moves(d):
    """Blowup moves worth trying; each still has to pass the smoothness gate."""
    M = d.M
    moves = []
    for side in ("minus", "plus"):
        if M.marker(side) == CIRC:
            moves.append(ToggleMarker(side))
    pts = list(dict.fromkeys([d.p0, d.ps] + M.points()))
    for P in pts:
        vs = M.slice(P)
        for a, b in zip(vs, vs[1:]):
            moves.append(InsertVertex(P, mediant(a, b)))
        for w in beyond(vs[0], False):
            moves.append(InsertVertex(P, w))
        for w in beyond(vs[-1], True):
            moves.append(InsertVertex(P, w))
    fresh = M.fresh_point()
    while fresh in (d.p0, d.ps):
        fresh += 1
    moves.extend([InsertVertex(fresh, 1), InsertVertex(fresh, -1)])
    return moves


def legal_moves(d):
    out = []
    for mv in candidate_moves(d):
        try:
            out.append((mv, diagram_blowup(d, mv)))
        except (NotSmoothAfterBlowup, AmbiguousEdge, PreconditionViolated):
            pass
    return out


def exceptional_of_move(d, move, blown):
    """The special-fiber exceptional divisor created by ``move``."""
    if isinstance(move, ToggleMarker):
        return DPlus if move.side == "plus" else DMinus
    if move.point == d.p0:
        for a, b in blown.edges:
            if a == move.v:
                return VertexDiv(d.p0, a + b)
    if move.point == d.ps:
        for a, b in blown.edges:
            if b == move.v:
                return VertexDiv(d.p0, a + b)
    return VertexDiv(move.point, move.v)
