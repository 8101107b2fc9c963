"""Explicit deformation paths between C*-surfaces of equal Picard rank.

A path is a list of steps; each step is a degeneration diagram traversed
either from its general to its special fiber ("degenerate") or backwards
("deform").  Consecutive fibers agree up to isomorphism of toric models.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .degeneration import (
    DegenerationDiagram,
    diagram_from_dict,
    merge_slices_degeneration,
    special_fiber,
    toric_deformation_diagram,
    validate_diagram,
)
from .errors import InternalInconsistency, PreconditionViolated, RankMismatch, RankTooSmall
from .multidivisor import (
    INF,
    WeilDiv,
    is_toric,
    multidivisor_from_rays,
    nontrivial_points,
    picard_rank,
    to_fan,
)
from .picard_transport import degenerate_to_toric, lattice, transport_matrix
from .toric_core import (
    ToricSurface,
    as_surface,
    canonical_form,
    deformation_general_fiber,
    find_isomorphisms,
    hirzebruch_index,
    rays_from_b,
    toric_blowdown,
    toric_blowup,
)
from .toric_systems import ToricSystem, system_failures, tv_of

DEGENERATE = "degenerate"
DEFORM = "deform"


@dataclass(frozen=True)
class DeformationStep:
    diagram: DegenerationDiagram
    direction: str

    @property
    def source(self):
        return self.diagram.M if self.direction == DEGENERATE else special_fiber(self.diagram)

    @property
    def target(self):
        return special_fiber(self.diagram) if self.direction == DEGENERATE else self.diagram.M

    def to_dict(self):
        return {"diagram": self.diagram.to_dict(), "direction": self.direction}


@dataclass(frozen=True)
class DeformationPath:
    start: object
    end: object
    steps: tuple = field(default=())

    def __len__(self):
        return len(self.steps)

    def surfaces(self):
        """Start, then the target fiber of every step."""
        return [self.start] + [s.target for s in self.steps]

    def reversed(self):
        flip = {DEGENERATE: DEFORM, DEFORM: DEGENERATE}
        steps = tuple(DeformationStep(s.diagram, flip[s.direction]) for s in reversed(self.steps))
        return DeformationPath(self.end, self.start, steps)

    def to_dict(self):
        return {
            "start": _surface_dict(self.start),
            "end": _surface_dict(self.end),
            "steps": [s.to_dict() for s in self.steps],
        }


def _surface_dict(S):
    if isinstance(S, ToricSurface):
        return {"toric": list(S.b)}
    return S.to_dict()


def path_from_dict(data):
    from .multidivisor import multidivisor_from_dict

    def surf(x):
        return rays_from_b(tuple(x["toric"])) if "toric" in x else multidivisor_from_dict(x)

    steps = tuple(DeformationStep(diagram_from_dict(s["diagram"]), s["direction"]) for s in data["steps"])
    return DeformationPath(surf(data["start"]), surf(data["end"]), steps)


# ---------------------------------------------------------------- identification of fibers


def _frame(S):
    """Toric surface of ``S`` plus the prime divisor behind every ray index."""
    if isinstance(S, ToricSurface):
        return S, None
    model = to_fan(S)
    return model.surface, model


def same_surface(S, T):
    """Equal as objects, or both toric with isomorphic fans."""
    if S == T:
        return True
    if not (_toric(S) and _toric(T)):
        return False
    return canonical_form(_frame(S)[0].b) == canonical_form(_frame(T)[0].b)


def _toric(S):
    return isinstance(S, ToricSurface) or is_toric(S)


def identify(S, T):
    """Map classes of ``lattice(S)`` to ``lattice(T)`` along a fan isomorphism.

    Identity when the two are the same object.  The first fan isomorphism
    found is used, which keeps the choice deterministic.
    """
    if S == T:
        return lambda c: tuple(c)
    XS, mS = _frame(S)
    XT, mT = _frame(T)
    isos = find_isomorphisms(XS, XT)
    if not isos:
        raise InternalInconsistency("fibers %r and %r are not isomorphic" % (S, T))
    m = isos[0]
    LS, LT = lattice(S), lattice(T)

    def apply(c):
        D = LS.weil_of(c)
        vec = tuple(D.get(i, 0) for i in range(len(XS.b))) if mS is None else mS.weil_to_toric(D)
        out = {}
        for i, x in enumerate(vec):
            if x:
                key = m[i] if mT is None else mT.labels[m[i]]
                out[key] = out.get(key, 0) + x
        return LT.class_of(WeilDiv(out))

    return apply


# ---------------------------------------------------------------- rank three and two


def _z_family(b0):
    return rays_from_b((b0, 0, 1 - b0, 1, 1))


def _deformation_leg(Z, X):
    """Diagram with special fiber ``Z`` and general fiber isomorphic to ``X``, or None."""
    target = canonical_form(X.b)
    b = Z.b
    n = len(b)
    for k in range(n):
        for refl in (False, True):
            c = b[k:] + b[:k]
            if refl:
                c = (c[0],) + tuple(reversed(c[1:]))
            if c[0] >= 0:
                continue
            rot = rays_from_b(c)
            for r in range(0, -c[0] + 1):
                if canonical_form(deformation_general_fiber(rot, r).b) == target:
                    return toric_deformation_diagram(rot, r)
    return None


def _via_common_special(X, Xp, candidates):
    for Z in candidates:
        legs = []
        for Y in (X, Xp):
            if canonical_form(Y.b) == canonical_form(Z.b):
                legs.append(None)
                continue
            d = _deformation_leg(Z, Y)
            if d is None:
                break
            legs.append(d)
        else:
            steps = []
            if legs[0] is not None:
                steps.append(DeformationStep(legs[0], DEGENERATE))
            if legs[1] is not None:
                steps.append(DeformationStep(legs[1], DEFORM))
            return DeformationPath(X, Xp, tuple(steps))
    return None


def _rank3_b0(X):
    """Both values of ``b0`` with ``X = tv(b0, 0, 1-b0, 1, 1)``."""
    cf = canonical_form(X.b)
    return sorted(b0 for b0 in range(-max(map(abs, X.b)) - 1, max(map(abs, X.b)) + 2) if canonical_form(_z_family(b0).b) == cf)


def _connect_rank3(X, Xp):
    b0s, b0ps = _rank3_b0(X), _rank3_b0(Xp)
    if not b0s or not b0ps:
        raise InternalInconsistency("rank-3 surface outside the base family")
    for b0 in b0s:
        for b0p in b0ps:
            if (b0 - b0p) % 2:
                continue
            m = max(abs(b0), abs(b0p))
            path = _via_common_special(X, Xp, [_z_family(-m - 2 * k) for k in range(3) if m + 2 * k > 0])
            if path is not None:
                return path
    raise InternalInconsistency("no common rank-3 degeneration found")


def _connect_rank2(X, Xp):
    a, ap = hirzebruch_index(X), hirzebruch_index(Xp)
    if (a - ap) % 2:
        raise RankTooSmall("F_%d and F_%d have different parity and are not deformation connected" % (a, ap))
    top = max(a, ap, 2)
    path = _via_common_special(X, Xp, [rays_from_b((0, top, 0, -top))])
    if path is None:
        raise InternalInconsistency("no common Hirzebruch degeneration found")
    return path


# ---------------------------------------------------------------- ray insertion


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0)
    g, u, v = _egcd(b, a % b)
    return (g, v, u - (a // b) * v)


def bridge_surface(S, j):
    """Common deformation of the two blowups of ``S`` at the fixed points next to ray ``j``.

    Slices of the fan cut along ``<rho_j, R> = 0`` sit at 0 and inf, and a
    fresh slice ``{0, 1}`` is added at 1.  Returns ``(M, fresh_point)``.
    """
    S = as_surface(S)
    rays = rays_from_b(S.b).rays
    n = len(rays)
    r0, r1 = rays[(j - 1) % n], rays[j % n]
    x, y = r1
    R = (-y, x)
    if R[0] * r0[0] + R[1] * r0[1] >= 0:
        R = (y, -x)
    g, u, v = _egcd(x, y)
    c = (u * g, v * g)
    M, _ = multidivisor_from_rays(rays, R, c)
    s = Fraction(1)
    return M.replace_slice(s, (0, 1)), s


def bridge_legs(S, j):
    """Diagrams realizing the two blowups of ``S`` next to ray ``j`` as special fibers.

    Returns ``(M, top, bottom)``: ``top`` degenerates ``M`` to the blowup
    between rays ``j`` and ``j+1``, ``bottom`` to the one between ``j-1`` and
    ``j``.  A leg is None when its slice is a single integral vertex; then
    ``M`` is itself that blowup.
    """
    M, s = bridge_surface(S, j)
    ess = nontrivial_points(M)
    legs = []
    for P in (Fraction(0), INF):
        legs.append(merge_slices_degeneration(M, s, P) if P in ess else None)
    return M, legs[0], legs[1]


def _bridge_path(S, j, forward):
    """Path from blowup(S, j-1) to blowup(S, j - 1 + 2*forward - 1 ...) through the bridge.

    ``forward`` goes from the bottom blowup to the top one.
    """
    M, top, bottom = bridge_legs(S, j)
    n = len(S.b)
    lo, hi = toric_blowup(S, (j - 1) % n), toric_blowup(S, j % n)
    a, b = (bottom, top) if forward else (top, bottom)
    steps = []
    if a is not None:
        steps.append(DeformationStep(a, DEFORM))
    if b is not None:
        steps.append(DeformationStep(b, DEGENERATE))
    start, end = (lo, hi) if forward else (hi, lo)
    return DeformationPath(start, end, tuple(steps))


def _bridge_moves(X):
    """Neighbours of ``X`` under one ray-insertion bridge: ``(Y, S, j, forward)``."""
    n = len(X.b)
    out = []
    for k in range(n):
        if X.b[k] != 1:
            continue
        try:
            S = toric_blowdown(X, k)
        except Exception:
            continue
        m = n - 1
        i = (k - 1) % m  # X = toric_blowup(S, i) up to rotation
        # bridge at ray i: bottom = blowup(S, i-1), top = blowup(S, i) = X
        out.append((toric_blowup(S, (i - 1) % m), S, i, False))
        # bridge at ray i+1: bottom = blowup(S, i) = X, top = blowup(S, i+1)
        out.append((toric_blowup(S, (i + 1) % m), S, (i + 1) % m, True))
    return out


def _search(X, Xp, slack=2):
    """Breadth-first search over bridge moves between canonical fan sequences."""
    goal = canonical_form(Xp.b)
    bound = max(max(map(abs, X.b)), max(map(abs, Xp.b))) + slack
    start = canonical_form(X.b)
    prev = {start: None}
    queue = deque([rays_from_b(start)])
    while queue:
        Y = queue.popleft()
        cy = canonical_form(Y.b)
        if cy == goal:
            break
        for Z, S, j, fwd in _bridge_moves(Y):
            cz = canonical_form(Z.b)
            if cz in prev or max(map(abs, cz)) > bound:
                continue
            prev[cz] = (cy, S, j, fwd)
            queue.append(rays_from_b(cz))
    if goal not in prev:
        return None
    moves = []
    cur = goal
    while prev[cur] is not None:
        cy, S, j, fwd = prev[cur]
        moves.append((S, j, fwd))
        cur = cy
    moves.reverse()
    return moves


def _connect_high(X, Xp):
    for slack in (1, 2, 4):
        moves = _search(X, Xp, slack)
        if moves is not None:
            break
    else:
        raise InternalInconsistency("bridge search failed between %r and %r" % (X, Xp))
    steps = []
    for S, j, fwd in moves:
        steps.extend(_bridge_path(S, j, fwd).steps)
    return DeformationPath(X, Xp, tuple(steps))


# ---------------------------------------------------------------- public API


def connect_toric(X, Xp):
    """Deformation path between two smooth toric surfaces of equal rank."""
    X, Xp = as_surface(X), as_surface(Xp)
    if X.picard_number != Xp.picard_number:
        raise RankMismatch("Picard ranks %d and %d differ" % (X.picard_number, Xp.picard_number))
    if canonical_form(X.b) == canonical_form(Xp.b):
        return DeformationPath(X, Xp, ())
    rho = X.picard_number
    if rho == 2:
        path = _connect_rank2(X, Xp)
    elif rho == 3:
        path = _connect_rank3(X, Xp)
    else:
        path = _connect_high(X, Xp)
    check_path(path)
    return path


def connect(M, Mp):
    """Path between two smooth C*-surfaces (multidivisors or toric surfaces)."""
    left, XL = _to_toric(M)
    right, XR = _to_toric(Mp)
    if XL.picard_number != XR.picard_number:
        raise RankMismatch("Picard ranks %d and %d differ" % (XL.picard_number, XR.picard_number))
    middle = connect_toric(XL, XR)
    steps = [DeformationStep(d, DEGENERATE) for d in left] + list(middle.steps)
    steps += [DeformationStep(d, DEFORM) for d in reversed(right)]
    path = DeformationPath(M, Mp, tuple(steps))
    check_path(path)
    return path


def _to_toric(M):
    if isinstance(M, ToricSurface):
        return [], M
    chain, X = degenerate_to_toric(M)
    return chain, X


def check_path(path):
    """Validate every diagram and the chaining of consecutive fibers."""
    cur = path.start
    rank = _rank(cur)
    for k, step in enumerate(path.steps):
        rep = validate_diagram(step.diagram)
        if not rep.ok:
            raise InternalInconsistency("step %d: %s" % (k, "; ".join(rep.failures)))
        if not same_surface(cur, step.source):
            raise InternalInconsistency("step %d does not start at the previous fiber" % k)
        cur = step.target
        if _rank(cur) != rank:
            raise InternalInconsistency("step %d changes the Picard rank" % k)
    if not same_surface(cur, path.end):
        raise InternalInconsistency("path does not end at its endpoint")
    return True


def _rank(S):
    return S.picard_number if isinstance(S, ToricSurface) else picard_rank(S)


def transport_along_path(path, A):
    """Images of a toric system on ``path.start`` on every fiber of the path."""
    if not isinstance(A, ToricSystem):
        raise PreconditionViolated("expected a ToricSystem")
    if not same_surface(A.surface, path.start):
        raise PreconditionViolated("system does not live on the start of the path")
    tv0 = tv_of(A)
    out = [A]
    cur = A
    for k, step in enumerate(path.steps):
        src = step.source
        f = identify(cur.surface, src)
        ent = tuple(f(a) for a in cur.entries)
        tm = transport_matrix(step.diagram)
        if step.direction == DEGENERATE:
            ent = tuple(tm.apply(a) for a in ent)
        else:
            ent = tuple(tm.inverse(a) for a in ent)
        cur = ToricSystem(step.target, ent)
        fails = system_failures(cur.surface, ent)
        if fails:
            raise InternalInconsistency("step %d: image is not a toric system: %s" % (k, "; ".join(fails)))
        if tv_of(cur) != tv0:
            raise InternalInconsistency("step %d: tv changed" % k)
        out.append(cur)
    return out


def shorten(path):
    """Greedy cancellation of a step immediately undone by the next one."""
    steps = list(path.steps)
    changed = True
    while changed:
        changed = False
        for k in range(len(steps) - 1):
            a, b = steps[k], steps[k + 1]
            if a.diagram == b.diagram and a.direction != b.direction:
                del steps[k : k + 2]
                changed = True
                break
    return DeformationPath(path.start, path.end, tuple(steps))
