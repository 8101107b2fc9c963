"""Dimension data of endomorphism algebras of exceptional sequences.

Everything here is counted: hom spaces between line bundles are lattice
point counts on toric fibers.  Relations of the Hirzebruch quiver family are
carried along as labels only.
"""

from dataclasses import dataclass, field

from .degeneration import hirzebruch_diagram, special_fiber
from .errors import InternalInconsistency, NotToric, PreconditionViolated
from .multidivisor import is_toric
from .toric_core import ToricSurface
from .toric_systems import (
    ToricSystem,
    _interval_sums,
    catalog_A,
    class_cohomology,
    identify_catalog,
    is_strongly_exceptional,
    make_system,
    sequence_from_system,
    transport_system,
    transport_system_inverse,
    vsub,
)


def _require_toric(S):
    if not (isinstance(S, ToricSurface) or is_toric(S)):
        raise NotToric("hom spaces are counted on toric surfaces only")


def h0_class(S, c):
    return class_cohomology(S, c)[0]


def hom_matrix(S, E):
    """``H[i][j] = h0(E_j - E_i)`` for a sequence of classes on a toric surface."""
    _require_toric(S)
    n = len(E)
    return [[h0_class(S, vsub(E[j], E[i])) for j in range(n)] for i in range(n)]


def backward_homs(H):
    """Positions ``(i, j)`` with ``j < i`` and a nonzero morphism."""
    return [(i, j) for i in range(len(H)) for j in range(i) if H[i][j]]


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class QuiverData:
    nodes: int
    arrows: tuple
    total_dim: int
    hop_dims: tuple = field(default=())
    relations: tuple = field(default=())

    def family_counts(self):
        out = {}
        for a in self.arrows:
            fam = a.label.split("_")[0]
            out[fam] = out.get(fam, 0) + 1
        return out

    def to_dict(self):
        return {
            "nodes": self.nodes,
            "arrows": [{"source": a.source, "target": a.target, "label": a.label} for a in self.arrows],
            "total_dim": self.total_dim,
            "hop_dims": list(self.hop_dims),
            "relations": list(self.relations),
        }

    def to_dot(self):
        lines = ["digraph quiver {", "  rankdir=LR;"]
        lines += ["  n%d [label=\"%d\"];" % (k, k) for k in range(self.nodes)]
        lines += ['  n%d -> n%d [label="%s"];' % (a.source, a.target, a.label) for a in self.arrows]
        lines.append("}")
        return "\n".join(lines) + "\n"


def gamma_dim(S, A):
    """``sum_{j <= k < n} h0(A_j + ... + A_k) + n`` for a toric system ``A``."""
    _require_toric(S)
    entries = A.entries if isinstance(A, ToricSystem) else A
    return sum(h0_class(S, c) for _, _, c in _interval_sums(list(entries))) + len(entries)


def quiver_of(S, A):
    """Generic quiver data: one arrow family per adjacent hop."""
    _require_toric(S)
    E = sequence_from_system(ToricSystem(S, tuple(A.entries)))
    hops = tuple(h0_class(S, vsub(E[k + 1], E[k])) for k in range(len(E) - 1))
    arrows = tuple(Arrow(k, k + 1, "x%d_%d" % (k, m)) for k, h in enumerate(hops) for m in range(h))
    return QuiverData(len(E), arrows, gamma_dim(S, A), hops)


def _family_arrows(r, alpha, i):
    out = [Arrow(0, 1, "a_1"), Arrow(0, 1, "a_2")]
    out += [Arrow(1, 2, "b_%d" % j) for j in range(-i, 1)]
    out += [Arrow(1, 2, "c_%d" % j) for j in range(-i + alpha, 1)]
    out += [Arrow(1, 2, "d_%d" % j) for j in range(1, r + alpha + 1)]
    out += [Arrow(2, 3, "e_1"), Arrow(2, 3, "e_2")]
    return tuple(out)


def hirzebruch_family_systems(r, alpha, i):
    """Diagram, general-fiber system and special-fiber system of the family."""
    d = hirzebruch_diagram(r, alpha)
    As = catalog_A(d.M, i)
    A0 = transport_system(d, As)
    ident = identify_catalog(A0)
    if ident is None or ident[0] != "A" or ident[1] != i - alpha:
        raise InternalInconsistency("special-fiber system is not the expected catalog member")
    return d, As, A0


@dataclass(frozen=True)
class QuiverFamily:
    general: QuiverData
    special: QuiverData
    constant: bool

    def to_dict(self):
        return {"general": self.general.to_dict(), "special": self.special.to_dict(), "constant": self.constant}


def hirzebruch_quiver_family(r, alpha, i):
    """Quivers of the family over the Hirzebruch degeneration at ``s != 0`` and ``s = 0``.

    With ``0 < alpha < i`` the long hop carries the arrow families ``b``, ``c``
    and ``d``.  For ``i < -2`` the family is constant and the generic quiver
    is returned on both fibers.
    """
    if r < 0 or alpha <= 0 or not (alpha < i or i < -2):
        raise PreconditionViolated("need r >= 0 and either 0 < alpha < i or i < -2")
    d, As, A0 = hirzebruch_family_systems(r, alpha, i)
    qs, q0 = quiver_of(d.M, As), quiver_of(special_fiber(d), A0)
    constant = qs.hop_dims == q0.hop_dims and qs.total_dim == q0.total_dim
    if i < -2:
        return QuiverFamily(qs, q0, constant)
    arrows = _family_arrows(r, alpha, i)
    rel_s = ("c_j = (d_j - b_j)/s",)
    rel_0 = ("b_j = d_j",)
    gen = QuiverData(4, arrows, qs.total_dim, qs.hop_dims, rel_s)
    spe = QuiverData(4, arrows, q0.total_dim, q0.hop_dims, rel_0)
    for q in (gen, spe):
        if sum(1 for a in arrows if a.source == 1) != q.hop_dims[1]:
            raise InternalInconsistency("arrow partition does not match the long hop")
    if gen.total_dim != spe.total_dim:
        raise InternalInconsistency("family is not flat")
    return QuiverFamily(gen, spe, constant)


def endo_dim_along(d, A):
    """``(dim at s=0, dim at s!=0)`` of the algebras of ``A`` and its inverse transport."""
    S0 = special_fiber(d)
    _require_toric(S0)
    _require_toric(d.M)
    A = A if isinstance(A, ToricSystem) else make_system(S0, A)
    As = transport_system_inverse(d, A)
    dim0, dims = gamma_dim(S0, A), gamma_dim(d.M, As)
    if is_strongly_exceptional(A) and is_strongly_exceptional(As) and dim0 != dims:
        raise InternalInconsistency("strongly exceptional on both fibers but dimensions differ")
    return dim0, dims
