"""Small exact integer linear algebra helpers."""

from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import InternalInconsistency


def cokernel(relations, ngens):
    """Free quotient ``Z^ngens / span(relations)``.

    Returns ``(proj, lift)`` where ``proj`` is an ``ngens x m`` integer matrix
    (a row vector ``x`` maps to ``x @ proj``) and ``lift`` is an ``m x ngens``
    matrix giving a section.  Raises if the quotient has torsion.
    """
    rows = [list(r) for r in relations if any(r)]
    if not rows:
        ident = [[int(i == j) for j in range(ngens)] for i in range(ngens)]
        return ident, ident
    A = Matrix(rows)
    S, U, V = smith_normal_decomp(A, domain=ZZ)
    k = 0
    for i in range(min(S.shape)):
        d = S[i, i]
        if d == 0:
            break
        if abs(d) != 1:
            raise InternalInconsistency("relation lattice is not saturated (torsion %s)" % d)
        k += 1
    Vinv = V.inv()
    proj = [[int(V[i, j]) for j in range(k, ngens)] for i in range(ngens)]
    lift = [[int(Vinv[i, j]) for j in range(ngens)] for i in range(k, ngens)]
    return proj, lift


def vecmat(x, M):
    """Row vector times matrix."""
    if not M:
        return []
    return [sum(x[i] * M[i][j] for i in range(len(x))) for j in range(len(M[0]))]


def matmul(A, B):
    return [vecmat(row, B) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def det(A):
    """Exact determinant by fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [[Fraction(x) for x in row] for row in A]
    sign = 1
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= M[i][i]
    return int(out)


def solve_unimodular(A, b):
    """Solve ``x @ A = b`` over the rationals; returns a list of Fractions or None."""
    n = len(A)
    m = len(A[0]) if A else 0
    # system A^T x^T = b^T
    M = [[Fraction(A[i][j]) for i in range(n)] + [Fraction(b[j])] for j in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][n]
    return x


def signature(G):
    """(positive, negative) inertia of a symmetric rational matrix."""
    n = len(G)
    M = [[Fraction(x) for x in row] for row in G]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        # find a usable diagonal pivot, otherwise combine
        p = next((i for i in idx if M[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            continue
        d = M[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(p)
        for i in idx:
            f = M[i][p] / d
            if f:
                for k in range(n):
                    M[i][k] -= f * M[p][k]
                for k in range(n):
                    M[k][i] -= f * M[k][p]
    return pos, neg
