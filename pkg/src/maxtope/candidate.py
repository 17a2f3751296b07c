"""Candidate polytopes for two-layer networks and the rank test.

A candidate is a Minkowski sum of convex hulls of zonotope pairs sharing
n zone directions. Every two-layer maxout polytope is a candidate; the
converse fails, and the necessary rank condition below separates the two
on the level of Zariski closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .network import MaxoutNetwork
from .polytope import Polytope, conv_union, hull, minkowski_sum, translate
from .ratgeom import RMatrix, RVector, matrix, rank, vector


@dataclass(frozen=True)
class CandidateParams:
    """Zone directions u, base points v/w, and nonnegative scalings s/t.

    u has shape d x n (columns are zones), v and w are d x m (columns are
    the base points of the k-th zonotope pair), s and t are m x n.
    """

    d: int
    n: int
    m: int
    u: RMatrix
    v: RMatrix
    w: RMatrix
    s: RMatrix
    t: RMatrix

    def __post_init__(self):
        for name, M, rows, cols in (
            ("u", self.u, self.d, self.n),
            ("v", self.v, self.d, self.m),
            ("w", self.w, self.d, self.m),
            ("s", self.s, self.m, self.n),
            ("t", self.t, self.m, self.n),
        ):
            if len(M) != rows or any(len(r) != cols for r in M):
                raise ValueError(f"{name} must have shape {rows}x{cols}")
        for name, M in (("s", self.s), ("t", self.t)):
            for row in M:
                for x in row:
                    if x < 0:
                        raise ValueError(f"negative scaling in {name}")


def make_candidate(d, n, m, u, v, w, s, t) -> CandidateParams:
    return CandidateParams(d, n, m, matrix(u), matrix(v), matrix(w), matrix(s), matrix(t))


def _column(M: RMatrix, j: int) -> RVector:
    return tuple(row[j] for row in M)


def _zonotope(base: RVector, zones) -> Polytope:
    P = hull([base])
    for z in zones:
        if any(x != 0 for x in z):
            seg = hull([tuple(Fraction(0) for _ in z), z])
            P = minkowski_sum(P, seg)
    return P


def build_candidate(p: CandidateParams) -> Polytope:
    """Minkowski sum over k of conv(Z_k1 u Z_k2) with shared zones."""
    total = None
    zero = tuple(Fraction(0) for _ in range(p.d))
    for k in range(p.m):
        z1 = _zonotope(_column(p.v, k), [tuple(p.s[k][i] * x for x in _column(p.u, i)) for i in range(p.n)])
        z2 = _zonotope(_column(p.w, k), [tuple(p.t[k][i] * x for x in _column(p.u, i)) for i in range(p.n)])
        pair = conv_union(z1, z2)
        total = pair if total is None else minkowski_sum(total, pair)
    return total if total is not None else hull([zero])


def phi(net: MaxoutNetwork) -> CandidateParams:
    """Candidate data of a two-layer network, output row absorbed.

    The k-th zonotope pair has base points (c_k A2_k A1)^T, (c_k B2_k A1)^T
    and scalings c_k A2_k, c_k B2_k over the zones (B1 - A1)^T.
    """
    dims = net.net_type.dims
    if len(dims) != 3:
        raise ValueError("phi is defined for two-layer networks")
    d, n, m = dims
    A1, A2 = net.A
    B1, B2 = net.B
    c = net.C
    s = tuple(tuple(c[k] * A2[k][i] for i in range(n)) for k in range(m))
    t = tuple(tuple(c[k] * B2[k][i] for i in range(n)) for k in range(m))
    u = tuple(tuple(B1[i][r] - A1[i][r] for i in range(n)) for r in range(d))
    v = tuple(
        tuple(sum((s[k][i] * A1[i][r] for i in range(n)), Fraction(0)) for k in range(m))
        for r in range(d)
    )
    w = tuple(
        tuple(sum((t[k][i] * A1[i][r] for i in range(n)), Fraction(0)) for k in range(m))
        for r in range(d)
    )
    return CandidateParams(d, n, m, u, v, w, s, t)


def condition_matrix(p: CandidateParams) -> RMatrix:
    """The (n+d) x 2m matrix [[s^T, t^T], [v, w]]."""
    top = tuple(
        tuple(p.s[k][i] for k in range(p.m)) + tuple(p.t[k][i] for k in range(p.m))
        for i in range(p.n)
    )
    bottom = tuple(
        tuple(p.v[r][k] for k in range(p.m)) + tuple(p.w[r][k] for k in range(p.m))
        for r in range(p.d)
    )
    return top + bottom

def rank_condition(p: CandidateParams) -> tuple[bool, int]:
    """Necessary for realizability: the condition matrix has rank <= n."""
    r = rank(condition_matrix(p))
    return r <= p.n, r


def candidate_space_dim(d: int, n: int, m: int) -> int:
    """Dimension of the space of candidates modulo zone rescaling."""
    return (d - 1) * n + 2 * m * (d + n)


def weight_space_dim(d: int, n: int, m: int) -> int:
    """Dimension of the two-layer weight space modulo the same action."""
    return 2 * n * d + 2 * m * n - n


def fiber_dim(d: int, n: int, m: int) -> int:
    """Generic fiber dimension of the candidate map on weights."""
    return max(0, d * n - 2 * d * m)


def normalize_scaling(p: CandidateParams) -> CandidateParams:
    """Rescale zones so the first row of t is all ones.

    The rescaling group acts by u_i -> u_i / l_i, s_ki -> l_i s_ki,
    t_ki -> l_i t_ki; a zero entry in t's first row blocks it.
    """
    if p.m < 1:
        raise ValueError("no zonotope pairs to normalize against")
    lam = []
    for i in range(p.n):
        if p.t[0][i] == 0:
            raise ValueError("cannot normalize: zero scaling in the pivot row")
        lam.append(Fraction(1) / p.t[0][i])
    u = tuple(tuple(row[i] / lam[i] for i in range(p.n)) for row in p.u)
    s = tuple(tuple(lam[i] * p.s[k][i] for i in range(p.n)) for k in range(p.m))
    t = tuple(tuple(lam[i] * p.t[k][i] for i in range(p.n)) for k in range(p.m))
    return CandidateParams(p.d, p.n, p.m, u, p.v, p.w, s, t)


def realizability(p: CandidateParams):
    """Three-tier verdict on whether the candidate comes from a network.

    Returns (tier, witness) with tier one of "fails_necessary_condition",
    "necessary_condition_holds", "realized". A witness network is produced
    by solving the base-point equations exactly; failure of that solve
    never proves non-realizability, so the middle tier stays agnostic.
    """
    from .ratgeom import solve_matrix

    holds, r = rank_condition(p)
    if not holds:
        return "fails_necessary_condition", None
    coeff = tuple(
        tuple(p.s[k][i] for i in range(p.n)) for k in range(p.m)
    ) + tuple(
        tuple(p.t[k][i] for i in range(p.n)) for k in range(p.m)
    )
    rhs = tuple(
        tuple(p.v[r][k] for r in range(p.d)) for k in range(p.m)
    ) + tuple(
        tuple(p.w[r][k] for r in range(p.d)) for k in range(p.m)
    )
    A1 = solve_matrix(coeff, rhs)
    if A1 is None:
        return "necessary_condition_holds", None
    B1 = tuple(
        tuple(A1[i][r] + p.u[r][i] for r in range(p.d)) for i in range(p.n)
    )
    from .network import MaxoutNetwork as _Net, NetworkType

    net = _Net(
        NetworkType((p.d, p.n, p.m)),
        A=(tuple(A1), p.s),
        B=(B1, p.t),
        C=tuple(Fraction(1) for _ in range(p.m)),
    )
    if phi(net) != p:
        return "necessary_condition_holds", None
    return "realized", net
