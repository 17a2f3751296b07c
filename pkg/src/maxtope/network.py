"""Input-convex maxout networks and their layer-wise polytopes.

A network of type (m0, m1, ..., ml) carries weight matrices A_i, B_i per
hidden layer and an output row C. Entries after the first hidden layer
must be nonnegative; the output is then a support function of a polytope,
built here by the convex-hull / Minkowski-sum recursion.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .polytope import (
    Polytope,
    conv_union,
    dilate,
    hull,
    minkowski_sum,
    translate,
)
from .ratgeom import RMatrix, RVector, fr, matrix, vdot, vector

WORD_SIZE_CAP = 20


@dataclass(frozen=True)
class NetworkType:
    """Layer widths (m0, m1, ..., ml); m0 is the input dimension."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) < 1 or any(m < 1 for m in self.dims):
            raise ValueError("network type needs positive layer widths")

    @property
    def input_dim(self) -> int:
        return self.dims[0]

    @property
    def depth(self) -> int:
        return len(self.dims) - 1

    @property
    def hidden(self) -> tuple[int, ...]:
        return self.dims[1:]

    @property
    def total_hidden(self) -> int:
        return sum(self.dims[1:])


@dataclass(frozen=True)
class MaxoutNetwork:
    """Weights (A_i, B_i) per hidden layer plus the output row C."""

    net_type: NetworkType
    A: tuple[RMatrix, ...]
    B: tuple[RMatrix, ...]
    C: RVector

    def __post_init__(self):
        dims = self.net_type.dims
        if len(self.A) != len(dims) - 1 or len(self.B) != len(dims) - 1:
            raise ValueError("one weight matrix pair per hidden layer required")
        for k, (Ak, Bk) in enumerate(zip(self.A, self.B), start=1):
            for name, Mk in (("A", Ak), ("B", Bk)):
                if len(Mk) != dims[k] or any(len(row) != dims[k - 1] for row in Mk):
                    raise ValueError(
                        f"{name}{k} must have shape {dims[k]}x{dims[k - 1]}"
                    )
        if len(self.C) != dims[-1]:
            raise ValueError(f"output row must have length {dims[-1]}")


def make_network(dims, A, B, C) -> MaxoutNetwork:
    return MaxoutNetwork(
        net_type=NetworkType(tuple(dims)),
        A=tuple(matrix(Ak) for Ak in A),
        B=tuple(matrix(Bk) for Bk in B),
        C=vector(C),
    )


def validate(net: MaxoutNetwork) -> list[str]:
    """Negative-entry report for layers past the first and the output row."""
    violations = []
    for k in range(1, net.net_type.depth):
        for name, Mk in (("A", net.A[k]), ("B", net.B[k])):
            for i, row in enumerate(Mk):
                for j, x in enumerate(row):
                    if x < 0:
                        violations.append(f"{name}{k + 1}[{i}][{j}] = {x} < 0")
    for j, x in enumerate(net.C):
        if x < 0:
            violations.append(f"C[{j}] = {x} < 0")
    return violations


def _weighted_sum(polys, weights) -> Polytope:
    acc = None
    for P, w in zip(polys, weights, strict=True):
        term = dilate(P, w)
        acc = term if acc is None else minkowski_sum(acc, term)
    return acc


def build_layers(net: MaxoutNetwork) -> list[list[Polytope]]:
    """All intermediate polytopes P[k][i], including the layer-0 points."""
    bad = validate(net)
    if bad:
        raise ValueError("invalid network weights: " + "; ".join(bad))
    d = net.net_type.input_dim
    layers = [[hull([tuple(fr(int(i == j)) for j in range(d))]) for i in range(d)]]
    for k in range(net.net_type.depth):
        prev = layers[-1]
        current = []
        for i in range(net.net_type.dims[k + 1]):
            if k == 0:
                # Layer 1 sums points, so each unit is just a segment.
                current.append(hull([net.A[0][i], net.B[0][i]]))
            else:
                Pa = _weighted_sum(prev, net.A[k][i])
                Pb = _weighted_sum(prev, net.B[k][i])
                current.append(conv_union(Pa, Pb))
        layers.append(current)
    return layers


def build_polytope(net: MaxoutNetwork) -> Polytope:
    layers = build_layers(net)
    return _weighted_sum(layers[-1], net.C)


def support_eval(net: MaxoutNetwork, x) -> Fraction:
    """Forward pass; equals the support function of build_polytope(net)."""
    h = vector(x)
    if len(h) != net.net_type.input_dim:
        raise ValueError("input dimension mismatch")
    for Ak, Bk in zip(net.A, net.B):
        h = tuple(max(vdot(ra, h), vdot(rb, h)) for ra, rb in zip(Ak, Bk))
    return vdot(net.C, h)


@dataclass(frozen=True)
class Word:
    """Letters over {a, b}, one per hidden unit, sliced by layer."""

    letters: str
    layer_sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != sum(self.layer_sizes):
            raise ValueError("word length must match the hidden sizes")
        if set(self.letters) - {"a", "b"}:
            raise ValueError("letters must be 'a' or 'b'")

    def subword(self, layer: int) -> str:
        start = sum(self.layer_sizes[:layer])
        return self.letters[start : start + self.layer_sizes[layer]]


def words(net: MaxoutNetwork):
    """All 2^M words in lexicographic order; M capped for desk scale."""
    M = net.net_type.total_hidden
    if M > WORD_SIZE_CAP:
        raise ValueError(f"word enumeration capped at {WORD_SIZE_CAP} units")
    sizes = net.net_type.hidden
    for combo in itertools.product("ab", repeat=M):
        yield Word("".join(combo), sizes)


def word_matrices(net: MaxoutNetwork, word: Word) -> tuple[RMatrix, RVector]:
    """The selection product W and the point V = (C W)^T for one word."""
    if word.layer_sizes != net.net_type.hidden:
        raise ValueError("word does not match the network type")
    W = None
    for k in range(net.net_type.depth):
        sub = word.subword(k)
        Ck = tuple(
            net.A[k][i] if sub[i] == "a" else net.B[k][i]
            for i in range(len(sub))
        )
        if W is None:
            W = Ck
        else:
            W = tuple(
                tuple(
                    sum((row[j] * W[j][c] for j in range(len(W))), Fraction(0))
                    for c in range(net.net_type.input_dim)
                )
                for row in Ck
            )
    V = tuple(
        sum((net.C[i] * W[i][c] for i in range(len(W))), Fraction(0))
        for c in range(net.net_type.input_dim)
    )
    return W, V


def has_zero_weight(net: MaxoutNetwork) -> bool:
    return (
        any(x == 0 for Mk in net.A + net.B for row in Mk for x in row)
        or any(x == 0 for x in net.C)
    )


def build_big_cube(net: MaxoutNetwork) -> Polytope:
    """Lifted Newton polytope in R^(d+M) with one +/- coordinate per unit.

    Unit k of layer i contributes conv((A-side sum) + e_k, (B-side sum) - e_k)
    in its own lifted coordinate; with nonzero weights the result has 2^M
    vertices forming a combinatorial M-cube, and dropping the last M
    coordinates projects onto build_polytope(net).
    """
    if has_zero_weight(net):
        raise ValueError("zero weight")
    bad = validate(net)
    if bad:
        raise ValueError("invalid network weights: " + "; ".join(bad))
    d = net.net_type.input_dim
    M = net.net_type.total_hidden
    if M > WORD_SIZE_CAP:
        raise ValueError(f"big-cube lift capped at {WORD_SIZE_CAP} units")
    amb = d + M

    def lifted_unit(idx):
        return tuple(Fraction(int(j == idx)) for j in range(amb))

    def embed(row):
        return tuple(row) + (Fraction(0),) * M

    layers = []
    offset = d
    for k in range(net.net_type.depth):
        current = []
        for i in range(net.net_type.dims[k + 1]):
            xi = lifted_unit(offset + i)
            neg_xi = tuple(-x for x in xi)
            if k == 0:
                # First-layer weights may be negative, so build the lifted
                # segment from its two endpoints instead of dilating points.
                pa = translate(hull([embed(net.A[0][i])]), xi)
                pb = translate(hull([embed(net.B[0][i])]), neg_xi)
            else:
                pa = translate(_weighted_sum(layers[-1], net.A[k][i]), xi)
                pb = translate(_weighted_sum(layers[-1], net.B[k][i]), neg_xi)
            current.append(conv_union(pa, pb))
        offset += net.net_type.dims[k + 1]
        layers.append(current)
    return _weighted_sum(layers[-1], net.C)


def edge_independence_check(net: MaxoutNetwork) -> bool:
    """Every d edge directions at a common word are linearly independent.

    Checks, for each word, all d-subsets of the M single-letter flips;
    passing certifies the maxout polytope cubical for nonzero weights.
    """
    from .ratgeom import rank

    d = net.net_type.input_dim
    M = net.net_type.total_hidden
    if M > WORD_SIZE_CAP:
        raise ValueError(f"word enumeration capped at {WORD_SIZE_CAP} units")
    sizes = net.net_type.hidden
    values = {}
    for w in words(net):
        values[w.letters] = word_matrices(net, w)[1]
    flip = {"a": "b", "b": "a"}
    for letters, V in values.items():
        diffs = []
        for pos in range(M):
            other = letters[:pos] + flip[letters[pos]] + letters[pos + 1 :]
            diffs.append(tuple(x - y for x, y in zip(V, values[other])))
        for subset in itertools.combinations(diffs, d):
            if rank(subset) < d:
                return False
    return True


def sample_network(dims, seed: int) -> MaxoutNetwork:
    """Random rational weights: k/1000 with k in [-1000,1000] for the first
    layer and k in [1,1000] afterwards and for the output row."""
    rng = random.Random(seed)
    dims = tuple(dims)

    def first_entry():
        return Fraction(rng.randint(-1000, 1000), 1000)

    def later_entry():
        return Fraction(rng.randint(1, 1000), 1000)

    A, B = [], []
    for k in range(1, len(dims)):
        entry = first_entry if k == 1 else later_entry
        A.append(
            tuple(tuple(entry() for _ in range(dims[k - 1])) for _ in range(dims[k]))
        )
        B.append(
            tuple(tuple(entry() for _ in range(dims[k - 1])) for _ in range(dims[k]))
        )
    C = tuple(later_entry() for _ in range(dims[-1]))
    return MaxoutNetwork(NetworkType(dims), tuple(A), tuple(B), C)


def first_layer_cone_pointed(net: MaxoutNetwork) -> bool:
    """True when the first-layer weight rows generate a pointed cone.

    The maxout polytope lives inside that cone, and the facet anatomy of
    bottleneck types is read off its proper facets; sign-symmetric weight
    draws produce a non-pointed cone with sizable probability, collapsing
    that structure, so samplers gate on this predicate.
    """
    d = net.net_type.input_dim
    zero = tuple(Fraction(0) for _ in range(d))
    pts = [zero] + [tuple(row) for row in net.A[0]] + [tuple(row) for row in net.B[0]]
    return zero in hull(pts).vertices


def sample_generic_network(dims, seed: int, predicate=None, max_retries: int = 32):
    """Resample with incremented seeds until the genericity predicate holds.

    Returns (network, seed_used, retries). Rational sampling misses the
    generic locus only on measure-zero sets, so a handful of retries is
    plenty; exhausting them raises.
    """
    for attempt in range(max_retries):
        net = sample_network(dims, seed + attempt)
        if predicate is None or predicate(net):
            return net, seed + attempt, attempt
    raise RuntimeError(
        f"no generic sample for type {tuple(dims)} in {max_retries} attempts"
    )


def generic_dimension(d: int, n: int, m: int, seed: int) -> int:
    """Dimension of a randomly sampled type-(d,n,m) maxout polytope."""
    net = sample_network((d, n, m), seed)
    return build_polytope(net).dim


def boxtope_network(segments, a, b) -> MaxoutNetwork:
    """Type (d,n,1) network for conv(sum a_i I_i, sum b_i I_i).

    Each segment I_i = conv(p_i, q_i) becomes a first-layer unit with rows
    p_i and q_i; the scalings a, b must be nonnegative.
    """
    segs = [(vector(p), vector(q)) for p, q in segments]
    if not segs:
        raise ValueError("at least one segment required")
    d = len(segs[0][0])
    n = len(segs)
    a = vector(a)
    b = vector(b)
    if any(x < 0 for x in a) or any(x < 0 for x in b):
        raise ValueError("scalings must be nonnegative")
    return MaxoutNetwork(
        NetworkType((d, n, 1)),
        A=(tuple(p for p, _ in segs), (a,)),
        B=(tuple(q for _, q in segs), (b,)),
        C=(Fraction(1),),
    )
