"""Closed-form extremal families of boxtopes and zonoboxtopes.

The B_d family (hulls of two nested boxes), its odd-dimensional sibling
B_d', the f-polynomial formula counting their faces, network weights
realizing both, the planar zonoboxtopes with the most edges, and the
factorization splitting a zonoboxtope into a common zonotope plus a
reduced hull.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .bicolor import build_zonoboxtope
from .network import MaxoutNetwork, boxtope_network
from .polytope import (
    Polytope,
    conv_union,
    f_vector,
    face_lattice,
    hull,
    minkowski_sum,
)
from .ratgeom import (
    Rational,
    fr,
    primitive_ray,
    unit_vector,
    vector,
    vscale,
    zero_vector,
)


@dataclass(frozen=True)
class FPolynomial:
    """Face-count generating polynomial, constant term f0."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients):
            raise ValueError("face counts are nonnegative")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: Rational) -> Rational:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def _box_vertices(intervals):
    """All corner points of a product of intervals."""
    return [tuple(Fraction(c) for c in corner)
            for corner in itertools.product(*intervals)]


def build_Bd(d: int) -> Polytope:
    """Hull of the two half-swapped boxes with radii 1 and 2.

    The first box is small in the leading ceil(d/2) coordinates and
    large in the rest; the second swaps the roles.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    h = (d + 1) // 2
    box1 = [(-1, 1)] * h + [(-2, 2)] * (d - h)
    box2 = [(-2, 2)] * h + [(-1, 1)] * (d - h)
    return hull(_box_vertices(box1) + _box_vertices(box2))


def build_Bd_prime(d: int) -> Polytope:
    """The odd-dimensional companion of build_Bd.

    Shifting the middle interval of each box breaks the symmetry: both
    boxes use {-2,1} or {-1,2} in coordinate ceil(d/2), which changes
    the combinatorial type while preserving every face count.
    """
    if d % 2 == 0:
        raise ValueError("only defined in odd dimension")
    if d < 3:
        raise ValueError("dimension must be at least 3")
    k = d // 2
    box1 = [(-1, 1)] * k + [(-2, 1)] + [(-2, 2)] * k
    box2 = [(-2, 2)] * k + [(-1, 2)] + [(-1, 1)] * k
    return hull(_box_vertices(box1) + _box_vertices(box2))


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
            for i in range(n)]


def _poly_pow(p, e):
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, p)
    return out


def f_polynomial_Bd(d: int) -> FPolynomial:
    """Closed-form face counts of build_Bd(d), top face included.

    (2+x)^d + (1+x) ((2+x)^ceil(d/2) - x^ceil(d/2))
                    ((2+x)^floor(d/2) - x^floor(d/2)).
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    h = (d + 1) // 2
    l = d // 2

    def box_minus_top(e):
        mono = [0] * e + [1]
        return _poly_add(_poly_pow([2, 1], e), [-c for c in mono])

    second = _poly_mul([1, 1], _poly_mul(box_minus_top(h), box_minus_top(l)))
    coeffs = _poly_add(_poly_pow([2, 1], d), second)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return FPolynomial(tuple(int(c) for c in coeffs))


def _axis_segment(d, i, scale=Fraction(1), shift=None):
    e = vscale(scale, unit_vector(d, i))
    lo = tuple(-c for c in e)
    hi = e
    if shift is not None:
        lo = tuple(a + b for a, b in zip(lo, shift))
        hi = tuple(a + b for a, b in zip(hi, shift))
    return (lo, hi)


def realize_Bd_network(d: int) -> MaxoutNetwork:
    """Weights whose polytope is combinatorially build_Bd(d).

    Axis segments conv(-e_i, e_i) with scalings 1 and 2 split at
    ceil(d/2), the two output rows using opposite halves.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    h = (d + 1) // 2
    segments = [_axis_segment(d, i) for i in range(d)]
    a = [Fraction(1) if i < h else Fraction(2) for i in range(d)]
    b = [Fraction(2) if i < h else Fraction(1) for i in range(d)]
    return boxtope_network(segments, a, b)


@dataclass(frozen=True)
class BoxtopeData:
    """Segments with two scaling vectors, hull of the two weighted sums."""

    segments: tuple[tuple[tuple[Rational, ...], tuple[Rational, ...]], ...]
    a: tuple[Rational, ...]
    b: tuple[Rational, ...]

    def build(self) -> Polytope:
        return build_zonoboxtope(self.segments, self.a, self.b)

    def to_network(self) -> MaxoutNetwork:
        return boxtope_network(self.segments, self.a, self.b)


def realize_Bd_prime_network(d: int) -> BoxtopeData:
    """Segment data whose polytope is combinatorially build_Bd_prime(d).

    Same axis segments as for build_Bd except three: the first and last
    are shifted by half a unit along the middle axis in opposite
    directions, and the middle one is stretched to radius 3/2.
    """
    if d % 2 == 0:
        raise ValueError("only defined in odd dimension")
    if d < 3:
        raise ValueError("dimension must be at least 3")
    h = (d + 1) // 2
    mid = h - 1
    half = Fraction(1, 2)
    segments = []
    for i in range(d):
        if i == 0:
            segments.append(_axis_segment(
                d, i, shift=vscale(half, unit_vector(d, mid))))
        elif i == mid:
            segments.append(_axis_segment(d, i, scale=Fraction(3, 2)))
        elif i == d - 1:
            segments.append(_axis_segment(
                d, i, shift=vscale(-half, unit_vector(d, mid))))
        else:
            segments.append(_axis_segment(d, i))
    a = tuple(Fraction(1) if i < h else Fraction(2) for i in range(d))
    b = tuple(Fraction(2) if i < h - 1 else Fraction(1) for i in range(d))
    return BoxtopeData(tuple(segments), a, b)


def _rational_direction(angle: float, scale: float, resolution: int):
    x = Fraction(round(math.cos(angle) * scale * resolution), resolution)
    y = Fraction(round(math.sin(angle) * scale * resolution), resolution)
    return (x, y)


def extremal_2d_zonoboxtope(n: int) -> Polytope:
    """Planar zonoboxtope with the most edges among n zones.

    Two families of evenly spread diameters, offset by half an angular
    step, with scalings 2 against 1; odd n adds one balanced zone
    between the first pair of directions. Built from rational
    approximations of the unit circle; the exact edge count certifies
    the combinatorics, retrying at higher precision if rounding broke
    it.
    """
    if n < 2:
        raise ValueError("need at least two zones")
    k = n // 2
    scale = math.sin(math.pi / (2 * k)) if k > 1 else 1.0
    target = 2 * n + 4 * k
    for resolution in (10 ** 6, 10 ** 12):
        directions = [math.pi * t / k for t in range(k)]
        directions += [math.pi * t / k + math.pi / (2 * k) for t in range(k)]
        weights_a = [Fraction(2)] * k + [Fraction(1)] * k
        weights_b = [Fraction(1)] * k + [Fraction(2)] * k
        if n % 2 == 1:
            directions.append(math.pi / (8 * k))
            weights_a.append(Fraction(1))
            weights_b.append(Fraction(1))
        segments = []
        for ang in directions:
            u = _rational_direction(ang, scale, resolution)
            segments.append((tuple(-c for c in u), u))
        P = build_zonoboxtope(segments, weights_a, weights_b)
        fv = f_vector(P)
        if P.dim == 2 and fv[1] == target:
            return P
    raise RuntimeError("rounding destroyed the extremal combinatorics")


def _zonotope(segments, scalings) -> Polytope:
    acc = hull([zero_vector(len(segments[0][0]))])
    for (p, q), c in zip(segments, scalings):
        if c == 0:
            continue
        acc = minkowski_sum(acc, hull([vscale(c, vector(p)),
                                       vscale(c, vector(q))]))
    return acc


def factor_zonoboxtope(a, b, segments):
    """Split hull(sum a_i I_i, sum b_i I_i) into zonotope + remainder.

    Returns (zonotope_part, a_residual, b_residual) where the zonotope
    carries min(a_i, b_i) of every zone and the residuals satisfy
    a'_i b'_i = 0. Minkowski-adding the zonotope to the residual hull
    reproduces the original polytope exactly.
    """
    a = vector(a)
    b = vector(b)
    if len(a) != len(b) or len(a) != len(segments):
        raise ValueError("scalings must match the segment count")
    if any(x < 0 for x in a) or any(x < 0 for x in b):
        raise ValueError("scalings must be nonnegative")
    common = tuple(min(x, y) for x, y in zip(a, b))
    a_res = tuple(x - c for x, c in zip(a, common))
    b_res = tuple(y - c for y, c in zip(b, common))
    return _zonotope(segments, common), a_res, b_res


def edge_count_2d(segments, a, b) -> int:
    """Edge count of a planar zonoboxtope from its factored parts.

    Edges of the common zonotope plus the mixed edges of the residual
    hull, an edge being mixed when it is parallel to none of the
    segments. Exact against the built polytope whenever every zone has
    positive scaling on both sides; with a zero minimum the zonotope
    drops that zone and the formula can undercount.
    """
    if len(segments[0][0]) != 2:
        raise ValueError("only defined in the plane")
    zonotope_part, a_res, b_res = factor_zonoboxtope(a, b, segments)
    if zonotope_part.dim == 2:
        zonotope_edges = f_vector(zonotope_part)[1]
    elif zonotope_part.dim == 1:
        zonotope_edges = 1
    else:
        zonotope_edges = 0
    zone_dirs = set()
    for p, q in segments:
        diff = tuple(Fraction(x) - Fraction(y) for x, y in zip(p, q))
        ray = primitive_ray(diff)
        zone_dirs.add(min(ray, tuple(-c for c in ray)))

    def is_mixed(u, v):
        diff = tuple(x - y for x, y in zip(u, v))
        ray = primitive_ray(diff)
        return min(ray, tuple(-c for c in ray)) not in zone_dirs

    side_a = _zonotope(segments, a_res)
    side_b = _zonotope(segments, b_res)
    remainder = conv_union(side_a, side_b)
    if remainder.dim < 1:
        return zonotope_edges
    if remainder.dim == 1:
        lo, hi = remainder.vertices
        return zonotope_edges + (1 if is_mixed(lo, hi) else 0)
    lat = face_lattice(remainder)
    mixed = 0
    for fid in lat.faces_of_dim(1):
        ends = [remainder.vertices[i]
                for i in range(len(remainder.vertices))
                if lat.masks[fid] >> i & 1]
        if is_mixed(ends[0], ends[1]):
            mixed += 1
    return zonotope_edges + mixed
