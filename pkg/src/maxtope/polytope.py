"""Exact convex polytopes: hulls, face lattices, normal fans.

Polytopes are stored in V-representation and H-representation together
with the vertex-facet incidence. Lower-dimensional polytopes keep full
ambient coordinates plus an affine-hull basis; facet normals are taken
within the affine hull.
"""

from __future__ import annotations

import itertools
import math
import weakref
from dataclasses import dataclass
from fractions import Fraction

from .ratgeom import (
    RVector,
    det_int,
    fr,
    mat_vec,
    matrix,
    nullspace,
    primitive_ray,
    pseudo_inverse_rows,
    rank,
    solve_affine_hull,
    solve_linear,
    transpose,
    unit_vector,
    vadd,
    vdot,
    vector,
    vscale,
    vsub,
    zero_vector,
)


@dataclass(frozen=True)
class Polytope:
    """A polytope with exact V- and H-representations.

    `facets` lists canonical (primitive normal, offset) pairs meaning
    normal . x <= offset, with normals taken inside the affine hull.
    `incidence[f]` is a bitmask over vertex indices lying on facet f.
    """

    ambient_dim: int
    dim: int
    vertices: tuple[RVector, ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]
    incidence: tuple[int, ...]
    base: RVector
    basis: tuple[RVector, ...]

    def vertex_count(self) -> int:
        return len(self.vertices)

    def facet_count(self) -> int:
        return len(self.facets)

    def vertex_facet_mask(self, v_index: int) -> int:
        bit = 1 << v_index
        mask = 0
        for f, inc in enumerate(self.incidence):
            if inc & bit:
                mask |= 1 << f
        return mask


def _hyperplane(zpts, idxs, k):
    """Integer (normal, offset) through the k points zpts[idxs] in Z^k."""
    q0 = zpts[idxs[0]]
    rows = [[zpts[i][j] - q0[j] for j in range(k)] for i in idxs[1:]]
    normal = []
    for j in range(k):
        minor = [row[:j] + row[j + 1 :] for row in rows]
        normal.append((-1) ** j * det_int(minor))
    offset = sum(n * x for n, x in zip(normal, q0))
    return normal, offset


def _reduce_hyperplane(normal, offset):
    g = math.gcd(*[abs(x) for x in normal], abs(offset))
    if g > 1:
        normal = [x // g for x in normal]
        offset //= g
    return tuple(normal), offset


class _Facet:
    __slots__ = ("verts", "normal", "offset", "key")

    def __init__(self, verts, normal, offset):
        self.verts = verts
        self.normal = normal
        self.offset = offset
        self.key = (normal, offset)


def _initial_indices(zpts, k):
    """Indices of k+1 affinely independent points, greedily."""
    idxs = [0]
    echelon: list[list[int]] = []
    for i in range(1, len(zpts)):
        v = [zpts[i][j] - zpts[0][j] for j in range(k)]
        w = list(v)
        for row in echelon:
            piv = next(j for j, x in enumerate(row) if x)
            if w[piv]:
                f = Fraction(w[piv], row[piv])
                w = [a - f * b for a, b in zip(w, row)]
        if any(w):
            idxs.append(i)
            echelon.append([x for x in w])
        if len(idxs) == k + 1:
            return idxs
    raise ValueError("points do not span the expected dimension")


def _incremental_hull(zpts, k):
    """Distinct facet hyperplanes of conv(zpts) for full-dimensional input.

    Beneath-beyond with a triangulated boundary and exact integer
    predicates. Returns a list of reduced (normal, offset) pairs.
    """
    init = _initial_indices(zpts, k)
    ref = [sum(zpts[i][j] for i in init) for j in range(k)]
    refscale = k + 1

    facets: dict[int, _Facet] = {}
    ridge_map: dict[tuple, list[int]] = {}
    next_id = 0

    def orient(normal, offset):
        side = sum(n * x for n, x in zip(normal, ref)) - refscale * offset
        if side > 0:
            return [-x for x in normal], -offset
        if side == 0:
            raise AssertionError("interior reference on a facet hyperplane")
        return normal, offset

    def add_facet(verts):
        nonlocal next_id
        normal, offset = _hyperplane(zpts, verts, k)
        normal, offset = orient(normal, offset)
        normal, offset = _reduce_hyperplane(normal, offset)
        f = _Facet(tuple(sorted(verts)), normal, offset)
        fid = next_id
        next_id += 1
        facets[fid] = f
        for ridge in itertools.combinations(f.verts, k - 1):
            ridge_map.setdefault(ridge, []).append(fid)
        return fid

    def drop_facet(fid):
        f = facets.pop(fid)
        for ridge in itertools.combinations(f.verts, k - 1):
            entry = ridge_map.get(ridge)
            entry.remove(fid)
            if not entry:
                del ridge_map[ridge]

    for drop in range(k + 1):
        add_facet([v for i, v in enumerate(init) if i != drop])

    in_init = set(init)
    for ip, p in enumerate(zpts):
        if ip in in_init:
            continue
        visible = [
            fid
            for fid, f in facets.items()
            if sum(n * x for n, x in zip(f.normal, p)) > f.offset
        ]
        if not visible:
            continue
        vis_set = set(visible)
        horizon = []
        for fid in visible:
            for ridge in itertools.combinations(facets[fid].verts, k - 1):
                entry = ridge_map[ridge]
                others = [g for g in entry if g != fid]
                if not others:
                    continue
                if others[0] not in vis_set:
                    horizon.append(ridge)
        for fid in visible:
            drop_facet(fid)
        for ridge in horizon:
            add_facet(list(ridge) + [ip])

    seen = {}
    for f in facets.values():
        seen.setdefault(f.key, f)
    return [(list(n), c) for (n, c) in seen]


def hull(points) -> Polytope:
    """Convex hull of exact rational points, any dimension up to ambient."""
    pts = []
    seen = set()
    for p in points:
        t = vector(p)
        if t not in seen:
            seen.add(t)
            pts.append(t)
    if not pts:
        raise ValueError("hull of an empty point set")
    ambient = len(pts[0])
    k, basis, base = solve_affine_hull(pts)

    if k == 0:
        return Polytope(
            ambient_dim=ambient,
            dim=0,
            vertices=(pts[0],),
            facets=(),
            incidence=(),
            base=pts[0],
            basis=(),
        )

    if k == ambient:
        ycoords = [vsub(p, base) for p in pts]
        ginv = None
    else:
        ginv = pseudo_inverse_rows(basis)
        ycoords = [mat_vec(ginv, vsub(p, base)) for p in pts]

    lambdas = []
    for j in range(k):
        lambdas.append(math.lcm(*(y[j].denominator for y in ycoords)))
    zpts = [tuple(int(y[j] * lambdas[j]) for j in range(k)) for y in ycoords]

    planes = _incremental_hull(zpts, k)

    tight_masks = []
    point_tight = [[] for _ in zpts]
    for f_idx, (normal, offset) in enumerate(planes):
        mask = 0
        for i, z in enumerate(zpts):
            val = sum(n * x for n, x in zip(normal, z))
            if val > offset:
                raise AssertionError("hull invariant violated: point beyond facet")
            if val == offset:
                mask |= 1 << i
                point_tight[i].append(f_idx)
        tight_masks.append(mask)

    vertex_ids = []
    for i in range(len(zpts)):
        tight = point_tight[i]
        if len(tight) < k:
            continue
        if rank([planes[f][0] for f in tight]) == k:
            vertex_ids.append(i)

    order = sorted(vertex_ids, key=lambda i: pts[i])
    vert_pos = {i: p for p, i in enumerate(order)}
    vertices = tuple(pts[i] for i in order)

    facet_entries = []
    for f_idx, (normal, offset) in enumerate(planes):
        nu = [fr(n) * lam for n, lam in zip(normal, lambdas)]
        if ginv is None:
            n_amb = tuple(nu)
        else:
            n_amb = mat_vec(transpose(ginv), nu)
        c_amb = fr(offset) + vdot(n_amb, base)
        prim = primitive_ray(n_amb)
        scale = next(fr(p) / x for p, x in zip(prim, n_amb) if x)
        c_prim = c_amb * scale
        inc = 0
        m = tight_masks[f_idx]
        for i in vertex_ids:
            if m & (1 << i):
                inc |= 1 << vert_pos[i]
        facet_entries.append(((prim, c_prim), inc))

    facet_entries.sort(key=lambda e: e[0])
    facets = tuple(e[0] for e in facet_entries)
    incidence = tuple(e[1] for e in facet_entries)
    return Polytope(
        ambient_dim=ambient,
        dim=k,
        vertices=vertices,
        facets=facets,
        incidence=incidence,
        base=base,
        basis=basis,
    )


def translate(P: Polytope, t) -> Polytope:
    t = vector(t)
    facets = tuple(
        (n, c + vdot(vector(n), t)) for n, c in P.facets
    )
    return Polytope(
        ambient_dim=P.ambient_dim,
        dim=P.dim,
        vertices=tuple(vadd(v, t) for v in P.vertices),
        facets=facets,
        incidence=P.incidence,
        base=vadd(P.base, t),
        basis=P.basis,
    )


def dilate(P: Polytope, lam) -> Polytope:
    """Scale P about the origin by a nonnegative rational factor."""
    lam = fr(lam)
    if lam < 0:
        raise ValueError("dilation factor must be nonnegative")
    if lam == 0:
        return hull([zero_vector(P.ambient_dim)])
    verts = [vscale(lam, v) for v in P.vertices]
    order = sorted(range(len(verts)), key=lambda i: verts[i])
    remap = {old: new for new, old in enumerate(order)}
    inc = []
    for m in P.incidence:
        new_mask = 0
        for i in range(len(verts)):
            if m & (1 << i):
                new_mask |= 1 << remap[i]
        inc.append(new_mask)
    return Polytope(
        ambient_dim=P.ambient_dim,
        dim=P.dim,
        vertices=tuple(verts[i] for i in order),
        facets=tuple((n, c * lam) for n, c in P.facets),
        incidence=tuple(inc),
        base=vscale(lam, P.base),
        basis=tuple(vscale(lam, b) for b in P.basis),
    )


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if Q.vertex_count() == 1:
        return translate(P, Q.vertices[0])
    if P.vertex_count() == 1:
        return translate(Q, P.vertices[0])
    return hull([vadd(u, v) for u in P.vertices for v in Q.vertices])


def conv_union(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return hull(list(P.vertices) + list(Q.vertices))


def support(P: Polytope, direction) -> tuple[Fraction, int]:
    """Support value of P and the bitmask of maximizing vertices."""
    d = vector(direction)
    best = None
    mask = 0
    for i, v in enumerate(P.vertices):
        val = vdot(d, v)
        if best is None or val > best:
            best = val
            mask = 1 << i
        elif val == best:
            mask |= 1 << i
    return best, mask


def contains_point(P: Polytope, x) -> bool:
    x = vector(x)
    if P.dim < P.ambient_dim:
        diff = vsub(x, P.base)
        if P.basis:
            sol = solve_linear(transpose(matrix(P.basis)), diff)
            if sol is None:
                return False
        elif any(diff):
            return False
    if P.dim == 0:
        return x == P.vertices[0]
    return all(vdot(vector(n), x) <= c for n, c in P.facets)


@dataclass
class FaceLattice:
    """Graded face lattice including the empty face and the polytope.

    Faces are vertex bitmasks; `covers[i]` lists the ids of the maximal
    proper subfaces of face i.
    """

    polytope: Polytope
    masks: tuple[int, ...]
    dims: tuple[int, ...]
    covers: tuple[tuple[int, ...], ...]
    top: int
    empty: int

    def faces_of_dim(self, d: int) -> list[int]:
        return [i for i, fd in enumerate(self.dims) if fd == d]

    def vertex_count(self, face: int) -> int:
        return bin(self.masks[face]).count("1")

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * max(self.polytope.dim, 0)
        for fd in self.dims:
            if 0 <= fd < self.polytope.dim:
                counts[fd] += 1
        return tuple(counts)


_LATTICE_CACHE: "weakref.WeakKeyDictionary[Polytope, FaceLattice]" = (
    weakref.WeakKeyDictionary()
)


def face_lattice(P: Polytope) -> FaceLattice:
    cached = _LATTICE_CACHE.get(P)
    if cached is not None:
        return cached

    nv = P.vertex_count()
    top_mask = (1 << nv) - 1
    masks = [top_mask]
    dims = [P.dim]
    covers: list[list[int]] = [[]]
    index = {top_mask: 0}

    if P.dim == 0:
        masks.append(0)
        dims.append(-1)
        covers.append([])
        covers[0] = [1]
        lat = FaceLattice(P, tuple(masks), tuple(dims), tuple(tuple(c) for c in covers), 0, 1)
        _LATTICE_CACHE[P] = lat
        return lat

    frontier = [0]
    while frontier:
        nxt = []
        for fid in frontier:
            fmask = masks[fid]
            cand = set()
            for inc in P.incidence:
                if inc & fmask != fmask:
                    cand.add(inc & fmask)
            maximal = [
                c
                for c in cand
                if not any(c != o and c & o == c for o in cand)
            ]
            if not maximal:
                maximal = [0] if fmask else []
            kids = []
            for c in maximal:
                if c not in index:
                    index[c] = len(masks)
                    masks.append(c)
                    dims.append(dims[fid] - 1)
                    covers.append([])
                    nxt.append(index[c])
                else:
                    if dims[index[c]] != dims[fid] - 1:
                        raise AssertionError("face lattice is not graded")
                kids.append(index[c])
            covers[fid] = kids
        frontier = nxt

    lat = FaceLattice(
        P, tuple(masks), tuple(dims), tuple(tuple(c) for c in covers), 0, index[0]
    )
    _LATTICE_CACHE[P] = lat
    return lat


def f_vector(P: Polytope) -> tuple[int, ...]:
    """Counts of proper nonempty faces by dimension, (f_0, ..., f_{dim-1})."""
    if P.dim == 0:
        return ()
    return face_lattice(P).f_vector()


@dataclass(frozen=True)
class NormalFan:
    """Rays (primitive integer vectors) and maximal cones by ray index."""

    ambient_dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[frozenset[int], ...]
    lineality_dim: int


def normal_fan(P: Polytope) -> NormalFan:
    rays = tuple(n for n, _ in P.facets)
    cones = []
    for i in range(P.vertex_count()):
        bit = 1 << i
        cones.append(
            frozenset(f for f, inc in enumerate(P.incidence) if inc & bit)
        )
    return NormalFan(
        ambient_dim=P.ambient_dim,
        rays=rays,
        maximal_cones=tuple(cones),
        lineality_dim=P.ambient_dim - P.dim,
    )


def _fan_signature(P: Polytope):
    fan = normal_fan(P)
    cones = frozenset(
        frozenset(fan.rays[i] for i in cone) for cone in fan.maximal_cones
    )
    return frozenset(fan.rays), cones, fan.lineality_dim


def normally_equivalent(P: Polytope, Q: Polytope) -> bool:
    if P.ambient_dim != Q.ambient_dim:
        return False
    return _fan_signature(P) == _fan_signature(Q)


def _lineality_generators(P: Polytope):
    if P.dim == P.ambient_dim:
        return []
    comp = nullspace(matrix(P.basis)) if P.basis else tuple(
        unit_vector(P.ambient_dim, i) for i in range(P.ambient_dim)
    )
    gens = []
    for b in comp:
        gens.append(b)
        gens.append(vscale(-1, b))
    return gens


def is_deformation(P: Polytope, Q: Polytope) -> bool:
    """True iff every maximal cone of Q's fan lies in one of P's.

    Normal fan refinement is checked with exact support computations: a
    generator g lies in P's cone at vertex v iff g.v attains max over P.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    lin = _lineality_generators(Q)
    for i in range(Q.vertex_count()):
        bit = 1 << i
        gens = [
            vector(Q.facets[f][0])
            for f, inc in enumerate(Q.incidence)
            if inc & bit
        ]
        gens.extend(lin)
        common = None
        for g in gens:
            _, mask = support(P, g)
            common = mask if common is None else common & mask
            if not common:
                return False
        if common is None:
            continue
    return True


def is_combinatorial_cube(lat: FaceLattice, face: int, _memo=None) -> bool:
    """Check a face for combinatorial cube structure, recursively.

    A k-face passes iff it has 2^k vertices, every vertex lies in exactly
    k of its facets, and each of its facets passes.
    """
    if _memo is None:
        _memo = {}
    key = lat.masks[face]
    if key in _memo:
        return _memo[key]
    k = lat.dims[face]
    ok = True
    if k <= 1:
        ok = True
    else:
        if lat.vertex_count(face) != (1 << k):
            ok = False
        else:
            kids = lat.covers[face]
            mask = lat.masks[face]
            for i in range(mask.bit_length()):
                if not mask & (1 << i):
                    continue
                count = sum(1 for c in kids if lat.masks[c] & (1 << i))
                if count != k:
                    ok = False
                    break
            if ok:
                ok = all(is_combinatorial_cube(lat, c, _memo) for c in kids)
    _memo[key] = ok
    return ok


def is_cubical(P: Polytope) -> bool:
    """All facets are combinatorial cubes; dimensions below 2 pass."""
    if P.dim <= 1:
        return True
    lat = face_lattice(P)
    memo: dict = {}
    return all(
        is_combinatorial_cube(lat, f, memo) for f in lat.covers[lat.top]
    )


def _bipartite_graph(P: Polytope):
    nv = P.vertex_count()
    nf = P.facet_count()
    adj = [set() for _ in range(nv + nf)]
    for f, inc in enumerate(P.incidence):
        for i in range(nv):
            if inc & (1 << i):
                adj[i].add(nv + f)
                adj[nv + f].add(i)
    sides = [0] * nv + [1] * nf
    return adj, sides


def _refine_colors_joint(adj1, colors1, adj2, colors2):
    """Color refinement with one signature table shared by both graphs."""
    while True:
        table: dict = {}

        def recolor(adj, colors):
            out = []
            for i, c in enumerate(colors):
                sig = (c, tuple(sorted(colors[j] for j in adj[i])))
                if sig not in table:
                    table[sig] = len(table)
                out.append(table[sig])
            return out

        new1 = recolor(adj1, colors1)
        new2 = recolor(adj2, colors2)
        if new1 == colors1 and new2 == colors2:
            return colors1, colors2
        colors1, colors2 = new1, new2


def _iso_search(adj1, adj2, colors1, colors2):
    n = len(adj1)
    by_color: dict[int, list[int]] = {}
    for j, c in enumerate(colors2):
        by_color.setdefault(c, []).append(j)
    order = sorted(range(n), key=lambda i: (len(by_color[colors1[i]]), i))
    mapping = [-1] * n
    inverse = [-1] * n

    def backtrack(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in by_color[colors1[i]]:
            if inverse[j] != -1:
                continue
            ok = all(
                mapping[nb] == -1 or mapping[nb] in adj2[j] for nb in adj1[i]
            ) and all(
                inverse[nb] == -1 or inverse[nb] in adj1[i] for nb in adj2[j]
            )
            if ok:
                mapping[i] = j
                inverse[j] = i
                if backtrack(pos + 1):
                    return True
                mapping[i] = -1
                inverse[j] = -1
        return False

    return backtrack(0)


def combinatorially_equivalent(P: Polytope, Q: Polytope) -> bool:
    """Face lattice isomorphism via the vertex-facet incidence graph."""
    if P.dim != Q.dim:
        return False
    if P.vertex_count() != Q.vertex_count() or P.facet_count() != Q.facet_count():
        return False
    if f_vector(P) != f_vector(Q):
        return False
    adj1, sides1 = _bipartite_graph(P)
    adj2, sides2 = _bipartite_graph(Q)
    colors1, colors2 = _refine_colors_joint(adj1, list(sides1), adj2, list(sides2))
    if sorted(colors1) != sorted(colors2):
        return False
    return _iso_search(adj1, adj2, colors1, colors2)


def polar_dual(P: Polytope) -> Polytope:
    """Polar dual of a full-dimensional polytope with 0 in its interior."""
    if P.dim != P.ambient_dim:
        raise ValueError("polar dual requires a full-dimensional polytope")
    for n, c in P.facets:
        if c <= 0:
            raise ValueError("origin is not strictly interior")
    return hull([vscale(Fraction(1) / c, vector(n)) for n, c in P.facets])


def project(P: Polytope, coords) -> Polytope:
    """Hull of the projection of P onto the listed coordinates."""
    coords = list(coords)
    return hull([tuple(v[i] for i in coords) for v in P.vertices])
