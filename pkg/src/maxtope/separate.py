"""Face classification and separating complexes for hulls of polytope pairs.

For normally equivalent P1, P2 the faces of Q = conv(P1 u P2) sort into
faces surviving from P1, from P2, and mixed faces spanning both. The
normal cones of the mixed faces form a subfan whose cross-section is a
cell complex separating the two polytopes' face regions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .polytope import (
    FaceLattice,
    NormalFan,
    Polytope,
    conv_union,
    face_lattice,
    normal_fan,
    normally_equivalent,
    support,
    translate,
)
from .ratgeom import nullspace, rank, solve_affine_hull, vector, vsub


@dataclass(frozen=True)
class FaceTyping:
    """Labels for all proper face pairs of a normally equivalent pair.

    labels[i] applies to face i of face_lattice(p1) and is one of
    'a' (P1 side strictly higher), 'b' (P2 side), 'c' (equal support,
    equal affine span), 'd' (equal support, distinct spans), or 'split'
    (the support difference changes sign inside the cone, so the pair
    contributes a P1 face, a P2 face, and a mixed face to the hull).
    """

    p1: Polytope
    p2: Polytope
    fan: NormalFan
    facet_map: tuple[int, ...]
    ray_support: tuple[tuple[Fraction, Fraction], ...]
    labels: tuple[str | None, ...]
    ray_labels: tuple[str, ...]
    vertex_labels: tuple[str, ...]

    def label_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for lab in self.labels:
            if lab is not None:
                counts[lab] = counts.get(lab, 0) + 1
        return counts


def _match_facets(P1: Polytope, P2: Polytope) -> tuple[int, ...]:
    by_normal = {f[0]: j for j, f in enumerate(P2.facets)}
    try:
        return tuple(by_normal[f[0]] for f in P1.facets)
    except KeyError:
        raise ValueError("polytopes are not normally equivalent") from None


def _lineality_dirs(P: Polytope) -> tuple:
    if P.dim == P.ambient_dim:
        return ()
    if not P.basis:
        gens = []
        for j in range(P.ambient_dim):
            e = tuple(Fraction(int(i == j)) for i in range(P.ambient_dim))
            gens.append(e)
            gens.append(tuple(-x for x in e))
        return tuple(gens)
    gens = []
    for v in nullspace(P.basis):
        gens.append(v)
        gens.append(tuple(-x for x in v))
    return tuple(gens)


def _span_equal(pts1, pts2) -> bool:
    d1, basis1, base1 = solve_affine_hull(pts1)
    d2, basis2, base2 = solve_affine_hull(pts2)
    if d1 != d2:
        return False
    probe = list(basis1)
    for v in list(basis2) + [vsub(base2, base1)]:
        if rank(probe + [v]) != d1:
            return False
    return True


def classify_faces(P1: Polytope, P2: Polytope) -> FaceTyping:
    """Label every proper face pair through the shared normal fan."""
    if not normally_equivalent(P1, P2):
        raise ValueError("polytopes are not normally equivalent")
    perm = _match_facets(P1, P2)
    ray_support = tuple(
        (P1.facets[i][1], P2.facets[perm[i]][1]) for i in range(len(P1.facets))
    )
    ray_delta = tuple(h1 - h2 for h1, h2 in ray_support)
    lin_delta = tuple(
        support(P1, l)[0] - support(P2, l)[0] for l in _lineality_dirs(P1)
    )
    lat = face_lattice(P1)
    labels: list[str | None] = [None] * len(lat.masks)
    for fid, mask in enumerate(lat.masks):
        if fid == lat.top or fid == lat.empty:
            continue
        tight = [i for i, inc in enumerate(P1.incidence) if inc & mask == mask]
        deltas = [ray_delta[i] for i in tight] + list(lin_delta)
        pos = any(x > 0 for x in deltas)
        neg = any(x < 0 for x in deltas)
        if pos and neg:
            labels[fid] = "split"
        elif pos:
            labels[fid] = "a"
        elif neg:
            labels[fid] = "b"
        else:
            mask2 = -1
            for i in tight:
                mask2 &= P2.incidence[perm[i]]
            pts1 = [P1.vertices[j] for j in range(P1.vertex_count()) if mask >> j & 1]
            pts2 = [P2.vertices[j] for j in range(P2.vertex_count()) if mask2 >> j & 1]
            labels[fid] = "c" if _span_equal(pts1, pts2) else "d"
    facet_ids = {}
    vertex_ids = {}
    for fid, mask in enumerate(lat.masks):
        if lat.dims[fid] == P1.dim - 1:
            tight = [i for i, inc in enumerate(P1.incidence) if inc & mask == mask]
            if len(tight) == 1:
                facet_ids[tight[0]] = fid
        if lat.dims[fid] == 0:
            vertex_ids[mask.bit_length() - 1] = fid
    ray_labels = tuple(labels[facet_ids[i]] for i in range(len(P1.facets)))
    vertex_labels = tuple(labels[vertex_ids[j]] for j in range(P1.vertex_count()))
    return FaceTyping(
        p1=P1,
        p2=P2,
        fan=normal_fan(P1),
        facet_map=perm,
        ray_support=ray_support,
        labels=tuple(labels),
        ray_labels=ray_labels,
        vertex_labels=vertex_labels,
    )


def in_general_position(P1: Polytope, P2: Polytope) -> bool:
    """No corresponding face pair shares its affine span."""
    typing = classify_faces(P1, P2)
    return all(lab != "c" for lab in typing.labels if lab is not None)


def hull_fan(P1: Polytope, P2: Polytope) -> NormalFan:
    """Normal fan of conv(P1 u P2), the coarsest common refinement."""
    if not normally_equivalent(P1, P2):
        raise ValueError("polytopes are not normally equivalent")
    return normal_fan(conv_union(P1, P2))


@dataclass(frozen=True)
class SeparatingComplex:
    """Mixed-face normal cones of Q = conv(P1 u P2) with their cross-section.

    Each mixed proper face of Q of dimension j yields a cross-section cell
    of dimension dim(Q) - j - 1; cells are identified by their face ids in
    face_lattice(hull).
    """

    hull: Polytope
    cell_face_ids: tuple[int, ...]
    cell_dims: tuple[int, ...]
    f_vector: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    euler_characteristic: int

    def component_count(self) -> int:
        return len(self.components)

    def component_euler(self, which: int) -> int:
        dims = dict(zip(self.cell_face_ids, self.cell_dims))
        return sum((-1) ** dims[fid] for fid in self.components[which])


def separating_fan(P1: Polytope, P2: Polytope) -> SeparatingComplex:
    """Cross-section complex of the mixed-face cones of conv(P1 u P2)."""
    if not normally_equivalent(P1, P2):
        raise ValueError("polytopes are not normally equivalent")
    Q = conv_union(P1, P2)
    lat = face_lattice(Q)
    ray_mixed = tuple(
        support(P1, vector(n))[0] == support(P2, vector(n))[0]
        for n, _ in Q.facets
    )
    lin_zero = all(
        support(P1, l)[0] == support(P2, l)[0] for l in _lineality_dirs(Q)
    )
    mixed_ids = []
    dims = []
    for fid, mask in enumerate(lat.masks):
        if fid == lat.top or fid == lat.empty:
            continue
        tight = [i for i, inc in enumerate(Q.incidence) if inc & mask == mask]
        if lin_zero and all(ray_mixed[i] for i in tight):
            mixed_ids.append(fid)
            dims.append(Q.dim - lat.dims[fid] - 1)
    id_set = set(mixed_ids)
    parent = {fid: fid for fid in mixed_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fid in mixed_ids:
        for child in lat.covers[fid]:
            if child in id_set:
                ra, rb = find(fid), find(child)
                if ra != rb:
                    parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for fid in mixed_ids:
        groups.setdefault(find(fid), []).append(fid)
    components = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
    max_dim = max(dims, default=-1)
    fvec = tuple(sum(1 for x in dims if x == k) for k in range(max_dim + 1))
    euler = sum((-1) ** x for x in dims)
    return SeparatingComplex(
        hull=Q,
        cell_face_ids=tuple(mixed_ids),
        cell_dims=tuple(dims),
        f_vector=fvec,
        components=components,
        euler_characteristic=euler,
    )


def separating_complex_stats(P1: Polytope, P2: Polytope):
    """(f-vector, component count, Euler characteristic) in general position."""
    if not in_general_position(P1, P2):
        raise ValueError("pair is not in general position")
    sc = separating_fan(P1, P2)
    return sc.f_vector, sc.component_count(), sc.euler_characteristic


def perturb_to_general_position(P1: Polytope, P2: Polytope, seed: int):
    """Translate P2 by a small exact rational vector into general position.

    A prior strict label may soften to split when a neighboring tie
    resolves, but never jumps to the opposite side. Direction candidates
    start with normals of type-(c) facets and fall back to seeded random
    integer vectors; the step size shrinks as 1/2^k.
    """
    if P1.dim != P1.ambient_dim or P2.dim != P2.ambient_dim:
        raise ValueError("perturbation expects full-dimensional polytopes")
    typing = classify_faces(P1, P2)
    if all(lab != "c" for lab in typing.labels if lab is not None):
        return P1, P2
    rng = random.Random(seed)
    directions = [
        vector(P1.facets[i][0])
        for i in range(len(P1.facets))
        if typing.ray_labels[i] == "c"
    ]
    while len(directions) < 8:
        v = tuple(Fraction(rng.randint(-9, 9)) for _ in range(P1.ambient_dim))
        if any(v):
            directions.append(v)
    kept = {
        fid: lab for fid, lab in enumerate(typing.labels) if lab in ("a", "b")
    }
    for v in directions:
        for k in (1, 2, 4, 8, 16, 32, 64):
            eps = Fraction(1, 2**k)
            P2p = translate(P2, tuple(eps * x for x in v))
            new_typing = classify_faces(P1, P2p)
            if any(lab == "c" for lab in new_typing.labels if lab is not None):
                continue
            if all(
                new_typing.labels[fid] in (lab, "split")
                for fid, lab in kept.items()
            ):
                return P1, P2p
    raise RuntimeError("exhausted retries without reaching general position")
