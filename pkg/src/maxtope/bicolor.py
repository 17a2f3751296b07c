"""Dual-graph bicolorings and vertex-count bounds for hulls of zonotope pairs.

Facets of P are the nodes; a cell collects the facets through one vertex
of P. A bicoloring is valid when both color classes stay connected inside
every cell, and the number of bicolored cells controls the vertex count
of conv(P1 u P2) for normally equivalent pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .polytope import Polytope, f_vector, face_lattice, hull, minkowski_sum
from .ratgeom import nullspace, primitive_ray, vector


@dataclass(frozen=True)
class DualGraph:
    """Facet adjacency of a polytope with per-vertex facet cells."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    cells: tuple[tuple[int, ...], ...]
    adjacency: tuple[tuple[int, ...], ...]


def dual_graph(P: Polytope) -> DualGraph:
    if P.dim < 2:
        raise ValueError("dual graph needs dimension at least 2")
    lat = face_lattice(P)
    nf = len(P.facets)
    edges = set()
    for fid in lat.faces_of_dim(P.dim - 2):
        mask = lat.masks[fid]
        holders = [i for i, inc in enumerate(P.incidence) if inc & mask == mask]
        assert len(holders) == 2, "a ridge lies in exactly two facets"
        edges.add((min(holders), max(holders)))
    adjacency = [[] for _ in range(nf)]
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    cells = tuple(
        tuple(i for i in range(nf) if P.incidence[i] >> v & 1)
        for v in range(P.vertex_count())
    )
    G = DualGraph(
        node_count=nf,
        edges=tuple(sorted(edges)),
        cells=cells,
        adjacency=tuple(tuple(sorted(a)) for a in adjacency),
    )
    assert _connected(G, tuple(range(nf)), set(range(nf)))
    for cell in cells:
        assert _connected(G, cell, set(cell)), "cells induce connected subgraphs"
    return G


def _connected(G: DualGraph, members, allowed) -> bool:
    members = [v for v in members if v in allowed]
    if not members:
        return True
    seen = {members[0]}
    stack = [members[0]]
    while stack:
        v = stack.pop()
        for w in G.adjacency[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return all(v in seen for v in members)


Bicoloring = tuple


def candidate_bicoloring(P1: Polytope, P2: Polytope) -> Bicoloring:
    """Color each facet by which side survives in conv(P1 u P2)."""
    from .separate import classify_faces

    typing = classify_faces(P1, P2)
    if any(lab == "c" for lab in typing.labels if lab is not None):
        raise ValueError("pair is not in general position")
    colors = []
    for i, lab in enumerate(typing.ray_labels):
        if lab not in ("a", "b"):
            raise ValueError(f"facet {i} has label {lab}; expected a or b")
        colors.append(lab)
    return tuple(colors)


def is_valid(G: DualGraph, coloring: Bicoloring) -> bool:
    if len(coloring) != G.node_count:
        raise ValueError("coloring must assign every dual vertex")
    for cell in G.cells:
        for color in ("a", "b"):
            members = [v for v in cell if coloring[v] == color]
            allowed = set(members)
            if not _connected(G, members, allowed):
                return False
    return True


def _bicolored_cells(G: DualGraph, coloring: Bicoloring) -> int:
    count = 0
    for cell in G.cells:
        seen = {coloring[v] for v in cell}
        if len(seen) == 2:
            count += 1
    return count


def count_vertices(P: Polytope, coloring: Bicoloring) -> int:
    """f0(P) plus the number of bicolored cells of a valid coloring."""
    G = dual_graph(P)
    if not is_valid(G, coloring):
        raise ValueError("coloring is not valid")
    return P.vertex_count() + _bicolored_cells(G, coloring)


class BudgetExhausted(RuntimeError):
    """Raised when the monocolored-cell budget is too small.

    Carries certified brackets: lower <= max bicolored <= upper.
    """

    def __init__(self, lower: int, upper: int):
        super().__init__(
            f"budget exhausted: {lower} <= max bicolored <= {upper}"
        )
        self.lower = lower
        self.upper = upper


def max_bicolored_dfs(G: DualGraph, budget: int | None = None):
    """Exact maximum of bicolored cells over valid bicolorings.

    Deepens a monocolored-cell allowance m = 0, 1, 2, ...; the first m
    admitting a valid coloring is optimal, giving len(cells) - m. Each
    level runs a branch-and-bound whose independent residual components
    are solved separately, pruning on connectivity feasibility and on
    cells already forced monochromatic.
    """
    ncells = len(G.cells)
    limit = ncells if budget is None else min(budget, ncells)
    for m in range(limit + 1):
        got = _search_mono_budget(G, m)
        if got is not None:
            coloring = got
            assert is_valid(G, coloring)
            return ncells - m, coloring
    if budget is not None and limit < ncells:
        raise BudgetExhausted(lower=0, upper=ncells - limit - 1)
    raise AssertionError("the all-a coloring is always valid")


def _search_mono_budget(G: DualGraph, m: int):
    """A valid coloring with at most m monocolored cells, or None.

    Sweeps the vertices in an order that keeps the frontier small: the
    already-colored vertices that still belong to an incomplete cell.
    Two partial colorings agreeing on the frontier admit exactly the
    same completions, so dynamic programming over frontier colorings
    keeps only the cheapest representative of each; states whose
    monocolored count already exceeds m are dropped. Dual graphs of
    3-polytopes are planar, so a greedy cell-by-cell sweep keeps the
    frontier around sqrt-of-n vertices wide.
    """
    n = G.node_count
    cells = [tuple(c) for c in G.cells]
    adj_sets = [set(a) for a in G.adjacency]
    clique = [
        all(w in adj_sets[v] for i, v in enumerate(cell) for w in cell[i + 1 :])
        for cell in cells
    ]
    induced = []
    for cell in cells:
        cset = set(cell)
        induced.append({v: [w for w in G.adjacency[v] if w in cset] for v in cell})

    order, pos = _sweep_order(cells, n)
    comp_pos = [max(pos[v] for v in cell) for cell in cells]
    completing: list[list[int]] = [[] for _ in range(n)]
    for ci, p in enumerate(comp_pos):
        completing[p].append(ci)
    retire = [pos[v] for v in range(n)]
    for ci, cell in enumerate(cells):
        for v in cell:
            retire[v] = max(retire[v], comp_pos[ci])
    frontier_after = [
        tuple(v for v in order[: step + 1] if retire[v] > step) for step in range(n)
    ]

    def eval_cell(ci: int, colmap: dict[int, str]) -> tuple[bool, bool]:
        """(is monocolored, satisfies per-color connectivity)."""
        cell = cells[ci]
        first = colmap[cell[0]]
        mono = all(colmap[u] == first for u in cell[1:])
        if mono or clique[ci]:
            return mono, True
        nbrs = induced[ci]
        for c in "ab":
            members = [u for u in cell if colmap[u] == c]
            if len(members) < 2:
                continue
            seen = {members[0]}
            stack = [members[0]]
            while stack:
                u = stack.pop()
                for w in nbrs[u]:
                    if colmap[w] == c and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(members):
                return mono, False
        return mono, True

    states: dict[tuple, int] = {(): 0}
    parents: list[dict[tuple, tuple]] = []
    for step, v in enumerate(order):
        prev_front = frontier_after[step - 1] if step else ()
        cur_front = frontier_after[step]
        branches = ("a",) if step == 0 else ("a", "b")
        new_states: dict[tuple, int] = {}
        par: dict[tuple, tuple] = {}
        for key, mono in states.items():
            colmap = dict(zip(prev_front, key))
            for c in branches:
                colmap[v] = c
                total = mono
                ok = True
                for ci in completing[step]:
                    is_mono, valid = eval_cell(ci, colmap)
                    if not valid:
                        ok = False
                        break
                    total += is_mono
                if not ok or total > m:
                    continue
                nk = tuple(colmap[u] for u in cur_front)
                old = new_states.get(nk)
                if old is None or total < old:
                    new_states[nk] = total
                    par[nk] = (key, c)
        parents.append(par)
        states = new_states
        if not states:
            return None

    key = min(states, key=lambda k: states[k])
    coloring: list[str] = [""] * n
    for step in range(n - 1, -1, -1):
        key, c = parents[step][key]
        coloring[order[step]] = c
    return tuple(coloring)


def _sweep_order(cells, n: int) -> tuple[list[int], list[int]]:
    """Vertex order for the frontier sweep, with its position index.

    Cells are taken greedily, preferring the one introducing the fewest
    new vertices and, among those, the one overlapping the processed
    region most; vertices are ordered by first appearance. This walks
    the cell complex outward from one cell, so a vertex's cells finish
    soon after the vertex appears.
    """
    seen: set[int] = set()
    remaining = set(range(len(cells)))
    cell_seq: list[int] = []
    while remaining:
        best = min(
            remaining,
            key=lambda ci: (
                sum(1 for v in cells[ci] if v not in seen),
                -sum(1 for v in cells[ci] if v in seen),
                ci,
            ),
        )
        remaining.discard(best)
        cell_seq.append(best)
        seen.update(cells[best])
    order: list[int] = []
    pos: list[int] = [-1] * n
    for ci in cell_seq:
        for v in cells[ci]:
            if pos[v] < 0:
                pos[v] = len(order)
                order.append(v)
    for v in range(n):
        if pos[v] < 0:
            pos[v] = len(order)
            order.append(v)
    return order, pos


def generic_zonotope(d: int, n: int, seed: int, max_retries: int = 32) -> Polytope:
    """Zonotope of n seeded random integer zone vectors, simple by retry.

    Simplicity (no d of the zones linearly dependent) is what the generic
    bounds refer to; degenerate draws are resampled with seed + 1.
    """
    from .ratgeom import rank
    import itertools

    for attempt in range(max_retries):
        rng = random.Random(seed + attempt)
        zones = []
        ok = True
        for _ in range(n):
            v = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(d))
            zones.append(v)
        for sub in itertools.combinations(zones, min(d, n)):
            if rank(sub) < min(d, n):
                ok = False
                break
        if not ok:
            continue
        Z = hull([tuple(Fraction(0) for _ in range(d))])
        for z in zones:
            Z = minkowski_sum(Z, hull([z, tuple(-x for x in z)]))
        return Z
    raise RuntimeError(f"no simple zonotope with (d,n)=({d},{n}) in {max_retries} draws")


@dataclass(frozen=True)
class ExtremalSample:
    """Best draw from a zonoboxtope sampling run."""

    polytope: Polytope
    vertex_count: int
    trial_index: int
    segments: tuple
    a: tuple
    b: tuple


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def _sample_trial(d: int, n: int, trial_seed: int):
    rng = random.Random(trial_seed)
    segments = []
    dirs = []
    while len(segments) < n:
        v = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(d))
        if not any(v):
            continue
        ray = primitive_ray(v)
        norm = max(ray, tuple(-x for x in ray))
        if norm in dirs:
            continue
        dirs.append(norm)
        p = tuple(-x / 2 for x in v)
        q = tuple(x / 2 for x in v)
        segments.append((p, q))
    half = n // 2
    a, b = [], []
    for i in range(n):
        extra = Fraction(rng.randint(1, 1000), 1000)
        if i < half:
            a.append(1 + extra)
            b.append(Fraction(1))
        else:
            a.append(Fraction(1))
            b.append(1 + extra)
    return tuple(segments), tuple(a), tuple(b)


@dataclass(frozen=True)
class ArrangementScan:
    """Chamber census of a zonoboxtope's direction arrangement.

    generic means the directions were simple (every d-1 of them span a
    unique line missed by the rest) and the support difference was nonzero
    on every chamber ray; only then does vertex_count equal the true f0.
    """

    chamber_count: int
    split_count: int
    generic: bool

    def vertex_count(self) -> int:
        return self.chamber_count + self.split_count


def scan_zonoboxtope(segments, a, b) -> ArrangementScan:
    """Vertex count of conv(sum a_i I_i u sum b_i I_i) without a hull.

    Every vertex of the common zonotope survives in the hull, and a vertex
    doubles exactly when the support difference delta changes sign on the
    extreme rays of its normal-fan chamber, so f0 = chambers + split
    chambers. Chambers are recovered from the arrangement rays (kernels of
    the (d-1)-subsets of directions) by completing each ray's sign vector
    in all 2^(d-1) ways. When the directions are not simple, delta
    vanishes on some ray, or a scaling is not strictly positive (a zero
    collapses distinct chambers to one endpoint sum), the census is
    unreliable and generic comes back False; callers should fall back to
    an explicit hull.
    """
    n = len(segments)
    dirs = [tuple(q - p for p, q in zip(*seg)) for seg in segments]
    d = len(dirs[0])
    if not 2 <= d <= n:
        raise ValueError("scan expects 2 <= d <= n")
    if any(x <= 0 for x in a) or any(x <= 0 for x in b):
        return ArrangementScan(0, 0, False)
    w = [x - y for x, y in zip(a, b)]
    t = [Fraction(0)] * d
    for (p, q), wi in zip(segments, w):
        for r in range(d):
            t[r] += wi * (p[r] + q[r]) / 2

    generic = True
    rays = []
    for sub in combinations(range(n), d - 1):
        kern = nullspace([dirs[i] for i in sub])
        if len(kern) != 1:
            generic = False
            continue
        u = primitive_ray(kern[0])
        for ray in (u, tuple(-x for x in u)):
            signs = []
            for k in range(n):
                dot = sum(c * x for c, x in zip(dirs[k], ray))
                if dot == 0 and k not in sub:
                    generic = False
                signs.append(0 if dot == 0 else (1 if dot > 0 else -1))
            delta = sum(c * x for c, x in zip(t, ray))
            for k in range(n):
                dot = sum(c * x for c, x in zip(dirs[k], ray))
                delta += w[k] * abs(dot) / 2
            if delta == 0:
                generic = False
            rays.append((tuple(signs), sub, 1 if delta > 0 else -1))

    chambers = set()
    for signs, sub, _ in rays:
        for fill in product((1, -1), repeat=len(sub)):
            s = list(signs)
            for j, k in zip(fill, sub):
                s[k] = j
            chambers.add(tuple(s))
    split = 0
    for s in chambers:
        seen = set()
        for signs, _, dsign in rays:
            if all(x == 0 or x == y for x, y in zip(signs, s)):
                seen.add(dsign)
        if len(seen) == 2:
            split += 1
    return ArrangementScan(len(chambers), split, generic)


def build_zonoboxtope(segments, a, b) -> Polytope:
    """conv(sum a_i I_i u sum b_i I_i) from segment endpoints."""
    n = len(segments)
    points = []
    for coeffs in (a, b):
        sums = [tuple(Fraction(0) for _ in segments[0][0])]
        for (p, q), w in zip(segments, coeffs):
            wp = tuple(w * x for x in p)
            wq = tuple(w * x for x in q)
            sums = [tuple(s + t for s, t in zip(base, end)) for base in sums for end in (wp, wq)]
        points.extend(sums)
    return hull(points)


def sample_extremal(d: int, n: int, trials: int, seed: int) -> tuple[Polytope, int]:
    """Best vertex count over seeded zonoboxtope draws.

    The first floor(n/2) zones get their extra scaling on the a side, the
    rest on the b side; per-trial seeds are derived so runs are
    reproducible and trials independent.
    """
    best = sample_extremal_detail(d, n, trials, seed)
    return best.polytope, best.vertex_count


def _trial_count(d: int, n: int, trial_seed: int) -> int:
    segments, a, b = _sample_trial(d, n, trial_seed)
    scan = scan_zonoboxtope(segments, a, b)
    if scan.generic:
        return scan.vertex_count()
    return build_zonoboxtope(segments, a, b).vertex_count()


def sample_extremal_detail(d: int, n: int, trials: int, seed: int) -> ExtremalSample:
    if d > n:
        raise ValueError("sampling expects d <= n")
    if trials < 1:
        raise ValueError("at least one trial required")
    best_count, best_trial = -1, -1
    for trial in range(trials):
        count = _trial_count(d, n, _trial_seed(seed, trial))
        if count > best_count:
            best_count, best_trial = count, trial
    segments, a, b = _sample_trial(d, n, _trial_seed(seed, best_trial))
    P = build_zonoboxtope(segments, a, b)
    assert P.vertex_count() == best_count, "chamber census disagrees with hull"
    return ExtremalSample(P, best_count, best_trial, segments, a, b)
