"""Command line for building, analyzing, and replaying polytope results.

Reports are JSON on stdout and deterministic for fixed (command, inputs,
seed); wall time goes to stderr so reports stay byte-identical across
runs. Exit codes: 0 success, 1 reproduction mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .bicolor import (
    BudgetExhausted,
    ExtremalSample,
    _sample_trial,
    _trial_count,
    _trial_seed,
    build_zonoboxtope,
    dual_graph,
    max_bicolored_dfs,
    sample_extremal_detail,
)
from .candidate import build_candidate, make_candidate, rank_condition, realizability
from .extremal import (
    build_Bd,
    build_Bd_prime,
    extremal_2d_zonoboxtope,
    f_polynomial_Bd,
    realize_Bd_network,
    realize_Bd_prime_network,
)
from .network import (
    build_polytope,
    first_layer_cone_pointed,
    make_network,
    sample_generic_network,
    sample_network,
)
from .polytope import (
    Polytope,
    combinatorially_equivalent,
    f_vector,
    hull,
    is_cubical,
    minkowski_sum,
    polar_dual,
)
from .separate import classify_faces, in_general_position, separating_complex_stats


class InputError(Exception):
    """User-facing input problem; mapped to exit code 2."""


# ---------------------------------------------------------------------------
# rational and polytope JSON codecs

def _rat_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _parse_rat(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"rational entries must be integers or strings, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}: {exc}") from None
    raise InputError(f"rational entries must be integers or strings, got {value!r}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _parse_vector(row, what: str) -> tuple[Fraction, ...]:
    if not isinstance(row, list) or not row:
        raise InputError(f"{what} must be a non-empty list")
    return tuple(_parse_rat(x) for x in row)


def _parse_matrix(rows, what: str):
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{what} must be a non-empty list of rows")
    out = tuple(_parse_vector(r, f"{what} row") for r in rows)
    if len({len(r) for r in out}) != 1:
        raise InputError(f"{what} rows differ in length")
    return out


def polytope_to_json(P: Polytope) -> dict:
    return {
        "ambient_dim": P.ambient_dim,
        "vertices": [[_rat_str(c) for c in v] for v in P.vertices],
        "facets": [
            {"normal": [_rat_str(c) for c in n], "offset": _rat_str(o)}
            for n, o in P.facets
        ],
    }


def polytope_from_json(data) -> Polytope:
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("polytope JSON needs a 'vertices' key")
    verts = _parse_matrix(data["vertices"], "vertices")
    if "ambient_dim" in data and data["ambient_dim"] != len(verts[0]):
        raise InputError("ambient_dim disagrees with vertex length")
    # Facets are derived data; the hull recomputes them from scratch.
    return hull(verts)


def network_to_json(net) -> dict:
    return {
        "type": list(net.net_type.dims),
        "A": [[[_rat_str(x) for x in row] for row in Ak] for Ak in net.A],
        "B": [[[_rat_str(x) for x in row] for row in Bk] for Bk in net.B],
        "C": [_rat_str(x) for x in net.C],
    }


def network_from_json(data):
    if not isinstance(data, dict):
        raise InputError("network JSON must be an object")
    try:
        dims = [int(x) for x in data["type"]]
        A = [_parse_matrix(Ak, "A") for Ak in data["A"]]
        B = [_parse_matrix(Bk, "B") for Bk in data["B"]]
        C = _parse_vector(data["C"], "C")
    except (KeyError, TypeError) as exc:
        raise InputError(f"network JSON is missing or malformed: {exc}") from None
    try:
        return make_network(dims, A, B, C)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def candidate_from_json(data):
    if not isinstance(data, dict):
        raise InputError("candidate JSON must be an object")
    try:
        d, n, m = int(data["d"]), int(data["n"]), int(data["m"])
        mats = {k: _parse_matrix(data[k], k) for k in ("u", "v", "w", "s", "t")}
    except (KeyError, TypeError) as exc:
        raise InputError(f"candidate JSON is missing or malformed: {exc}") from None
    try:
        return make_candidate(d, n, m, mats["u"], mats["v"], mats["w"], mats["s"], mats["t"])
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# OFF export (display only, decimal approximations)

def off_string(P: Polytope) -> str:
    if P.ambient_dim != 3 or P.dim != 3:
        raise InputError("OFF export needs a full-dimensional polytope in R^3")
    fv = f_vector(P)
    verts = [tuple(float(c) for c in v) for v in P.vertices]
    lines = [
        "OFF",
        "# display-only decimal approximation of exact rational coordinates",
        f"{fv[0]} {fv[2]} {fv[1]}",
    ]
    for v in verts:
        lines.append(" ".join("%.12g" % c for c in v))
    for (normal, _), inc in zip(P.facets, P.incidence):
        ids = [i for i in range(len(verts)) if inc >> i & 1]
        nf = tuple(float(c) for c in normal)
        # Orthonormal frame (u, w, n) so the cycle is counterclockwise
        # seen from outside.
        axis = min(range(3), key=lambda i: abs(nf[i]))
        e = [0.0, 0.0, 0.0]
        e[axis] = 1.0
        u = (nf[1] * e[2] - nf[2] * e[1],
             nf[2] * e[0] - nf[0] * e[2],
             nf[0] * e[1] - nf[1] * e[0])
        w = (nf[1] * u[2] - nf[2] * u[1],
             nf[2] * u[0] - nf[0] * u[2],
             nf[0] * u[1] - nf[1] * u[0])
        cx = [sum(verts[i][c] for i in ids) / len(ids) for c in range(3)]
        ids.sort(key=lambda i: math.atan2(
            sum((verts[i][c] - cx[c]) * w[c] for c in range(3)),
            sum((verts[i][c] - cx[c]) * u[c] for c in range(3))))
        lines.append(str(len(ids)) + " " + " ".join(str(i) for i in ids))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class RunReport:
    """One CLI invocation: command, inputs, seed, outputs, wall time.

    The wall time is printed to stderr only; the JSON payload depends on
    (command, inputs, seed) alone and is byte-identical across runs.
    """

    command: str
    inputs: dict
    seed: int | None
    outputs: dict
    wall_time: float = 0.0

    def json_str(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "outputs": self.outputs,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _polytope_summary(P: Polytope) -> dict:
    return {
        "ambient_dim": P.ambient_dim,
        "dim": P.dim,
        "f_vector": list(f_vector(P)),
    }


# ---------------------------------------------------------------------------
# subcommands

def _cmd_build(args) -> tuple[int, RunReport]:
    if args.network:
        P = build_polytope(network_from_json(_load_json(args.network)))
        inputs = {"network": args.network, "out": args.out}
    else:
        P = build_candidate(candidate_from_json(_load_json(args.candidate)))
        inputs = {"candidate": args.candidate, "out": args.out}
    if args.out:
        _write_text(args.out, json.dumps(polytope_to_json(P), indent=2) + "\n")
    return 0, RunReport("build", inputs, None, _polytope_summary(P))


def _cmd_analyze(args) -> tuple[int, RunReport]:
    P = polytope_from_json(_load_json(args.polytope))
    inputs = {"polytope": args.polytope, "fvector": args.fvector,
              "cubical": args.cubical, "dual": args.dual, "off": args.off}
    outputs: dict = {"ambient_dim": P.ambient_dim, "dim": P.dim}
    if args.fvector:
        outputs["f_vector"] = list(f_vector(P))
    if args.cubical:
        outputs["cubical"] = is_cubical(P)
    if args.dual:
        try:
            outputs["dual_f_vector"] = list(f_vector(polar_dual(P)))
        except ValueError as exc:
            raise InputError(f"polar dual: {exc}") from None
    if args.off:
        _write_text(args.off, off_string(P))
        outputs["off"] = args.off
    return 0, RunReport("analyze", inputs, None, outputs)


def _cmd_separating(args) -> tuple[int, RunReport]:
    P1 = polytope_from_json(_load_json(args.p1))
    P2 = polytope_from_json(_load_json(args.p2))
    try:
        typing = classify_faces(P1, P2)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    outputs = {
        "ray_labels": list(typing.ray_labels),
        "cone_split": [lab == "split" for lab in typing.vertex_labels],
        "label_counts": typing.label_counts(),
        "general_position": in_general_position(P1, P2),
    }
    if outputs["general_position"]:
        fv, comps, euler = separating_complex_stats(P1, P2)
        outputs["complex"] = {
            "f_vector": list(fv),
            "components": comps,
            "euler_characteristic": euler,
        }
    return 0, RunReport("separating", {"p1": args.p1, "p2": args.p2}, None, outputs)


def _cmd_bicolor_bound(args) -> tuple[int, RunReport]:
    data = _load_json(args.zonotope)
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError("zonotope JSON needs a 'generators' key")
    gens = _parse_matrix(data["generators"], "generators")
    d = len(gens[0])
    Z = hull([tuple(Fraction(0) for _ in range(d))])
    for g in gens:
        Z = minkowski_sum(Z, hull([tuple(Fraction(0) for _ in range(d)), g]))
    try:
        G = dual_graph(Z)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    inputs = {"zonotope": args.zonotope, "budget": args.budget}
    outputs: dict = {"facets": G.node_count, "cells": len(G.cells)}
    try:
        value, coloring = max_bicolored_dfs(G, budget=args.budget)
        outputs["max_bicolored"] = value
        outputs["witness_coloring"] = list(coloring)
    except BudgetExhausted as exc:
        outputs["budget_exhausted"] = True
        outputs["lower"] = exc.lower
        outputs["upper"] = exc.upper
    return 0, RunReport("bicolor-bound", inputs, None, outputs)


def _count_task(task) -> int:
    d, n, trial_seed = task
    return _trial_count(d, n, trial_seed)


def _sample_best(d: int, n: int, trials: int, seed: int, jobs: int) -> ExtremalSample:
    if jobs <= 1:
        return sample_extremal_detail(d, n, trials, seed)
    tasks = [(d, n, _trial_seed(seed, t)) for t in range(trials)]
    chunk = max(1, trials // (8 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        counts = list(pool.map(_count_task, tasks, chunksize=chunk))
    best_trial = max(range(trials), key=lambda t: (counts[t], -t))
    segments, a, b = _sample_trial(d, n, _trial_seed(seed, best_trial))
    P = build_zonoboxtope(segments, a, b)
    assert P.vertex_count() == counts[best_trial], "chamber census disagrees with hull"
    return ExtremalSample(P, counts[best_trial], best_trial, segments, a, b)


def _cmd_sample(args) -> tuple[int, RunReport]:
    if args.trials < 1 or args.jobs < 1:
        raise InputError("--trials and --jobs must be positive")
    try:
        best = _sample_best(args.d, args.n, args.trials, args.seed, args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    inputs = {"d": args.d, "n": args.n, "trials": args.trials, "out": args.out}
    outputs = {
        "best_f0": best.vertex_count,
        "trial_index": best.trial_index,
        "witness": polytope_to_json(best.polytope),
        "witness_segments": [
            [[_rat_str(c) for c in p], [_rat_str(c) for c in q]]
            for p, q in best.segments
        ],
        "witness_a": [_rat_str(x) for x in best.a],
        "witness_b": [_rat_str(x) for x in best.b],
    }
    if args.out:
        _write_text(args.out, json.dumps(polytope_to_json(best.polytope), indent=2) + "\n")
    return 0, RunReport("sample-zonoboxtope", inputs, args.seed, outputs)


def _cmd_realizability(args) -> tuple[int, RunReport]:
    p = candidate_from_json(_load_json(args.candidate))
    verdict, net = realizability(p)
    holds, rk = rank_condition(p)
    outputs = {
        "verdict": verdict,
        "rank_condition": holds,
        "rank": rk,
        "witness_network": network_to_json(net) if net is not None else None,
    }
    return 0, RunReport("realizability", {"candidate": args.candidate}, None, outputs)


def _cmd_extremal(args) -> tuple[int, RunReport]:
    if args.family in ("bd", "bdprime"):
        if args.d is None:
            raise InputError(f"extremal {args.family} needs --d")
        builder = build_Bd if args.family == "bd" else build_Bd_prime
        try:
            P = builder(args.d)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        inputs = {"family": args.family, "d": args.d, "out": args.out}
    else:
        if args.n is None:
            raise InputError("extremal zonobox2d needs --n")
        try:
            P = extremal_2d_zonoboxtope(args.n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        inputs = {"family": args.family, "n": args.n, "out": args.out}
    outputs = _polytope_summary(P)
    outputs["polytope"] = polytope_to_json(P)
    if args.out:
        _write_text(args.out, json.dumps(polytope_to_json(P), indent=2) + "\n")
    return 0, RunReport("extremal", inputs, None, outputs)


def _cmd_export_off(args) -> tuple[int, RunReport]:
    P = polytope_from_json(_load_json(args.polytope))
    _write_text(args.out, off_string(P))
    outputs = {"off": args.out, "f_vector": list(f_vector(P))}
    return 0, RunReport("export-off", {"polytope": args.polytope, "out": args.out},
                        None, outputs)


# ---------------------------------------------------------------------------
# bundled reproductions

def _repro_cor57() -> tuple[bool, dict]:
    rows = []
    for d in range(2, 7):
        coeffs = list(f_polynomial_Bd(d).coefficients)
        fv = list(f_vector(build_Bd(d))) + [1]
        rows.append({"d": d, "coefficients": coeffs, "f_vector": fv,
                     "match": coeffs == fv})
    return all(r["match"] for r in rows), {"checks": rows}


def _repro_thm31() -> tuple[bool, dict]:
    rows = []
    for d in range(2, 6):
        got = build_polytope(realize_Bd_network(d))
        rows.append({"family": "bd", "d": d,
                     "match": combinatorially_equivalent(got, build_Bd(d))})
    for d in (3, 5):
        data = realize_Bd_prime_network(d)
        got = build_polytope(data.to_network())
        rows.append({"family": "bdprime", "d": d,
                     "match": combinatorially_equivalent(got, build_Bd_prime(d))})
    return all(r["match"] for r in rows), {"checks": rows}


def _repro_thm61() -> tuple[bool, dict]:
    rows = []
    for n in range(2, 9):
        edges = f_vector(extremal_2d_zonoboxtope(n))[1]
        want = 2 * n + 4 * (n // 2)
        rows.append({"n": n, "edges": edges, "want": want, "match": edges == want})
    return all(r["match"] for r in rows), {"checks": rows}


def _repro_prop64() -> tuple[bool, dict]:
    targets = {3: 16, 4: 26, 5: 44, 6: 60}
    rows = []
    for n, want in targets.items():
        best = sample_extremal_detail(3, n, 1000, 42)
        rows.append({"n": n, "target": want, "best_f0": best.vertex_count,
                     "trial_index": best.trial_index,
                     "match": best.vertex_count >= want})
    return all(r["match"] for r in rows), {"seed": 42, "trials": 1000, "checks": rows}


def _repro_prop74() -> tuple[bool, dict]:
    rows = []
    for k in range(20):
        net, seed_used, retries = sample_generic_network(
            (3, 2, 3), 1000 * k, predicate=first_layer_cone_pointed)
        P = build_polytope(net)
        hexes = sum(1 for inc in P.incidence if bin(inc).count("1") == 6)
        cubical = is_cubical(P)
        rows.append({"seed": seed_used, "retries": retries, "cubical": cubical,
                     "hexagons": hexes,
                     "match": not cubical and hexes in (2, 4)})
    return all(r["match"] for r in rows), {"checks": rows}


_REPRODUCTIONS = {
    "cor5.7": _repro_cor57,
    "thm3.1": _repro_thm31,
    "thm6.1": _repro_thm61,
    "prop6.4": _repro_prop64,
    "prop7.4": _repro_prop74,
}


def _cmd_reproduce(args) -> tuple[int, RunReport]:
    if args.result_id not in _REPRODUCTIONS:
        known = ", ".join(sorted(_REPRODUCTIONS))
        raise InputError(f"unknown result id {args.result_id!r}; known ids: {known}")
    passed, outputs = _REPRODUCTIONS[args.result_id]()
    outputs["passed"] = passed
    return (0 if passed else 1), RunReport(
        "reproduce", {"id": args.result_id}, None, outputs)


# ---------------------------------------------------------------------------
# parser and entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxtope",
        description="Exact polyhedral computations for maxout network polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="polytope of a network or candidate file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--network", metavar="FILE")
    g.add_argument("--candidate", metavar="FILE")
    p.add_argument("--out", metavar="FILE", help="write polytope JSON here")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("analyze", help="f-vector, cubicality, dual, OFF export")
    p.add_argument("polytope", help="polytope JSON file")
    p.add_argument("--fvector", action="store_true")
    p.add_argument("--cubical", action="store_true")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--off", metavar="FILE", help="write an OFF snapshot here")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("separating", help="face typing and separating complex")
    p.add_argument("p1", help="polytope JSON file")
    p.add_argument("p2", help="polytope JSON file")
    p.set_defaults(handler=_cmd_separating)

    p = sub.add_parser("bicolor-bound", help="max bicolored cells of a zonotope dual")
    p.add_argument("--zonotope", metavar="FILE", required=True,
                   help="JSON with a 'generators' matrix")
    p.add_argument("--budget", type=int, default=None,
                   help="monocolored-cell allowance; exhaustion reports bounds")
    p.set_defaults(handler=_cmd_bicolor_bound)

    p = sub.add_parser("sample-zonoboxtope", help="seeded search for large f0")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for independent trials")
    p.add_argument("--out", metavar="FILE", help="write the witness polytope here")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("realizability", help="rank test and witness network search")
    p.add_argument("--candidate", metavar="FILE", required=True)
    p.set_defaults(handler=_cmd_realizability)

    p = sub.add_parser("extremal", help="extremal family constructions")
    p.add_argument("family", choices=("bd", "bdprime", "zonobox2d"))
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out", metavar="FILE", help="write polytope JSON here")
    p.set_defaults(handler=_cmd_extremal)

    p = sub.add_parser("reproduce", help="replay a bundled numbered result")
    p.add_argument("result_id", help="e.g. cor5.7, thm3.1, thm6.1, prop6.4, prop7.4")
    p.set_defaults(handler=_cmd_reproduce)

    p = sub.add_parser("export-off", help="OFF snapshot of a polytope file")
    p.add_argument("polytope", help="polytope JSON file")
    p.add_argument("--out", metavar="FILE", required=True)
    p.set_defaults(handler=_cmd_export_off)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, report = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = replace(report, wall_time=time.perf_counter() - start)
    sys.stdout.write(report.json_str())
    print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
