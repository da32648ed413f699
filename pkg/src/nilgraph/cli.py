"""Command-line entry point: ``nilgraph {build,cpa,gla,lie,verify,identify}``.

Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 a mathematical
check failed (the report is still written).
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from itertools import permutations

from .automorphism import (
    AutomorphismError,
    affine_witness,
    color_permutation_witness,
    enumerate_cpa,
    enumerate_gla,
    gla_witness,
    is_special,
    verify_stabilizer_lemmas,
    witness_to_dict,
)
from .config import CapError, resolve_cap
from .graph import (
    DirectedEdgeColoredGraph,
    EdgeColoredGraph,
    GraphError,
    build_gn,
    build_hn,
    dumps_graph,
    is_uniform,
    load_graph,
    to_dot,
    underlying_undirected,
)
from .groups import GroupError, PermutationGroup, identify, orbit, stabilizer, totient
from .lie import (
    LieError,
    check_jacobi,
    check_two_step,
    derived_subalgebra,
    from_graph,
    gla_image_group,
    is_lie_automorphism,
)

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_CHECK = 0, 2, 3, 4
LIE_CHECKS = ("two-step", "jacobi", "dim", "derived", "extend")


class InputError(Exception):
    pass


def _emit(args, payload) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, sort_keys=True, indent=2 if getattr(args, "pretty", False) else None) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cap(args) -> int:
    return resolve_cap(getattr(args, "cap", None))


def _method(args, default: str) -> str:
    return getattr(args, "method", None) or default


def _graph_from_args(args):
    sources = [s for s in ("file", "gn", "hn") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise InputError("give exactly one graph source: --file, --gn or --hn")
    if args.file is not None:
        return load_graph(args.file)
    if args.gn is not None:
        return build_gn(args.gn)
    return build_hn(args.hn)


# -- commands ----------------------------------------------------------------

def cmd_build(args) -> int:
    G = build_gn(args.n) if args.kind == "gn" else build_hn(args.n)
    if args.format == "dot":
        _emit(args, to_dot(G, name=f"{args.kind.upper()}_{args.n}"))
    else:
        _emit(args, dumps_graph(G, pretty=getattr(args, "pretty", False)) + "\n")
    return EXIT_OK


def _group_payload(group: PermutationGroup) -> dict:
    ident = identify(group)
    return {
        "degree": group.degree,
        "order": group.order,
        "generators": [list(g) for g in group.generators],
        "elements": [list(g) for g in group.elements],
        "identification": ident.to_dict(),
    }


def cmd_cpa(args) -> int:
    G = _graph_from_args(args)
    if isinstance(G, DirectedEdgeColoredGraph):
        G = underlying_undirected(G)
    group = enumerate_cpa(G, _method(args, "brute"), cap=_cap(args))
    payload = _group_payload(group)
    payload["witnesses"] = [witness_to_dict(s, color_permutation_witness(s, G)) for s in group.elements]
    _emit(args, payload)
    return EXIT_OK


def cmd_gla(args) -> int:
    H = _graph_from_args(args)
    if not isinstance(H, DirectedEdgeColoredGraph):
        raise InputError("gla needs a directed graph")
    group = enumerate_gla(H, _method(args, "brute"), cap=_cap(args))
    payload = _group_payload(group)
    payload["witnesses"] = [witness_to_dict(s, gla_witness(s, H)) for s in group.elements]
    _emit(args, payload)
    return EXIT_OK


def cmd_lie(args) -> int:
    H = _graph_from_args(args)
    if not isinstance(H, DirectedEdgeColoredGraph):
        raise InputError("lie needs a directed graph")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = sorted(set(checks) - set(LIE_CHECKS))
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(LIE_CHECKS)}")
    L = from_graph(H)
    results = []
    for name in checks:
        if name == "two-step":
            results.append({"name": name, "passed": check_two_step(L)})
        elif name == "jacobi":
            results.append({"name": name, "passed": check_jacobi(L)})
        elif name == "dim":
            results.append({"name": name, "passed": L.dimension == H.n_vertices + H.n_colors, "value": L.dimension})
        elif name == "derived":
            derived = sorted(b.index for b in derived_subalgebra(L))
            results.append({"name": name, "passed": derived == list(range(L.dim_w)), "value": derived})
        elif name == "extend":
            try:
                image = gla_image_group(H, _method(args, "brute"), cap=_cap(args))
                ok = all(is_lie_automorphism(M, L) for M in image.values())
                results.append({"name": name, "passed": ok, "value": len(image)})
            except LieError as exc:
                results.append({"name": name, "passed": False, "detail": str(exc)})
    passed = all(r["passed"] for r in results)
    _emit(args, {"dim_v": L.dim_v, "dim_w": L.dim_w, "results": results, "passed": passed})
    return EXIT_OK if passed else EXIT_CHECK


def cmd_identify(args) -> int:
    if args.group_file is not None:
        try:
            with open(args.group_file, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.group_file}: invalid JSON: {exc.msg}") from exc
        group = PermutationGroup.from_dict(data)
    else:
        G = _graph_from_args(args)
        if args.of == "gla":
            if not isinstance(G, DirectedEdgeColoredGraph):
                raise InputError("GLA needs a directed graph")
            group = enumerate_gla(G, _method(args, "brute"), cap=_cap(args))
        else:
            if isinstance(G, DirectedEdgeColoredGraph):
                G = underlying_undirected(G)
            group = enumerate_cpa(G, _method(args, "brute"), cap=_cap(args))
    payload = identify(group).to_dict()
    payload["order"] = group.order
    _emit(args, payload)
    return EXIT_OK


def _equivalence_sample(n: int, cpa: PermutationGroup):
    """Special / affine / CPA membership agree; exhaustive up to n = 7."""
    if n <= 7:
        perms = permutations(range(n))
    else:
        rng = random.Random(n)
        perms = (tuple(rng.sample(range(n), n)) for _ in range(2000))
        perms = [*perms, *cpa.elements]
    bad = []
    for p in perms:
        verdicts = (is_special(p, n), affine_witness(p, n) is not None, p in cpa)
        if len(set(verdicts)) != 1:
            bad.append(list(p))
    return bad


def _kinds(ident) -> str:
    return ", ".join(f"{k}({p})" for k, p in sorted(ident.kinds()))


def run_verify(n: int, method: str, cap: int) -> dict:
    timing: dict[str, float] = {}
    checks: list[dict] = []

    def check(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def phase(name, start):
        timing[name] = round((time.perf_counter() - start) * 1000, 3)

    t = time.perf_counter()
    G, H = build_gn(n), build_hn(n)
    check("gn_uniform", is_uniform(G).uniform)
    check("hn_underlying_is_gn", underlying_undirected(H) == G)
    phase("build", t)

    t = time.perf_counter()
    cpa = enumerate_cpa(G, method, cap=cap)
    expected_cpa = n * totient(n)
    check("cpa_order", cpa.order == expected_cpa, f"{cpa.order} (expected n*phi(n) = {expected_cpa})")
    affine = sorted(tuple((u * x + a) % n for x in range(n)) for u in range(1, n) if math.gcd(u, n) == 1 for a in range(n))
    check("cpa_equals_affine_maps", list(cpa.elements) == affine)
    cpa_id = identify(cpa)
    hol = cpa_id.find("holomorph")
    check("cpa_is_holomorph", hol is not None and hol.parameter == n and hol.verified, _kinds(cpa_id))
    check("cpa_transitive", orbit(cpa, 0) == frozenset(range(n)))
    units = sorted(tuple(u * x % n for x in range(n)) for u in range(1, n) if math.gcd(u, n) == 1)
    check("cpa_stabilizer_is_units", list(stabilizer(cpa, 0).elements) == units)
    bad = _equivalence_sample(n, cpa)
    check("special_affine_cpa_agree", not bad, f"{len(bad)} discrepancies")
    phase("cpa", t)

    t = time.perf_counter()
    gla = enumerate_gla(H, method, cap=cap)
    check("gla_order", gla.order == 2 * n, f"{gla.order} (expected 2n = {2 * n})")
    gla_id = identify(gla)
    dih = gla_id.find("dihedral")
    check("gla_is_dihedral", dih is not None and dih.parameter == n and dih.verified, _kinds(gla_id))
    check("gla_subset_cpa", all(g in cpa for g in gla.elements))
    stab = stabilizer(gla, 0)
    check("orbit_stabilizer_equation", gla.order == n * stab.order, f"{gla.order} = {n} * {stab.order}")
    lemmas = verify_stabilizer_lemmas(n, cap=cap)
    failed = sorted(k for k, v in lemmas.checks.items() if not v)
    check("stabilizer_lemmas", lemmas.passed, "failed: " + ", ".join(failed) if failed else "")
    phase("gla", t)

    t = time.perf_counter()
    L = from_graph(H)
    check("lie_dimension", L.dimension == 2 * n, str(L.dimension))
    check("lie_two_step", check_two_step(L))
    check("lie_jacobi", check_jacobi(L))
    check("lie_derived_is_W", len(derived_subalgebra(L)) == n)
    try:
        image = gla_image_group(H, method, cap=cap)
        ok = len(image) == 2 * n and all(is_lie_automorphism(M, L) for M in image.values())
        check("gla_extends_to_lie_automorphisms", ok, f"{len(image)} matrices")
    except LieError as exc:
        check("gla_extends_to_lie_automorphisms", False, str(exc))
    phase("lie", t)

    return {
        "n": n,
        "method": method,
        "cpa_order": cpa.order,
        "cpa_identified": cpa_id.to_dict(),
        "gla_order": gla.order,
        "gla_identified": gla_id.to_dict(),
        "lie_dimension": L.dimension,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "timing_ms": timing,
    }


def cmd_verify(args) -> int:
    report = run_verify(args.n, _method(args, "both"), _cap(args))
    if getattr(args, "no_timing", False):
        report.pop("timing_ms")
    _emit(args, report)
    return EXIT_OK if report["passed"] else EXIT_CHECK


# -- parser ------------------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=default, help="write output to this path instead of stdout")
    p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS if suppress else False)
    p.add_argument("--cap", type=int, default=default, help="brute-force vertex cap (default 9, max 11)")
    p.add_argument("--no-timing", dest="no_timing", action="store_true", default=argparse.SUPPRESS if suppress else False)
    p.add_argument("--method", choices=("brute", "fast", "both"), default=default)
    return p


def _graph_source(p: argparse.ArgumentParser):
    p.add_argument("--file", help="graph JSON file")
    p.add_argument("--gn", type=int, help="use G_n")
    p.add_argument("--hn", type=int, help="use H_n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilgraph", parents=[_global_flags(False)], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    flags = _global_flags(True)

    p = sub.add_parser("build", parents=[flags], help="write G_n or H_n")
    p.add_argument("kind", choices=("gn", "hn"))
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("cpa", parents=[flags], help="color permuting automorphism group")
    _graph_source(p)
    p.set_defaults(func=cmd_cpa)

    p = sub.add_parser("gla", parents=[flags], help="graph Lie automorphism group")
    _graph_source(p)
    p.set_defaults(func=cmd_gla)

    p = sub.add_parser("lie", parents=[flags], help="checks on the 2-step nilpotent Lie algebra")
    _graph_source(p)
    p.add_argument("--checks", default=",".join(LIE_CHECKS), help=f"comma list from {', '.join(LIE_CHECKS)}")
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("verify", parents=[flags], help="full pipeline for G_n / H_n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identify", parents=[flags], help="recognize a group")
    _graph_source(p)
    p.add_argument("--group-file", dest="group_file", help="group JSON file")
    p.add_argument("--of", choices=("cpa", "gla"), default="cpa")
    p.set_defaults(func=cmd_identify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, CapError, AutomorphismError, GroupError, LieError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
