"""pentctl: verify, develop, classify, construct and plan from the shell.

Exit codes: 0 success, 1 negative verdict or missing ingredient, 2 malformed
input or parameters outside their domain, 3 hill climb exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import construct, pent
from .core import (
    Geometry,
    develop,
    geometry_from_json,
    geometry_to_json,
    parse_pent_file,
)
from .designs import (
    Gdd,
    gdd_to_json_dict,
    steiner_to_json_dict,
    sts,
    uniform_gdd,
    verify_gdd,
)
from .errors import (
    ClimbFailed,
    FieldTooLarge,
    Inadmissible,
    NonIntegralLineCount,
    NotBlockSize3,
    NotPrimePower,
    ParameterDomain,
    PentError,
    PentSyntaxError,
    PlanInvalid,
    PointOutOfRange,
    PreconditionFailed,
    StepNotDividingV,
    TooManySquares,
)
from .graphs import (
    Graph,
    generalized_petersen,
    hoffman_singleton,
    orbit_graph,
    parse_graph_file,
    petersen,
    report,
    write_graph_file,
)
from .hillclimb import ClimbConfig, climb_3gdd, climb_sts

# Errors meaning the invocation itself was malformed, not that the answer is no.
_USAGE_ERRORS = (
    PentSyntaxError,
    ParameterDomain,
    NonIntegralLineCount,
    PointOutOfRange,
    StepNotDividingV,
    Inadmissible,
    NotPrimePower,
    FieldTooLarge,
    TooManySquares,
    PreconditionFailed,
    NotBlockSize3,
    PlanInvalid,
)


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ClimbFailed):
        return 3
    if isinstance(exc, _USAGE_ERRORS) or isinstance(exc, OSError):
        return 2
    if isinstance(exc, PentError):
        return 1
    raise exc


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_geometry(path: str) -> Geometry:
    """Accept either the base-block format or serialized geometry JSON."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        return geometry_from_json(text)
    return develop(parse_pent_file(text))


def _load_graph(path: str) -> Graph:
    return parse_graph_file(_read_text(path))


def _climb_config(args: argparse.Namespace) -> ClimbConfig:
    return ClimbConfig(seed=args.seed)


def _report_dict(rep: pent.VerificationReport) -> dict:
    d = rep.deficiency
    out: dict = {
        "k": rep.params.k,
        "r": rep.params.r,
        "w": rep.params.w,
        "v": rep.params.v,
        "b": rep.params.b,
        "valid": rep.valid,
        "type": rep.geometry_type,
        "axioms": {
            a.name: {"passed": a.passed, "witnesses": list(a.witnesses)} for a in rep.axioms
        },
        "deficiency": {
            "regular_degree": d.regular_degree,
            "girth": d.girth,
            "connected": d.connected,
            "components": len(d.component_sizes),
        },
        "kww_components": rep.kww_components,
    }
    if rep.line_split is not None:
        s = rep.line_split
        out["line_split"] = {"opposite": s.b_opp, "non_opposite": s.b_non_opp, "e": s.e}
    if rep.overlap_profile is not None:
        out["overlap_profile"] = {str(u): n for u, n in sorted(rep.overlap_profile.items())}
    return out


def _report_text(rep: pent.VerificationReport) -> str:
    p = rep.params
    lines = [f"PENT({p.k},{p.r},{p.w}): v = {p.v}, b = {p.b}"]
    for a in rep.axioms:
        mark = "ok" if a.passed else "FAIL"
        lines.append(f"  {a.name}: {mark}")
        lines.extend(f"    {wit}" for wit in a.witnesses)
    d = rep.deficiency
    girth = "none" if d.girth is None else str(d.girth)
    conn = "connected" if d.connected else f"{len(d.component_sizes)} components"
    lines.append(f"  deficiency: degree {d.regular_degree}, girth {girth}, {conn}")
    if rep.line_split is not None:
        s = rep.line_split
        lines.append(f"  lines: {s.b_opp} opposite + {s.b_non_opp} other (e = {s.e})")
    lines.append(f"  type: {rep.geometry_type}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args: argparse.Namespace) -> int:
    rep = pent.verify(_load_geometry(args.file))
    if args.json:
        _emit(json.dumps(_report_dict(rep), separators=(",", ":")) + "\n", args.output)
    else:
        _emit(_report_text(rep), args.output)
    return 0 if rep.valid else 1


def _cmd_develop(args: argparse.Namespace) -> int:
    file = parse_pent_file(_read_text(args.file))
    geom = develop(file)
    provenance = {"source": "base-blocks", "d": file.d, "base_blocks": len(file.blocks)}
    _emit(geometry_to_json(geom, provenance), args.output)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    rep = pent.verify(_load_geometry(args.file))
    if not rep.valid:
        print("invalid: " + ", ".join(rep.failed_axioms()), file=sys.stderr)
        return 1
    _emit(rep.geometry_type + "\n", args.output)
    return 0


_GRAPH_SOURCES = ("petersen", "gp", "hs", "orbit")


def _cmd_graph(args: argparse.Namespace) -> int:
    if args.source == "petersen":
        g = petersen()
    elif args.source == "gp":
        if args.n is None:
            raise ParameterDomain("gp needs N")
        g = generalized_petersen(args.n)
    elif args.source == "hs":
        g = hoffman_singleton()
    else:
        if args.file is None:
            raise ParameterDomain("orbit needs a base edge file")
        if args.step is None:
            raise ParameterDomain("orbit needs --step")
        base = _load_graph(args.file)
        g = orbit_graph(base.edges(), args.step, base.n)
    if args.report:
        rep = report(g)
        girth = "none" if rep.girth is None else str(rep.girth)
        degree = "irregular" if rep.regular_degree is None else str(rep.regular_degree)
        conn = "connected" if rep.connected else f"{len(rep.component_sizes)} components"
        _emit(
            f"n {g.n}  edges {g.edge_count()}  degree {degree}  girth {girth}  {conn}\n",
            args.output,
        )
    else:
        _emit(write_graph_file(g), args.output)
    return 0


def _cmd_sts(args: argparse.Namespace) -> int:
    system = climb_sts(args.w, _climb_config(args)) if args.climb else sts(args.w)
    _emit(json.dumps(steiner_to_json_dict(system), separators=(",", ":")) + "\n", args.output)
    return 0


def _cmd_gdd(args: argparse.Namespace) -> int:
    u = args.groups if args.groups is not None else args.k
    if args.climb or u != args.k:
        if args.k != 3:
            raise ParameterDomain(f"only 3-GDDs can be hill climbed, got k = {args.k}")
        d: Gdd = climb_3gdd(args.g, u, _climb_config(args))
    else:
        d = uniform_gdd(args.k, args.g)
    verify_gdd(d)
    _emit(json.dumps(gdd_to_json_dict(d), separators=(",", ":")) + "\n", args.output)
    return 0


def _gdd_from_json_dict(payload: dict) -> Gdd:
    try:
        return Gdd(
            k=int(payload["k"]),
            groups=tuple(tuple(int(x) for x in grp) for grp in payload["groups"]),
            blocks=frozenset(tuple(sorted(int(x) for x in blk)) for blk in payload["lines"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PentSyntaxError(f"bad gdd spec: {exc}") from exc


def _cmd_construct(args: argparse.Namespace) -> int:
    if args.threads < 1:
        raise ParameterDomain(f"--threads {args.threads} < 1")
    config = _climb_config(args)
    if args.kind == "tripling":
        geom = construct.triple(_load_geometry(args.file))
        provenance = {"construction": "tripling"}
    elif args.kind == "product":
        if args.h is None:
            raise ParameterDomain("product needs --h")
        geom = construct.product(_load_geometry(args.file), args.h)
        provenance = {"construction": "product", "h": args.h}
    elif args.kind == "gdd-fill":
        spec_text = _read_text(args.file)
        try:
            spec = json.loads(spec_text)
        except json.JSONDecodeError as exc:
            raise PentSyntaxError(f"bad JSON: {exc}") from exc
        if not isinstance(spec, dict) or "gdd" not in spec or "ingredients" not in spec:
            raise PentSyntaxError("gdd-fill spec needs 'gdd' and 'ingredients'")
        base = Path(".") if args.file == "-" else Path(args.file).parent
        ingredients = {}
        for size, rel in spec["ingredients"].items():
            path = Path(rel)
            if not path.is_absolute():
                path = base / path
            ingredients[int(size)] = _load_geometry(str(path))
        plan = construct.GddFillPlan(gdd=_gdd_from_json_dict(spec["gdd"]), ingredients=ingredients)
        geom = construct.gdd_fill(plan)
        provenance = {"construction": "gdd-fill", "group_type": plan.gdd.group_type()}
    elif args.kind == "girth5":
        geom = construct.from_girth5_graph(_load_graph(args.file), config)
        provenance = {"construction": "girth5", "seed": args.seed}
    else:
        if args.h is None:
            raise ParameterDomain("c36 needs --h")
        geom = construct.construction36(_load_graph(args.file), args.h, args.k, config)
        provenance = {"construction": "c36", "h": args.h, "k": args.k, "seed": args.seed}
    _emit(geometry_to_json(geom, provenance), args.output)
    return 0


def _cmd_plan(args: argparse.Namespace) -> int:
    if args.family == "pent3":
        plan3 = construct.plan_pent3(args.r0, args.r1, args.r2, args.w, args.target)
        if plan3 is None:
            _emit(json.dumps({"reachable": False}) + "\n", args.output)
            return 1
        payload = {
            "reachable": True,
            "w": plan3.w,
            "r0": plan3.r0,
            "r1": plan3.r1,
            "r2": plan3.r2,
            "r3": plan3.r3,
            "t": plan3.t,
            "u": plan3.u,
            "target_r": plan3.target_r,
        }
    else:
        plan5 = construct.plan_pent5(args.r)
        if plan5 is None:
            _emit(json.dumps({"reachable": False}) + "\n", args.output)
            return 1
        counts = {str(size): plan5.parts.count(size) for size in construct.PENT5_PART_SIZES}
        payload = {
            "reachable": True,
            "r": plan5.r,
            "v": plan5.v,
            "h": plan5.h,
            "q": plan5.q,
            "m": plan5.m,
            "part_counts": counts,
        }
    _emit(json.dumps(payload, separators=(",", ":")) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentctl", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--output", default=None, help="write here instead of stdout")

    p = sub.add_parser("verify", help="check the axioms of a geometry")
    p.add_argument("file", help="geometry JSON or base-block file; '-' for stdin")
    p.add_argument("--json", action="store_true", help="machine readable report")
    add_output(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("develop", help="expand base blocks into geometry JSON")
    p.add_argument("file", help="base-block file; '-' for stdin")
    add_output(p)
    p.set_defaults(func=_cmd_develop)

    p = sub.add_parser("classify", help="print the deficiency type A-F")
    p.add_argument("file", help="geometry JSON or base-block file; '-' for stdin")
    add_output(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("graph", help="emit a named graph or an orbit closure")
    p.add_argument("source", choices=_GRAPH_SOURCES)
    p.add_argument("n", nargs="?", type=int, default=None, help="order parameter for gp")
    p.add_argument("--file", default=None, help="base edges for orbit; '-' for stdin")
    p.add_argument("--step", type=int, default=None, help="development step for orbit")
    p.add_argument("--report", action="store_true", help="print degree/girth summary instead")
    add_output(p)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("sts", help="Steiner triple system on w points")
    p.add_argument("w", type=int)
    p.add_argument("--climb", action="store_true", help="hill climb instead of direct recipe")
    p.add_argument("--seed", type=int, default=0)
    add_output(p)
    p.set_defaults(func=_cmd_sts)

    p = sub.add_parser("gdd", help="group divisible design with blocks of size k")
    p.add_argument("k", type=int)
    p.add_argument("g", type=int, help="group size")
    p.add_argument("--climb", action="store_true", help="hill climb instead of direct recipe")
    p.add_argument("--groups", type=int, default=None, help="group count (default k)")
    p.add_argument("--seed", type=int, default=0)
    add_output(p)
    p.set_defaults(func=_cmd_gdd)

    p = sub.add_parser("construct", help="build a geometry from ingredients")
    p.add_argument("kind", choices=("tripling", "product", "gdd-fill", "girth5", "c36"))
    p.add_argument("file", help="input geometry, spec JSON or graph; '-' for stdin")
    p.add_argument("--h", type=int, default=None, help="copies per point (product, c36)")
    p.add_argument("--k", type=int, default=3, help="line size for c36")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help="upper bound on worker count")
    add_output(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("plan", help="parameter search for the recursive families")
    fam = p.add_subparsers(dest="family", required=True)
    p3 = fam.add_parser("pent3", help="reach a target replication number for k = 3")
    p3.add_argument("r0", type=int)
    p3.add_argument("r1", type=int)
    p3.add_argument("r2", type=int)
    p3.add_argument("w", type=int)
    p3.add_argument("target", type=int)
    add_output(p3)
    p3.set_defaults(func=_cmd_plan)
    p5 = fam.add_parser("pent5", help="girth-5 pentagonal geometry sizes for k = 5")
    p5.add_argument("r", type=int)
    add_output(p5)
    p5.set_defaults(func=_cmd_plan)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (PentError, OSError) as exc:
        print(f"pentctl: {exc}", file=sys.stderr)
        return _exit_code(exc)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
