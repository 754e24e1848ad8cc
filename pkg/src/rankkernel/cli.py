"""Command-line entry point ``rankkernel``.

Exit codes: 0 success, 1 property violation (disagreement, counterexample,
failed verification or inconclusive batch), 2 usage or input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DEFAULT_CAPS, Caps, ParseError, PreconditionError, ResourceError
from .graph import format_graph, format_instance, parse_graph, parse_instance
from .hardness import cnf_to_awfd, parse_dimacs_cnf, rank_counterexample, verify_counterexample, verify_ppt
from .incidence import enumerate_coords, inc_vector
from .kernel import PRESETS, kernelize
from .obstructions.properties import PROPERTIES, get_property
from .solver import brute_force_decide
from .trials import TrialConfig, report_bytes, run_equivalence_trials, run_rankc_trials

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _caps(args) -> Caps:
    return Caps.parse(args.caps) if args.caps else DEFAULT_CAPS


def cmd_kernelize(args) -> int:
    inst = parse_instance(_read(args.input))
    kernel = kernelize(inst, args.preset, coord_cap=_caps(args).max_coords)
    text = format_instance(kernel.instance)
    if args.out:
        _write(args.out, text)
    if args.trace:
        trace = kernel.trace.to_json() if kernel.trace else {"trivial": True}
        _write(args.trace, json.dumps(trace, sort_keys=True, indent=2) + "\n")
    payload = {
        "preset": args.preset,
        "input_vertices": inst.graph.n,
        "output_vertices": kernel.instance.graph.n,
        "budget": kernel.instance.budget,
        "trivial": kernel.trivial,
        "trace": kernel.trace.to_json() if kernel.trace else None,
        "id_map": {str(k): v for k, v in sorted(kernel.id_map.items())},
    }
    if args.json:
        _emit(args, payload, "")
    elif not args.out:
        sys.stdout.write(text)
    else:
        sys.stdout.write(f"kernel: {inst.graph.n} -> {kernel.instance.graph.n} vertices\n")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.input))
    p = get_property(args.property)
    res = brute_force_decide(inst, p, _caps(args), optimum=args.optimum, exhaustive=args.exhaustive)
    text = "feasible" if res.feasible else "infeasible"
    if res.solution is not None:
        text += " " + " ".join(map(str, sorted(res.solution)))
    if res.optimum is not None:
        text += f"\noptimum {res.optimum}"
    _emit(args, res.to_json(), text)
    return EXIT_OK


def _read_graph(text: str):
    try:
        return parse_graph(text)
    except ParseError:
        return parse_instance(text).graph


def cmd_detect(args) -> int:
    g = _read_graph(_read(args.input))
    p = get_property(args.property)
    w = p.witness(g)
    payload = {"property": p.id, "contains": w is not None, "witness": None if w is None else sorted(w)}
    text = "absent" if w is None else "found " + " ".join(map(str, sorted(w)))
    _emit(args, payload, text)
    return EXIT_OK


def _trial_config(args, target: str, **extra) -> TrialConfig:
    return TrialConfig(
        target=target,
        trials=args.trials,
        seed=args.seed,
        caps=_caps(args),
        workers=args.workers,
        **extra,
    )


def _finish_report(args, report) -> int:
    if args.dump_dir:
        report.dump_failures(args.dump_dir)
    sys.stdout.buffer.write(report_bytes(report, args.json))
    sys.stdout.flush()
    return report.exit_code


def cmd_verify_equivalence(args) -> int:
    cfg = _trial_config(
        args, args.preset,
        cover=args.cover, independent=args.independent, budget=args.budget,
        edge_probability=(args.p_min, args.p_max), fault=args.fault,
    )
    return _finish_report(args, run_equivalence_trials(cfg))


def cmd_verify_rankc(args) -> int:
    cfg = _trial_config(
        args, args.property,
        c=args.c, singleton=not args.subsets, min_hits=args.min_hits,
        feed_counterexample=args.feed_counterexample, subset_budget=args.subset_budget,
    )
    return _finish_report(args, run_rankc_trials(cfg))


def cmd_hardness(args) -> int:
    if args.action == "gen":
        if not args.cnf:
            raise PreconditionError("hardness gen needs --cnf")
        f = parse_dimacs_cnf(_read(args.cnf))
        hi = cnf_to_awfd(f)
        _write(args.out, format_instance(hi.instance))
        if args.out and args.out != "-":
            sys.stdout.write(
                f"n={f.n} m={f.m} vertices={hi.instance.graph.n} "
                f"cover={len(hi.instance.cover)} k={hi.instance.budget}\n"
            )
        return EXIT_OK
    if args.action == "ppt":
        if not args.cnf:
            raise PreconditionError("hardness ppt needs --cnf")
        report = verify_ppt(parse_dimacs_cnf(_read(args.cnf)), audit=args.audit)
        text = (
            f"satisfiable={report.satisfiable} feasible={report.feasible} "
            f"{'AGREE' if report.agree else 'DISAGREE'}"
        )
        _emit(args, report.to_json(), text)
        return EXIT_OK if report.agree else EXIT_VIOLATION
    if args.c is None:
        raise PreconditionError("hardness counterexample needs --c")
    ce = rank_counterexample(args.c)
    if args.out:
        _write(args.out, format_graph(ce.graph))
    payload = ce.to_json()
    text = f"c={ce.c} i={ce.i} n={ce.n} q={ce.q} |D|={len(ce.d)} |V|={ce.graph.n}"
    code = EXIT_OK
    if args.verify:
        report = verify_counterexample(ce, _caps(args))
        payload["verification"] = report.to_json()
        text += "\n" + "\n".join(
            [
                f"(a) sum equality: {report.sum_equality}",
                f"(b) wheel without D: {report.wheel_without_d is not None}",
                f"(c) wheel-free without apex: {report.free_without_apex}",
                "VERIFIED" if report.ok else "FAILED: " + "; ".join(report.failures),
            ]
        )
        code = EXIT_OK if report.ok else EXIT_VIOLATION
    _emit(args, payload, text)
    return code


def _cover_arg(args) -> list[int]:
    if args.cover is not None:
        return [int(t) for t in args.cover.replace(",", " ").split()]
    if args.cover_size is not None:
        return list(range(args.cover_size))
    raise PreconditionError("pass --cover or --cover-size")


def cmd_coords(args) -> int:
    idx = enumerate_coords(_cover_arg(args), args.c, cap=_caps(args).max_coords)
    coords = [(sorted(q), sorted(r)) for q, r in idx.coords] if args.list else None
    payload = {"cover": list(idx.cover), "c": args.c, "count": len(idx)}
    if coords is not None:
        payload["coords"] = [{"Q": q, "R": r} for q, r in coords]
    text = f"{len(idx)}"
    if coords is not None:
        text += "\n" + "\n".join(f"{i} Q={q} R={r}" for i, (q, r) in enumerate(coords))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_incvec(args) -> int:
    inst = parse_instance(_read(args.input))
    idx = enumerate_coords(inst.cover.cover, args.c, cap=_caps(args).max_coords)
    vec = inc_vector(inst.graph, idx, args.vertex)
    _emit(args, {"vertex": args.vertex, "c": args.c, "length": vec.length, "bits": vec.to_string()},
          vec.to_string())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed for trials")
    common.add_argument("--caps", default=argparse.SUPPRESS,
                        help="cap overrides, e.g. vertices=30,budget=4,coords=65536,subset=20")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = argparse.ArgumentParser(prog="rankkernel", parents=[common],
                                     description="Kernelization by low-rank incidence vectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", parents=[common], help="shrink an instance")
    p.add_argument("--preset", required=True, choices=sorted(PRESETS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--trace", help="write the reduction trace as JSON")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", parents=[common], help="exact brute-force decision")
    p.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--optimum", action="store_true")
    p.add_argument("--exhaustive", action="store_true", help="disable witness pruning")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("detect", parents=[common], help="find an obstruction")
    p.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_detect)

    for name, func in (("verify-equivalence", cmd_verify_equivalence), ("verify-rankc", cmd_verify_rankc)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--dump-dir")
        if name == "verify-equivalence":
            p.add_argument("--preset", required=True, choices=sorted(PRESETS))
            p.add_argument("--cover", type=_range, default=(1, 6))
            p.add_argument("--independent", type=_range, default=(0, 10))
            p.add_argument("--budget", type=_range, default=(0, 3))
            p.add_argument("--p-min", type=float, default=0.2)
            p.add_argument("--p-max", type=float, default=0.8)
            p.add_argument("--fault", action="store_true", help="flip one kernel edge per trial")
        else:
            p.add_argument("--property", required=True, choices=sorted(PROPERTIES))
            p.add_argument("--c", type=int)
            p.add_argument("--subsets", action="store_true", help="allow replacement sets of any size")
            p.add_argument("--min-hits", type=int, default=200)
            p.add_argument("--subset-budget", type=int, default=200_000)
            p.add_argument("--feed-counterexample", action="store_true",
                           help="make trial 0 the non-characterizability construction")
        p.set_defaults(func=func)

    p = sub.add_parser("hardness", parents=[common], help="hardness constructions")
    p.add_argument("action", choices=("gen", "ppt", "counterexample"))
    p.add_argument("--cnf")
    p.add_argument("--out")
    p.add_argument("--c", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--audit", action="store_true", help="re-decide with the generic solver")
    p.set_defaults(func=cmd_hardness)

    p = sub.add_parser("coords", parents=[common], help="count or list incidence coordinates")
    p.add_argument("--cover", help="cover vertex ids, space or comma separated")
    p.add_argument("--cover-size", type=int)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("incvec", parents=[common], help="print one incidence vector")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.set_defaults(func=cmd_incvec)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("caps", None), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
