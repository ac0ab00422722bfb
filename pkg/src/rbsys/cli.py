"""Command-line front end.

Exit codes: 0 on success, 1 when a verification suite reports failures,
2 on usage or expression-parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import gsb, hopf, rewriting
from .syntax import (
    ParseError,
    format_poly,
    format_tensor,
    parse_poly,
    poly_to_json,
    tensor_to_json,
)
from .terms import Signature, SignatureError


def _split_names(text: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in text.split(",") if name.strip())


def _parse_bounds(text: str) -> tuple[int, int]:
    bounds = {"uvw": 1, "pi": 1}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in bounds or not value.strip().isdigit():
            raise ValueError(f"bad bounds component {part!r}")
        bounds[key] = int(value)
    return bounds["uvw"], bounds["pi"]


def _worker_count() -> int:
    raw = os.environ.get("RBS_KERNEL_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--generators", default="x", metavar="a,b,c",
        help="generator alphabet in increasing order (default: x)",
    )
    common.add_argument(
        "--operators", default="R,S", metavar="R,S",
        help="operators in descending rank (default: R,S)",
    )
    common.add_argument(
        "--format", choices=("text", "json"), default="text", dest="fmt",
        help="output format",
    )
    common.add_argument(
        "--ascii", action="store_true",
        help="print tensors with an ASCII separator instead of ⊗",
    )
    common.add_argument(
        "--seed", type=int, default=0,
        help="seed for the randomized verification suites",
    )

    parser = argparse.ArgumentParser(
        prog="rbsys",
        description="Exact kernel for the free Rota-Baxter system: normal "
        "forms, diamond products, coproducts, antipodes, and verification "
        "suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common],
                       help="rewrite an expression onto the word basis")
    p.add_argument("expr")
    p.add_argument("--trace", action="store_true",
                   help="also emit the reduction trace")

    p = sub.add_parser("mul", parents=[common],
                       help="diamond product of two expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("coprod", parents=[common],
                       help="coproduct of an expression")
    p.add_argument("expr")

    p = sub.add_parser("counit", parents=[common],
                       help="counit of an expression")
    p.add_argument("expr")

    p = sub.add_parser("antipode", parents=[common],
                       help="right antipode of an expression")
    p.add_argument("expr")

    p = sub.add_parser("basis", parents=[common],
                       help="list basis words by degree with counts")
    p.add_argument("--max-degree", type=int, default=3)

    p = sub.add_parser("verify", parents=[common],
                       help="run the verification suites")
    p.add_argument("target", choices=("gsb", "hopf", "all"))
    p.add_argument("--bounds", default="uvw=1,pi=1", metavar="uvw=N,pi=M",
                   help="degree bounds for the composition check")
    p.add_argument("--max-degree", type=int, default=3,
                   help="degree bound for the Hopf property suites")
    p.add_argument("--mutate", default=None, metavar="OP.WHICH",
                   help="debug: flip relation sign(s), e.g. R.head, S.tail, "
                        "R.both; the run is then expected to fail")

    p = sub.add_parser("report", parents=[common],
                       help="write a CSV summary and figures for the "
                            "verification suites")
    p.add_argument("--out", default="rbs-report", metavar="DIR")
    p.add_argument("--bounds", default="uvw=1,pi=1", metavar="uvw=N,pi=M")
    p.add_argument("--max-degree", type=int, default=3)

    return parser


def _signature(args) -> Signature:
    return Signature(_split_names(args.generators), _split_names(args.operators))


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _emit_poly(p, sig, args, trace=None) -> None:
    if args.fmt == "json":
        out = {"result": poly_to_json(p, sig)}
        if trace is not None:
            out["trace"] = _trace_json(trace, sig)
        _print_json(out)
        return
    print(format_poly(p, sig))
    if trace is not None:
        for step in trace.steps:
            print(f"# rewrite {step.word} -> {format_poly(step.replacement, sig)}")


def _trace_json(trace, sig) -> list[dict]:
    return [
        {
            "word": str(step.word),
            "coeff": str(step.coeff),
            "rule": {
                "op": step.match.op,
                "u": str(step.match.u),
                "v": str(step.match.v),
                "context": str(step.match.context),
            },
            "replacement": poly_to_json(step.replacement, sig),
        }
        for step in trace.steps
    ]


def _cmd_normalize(args, sig) -> int:
    expr = parse_poly(args.expr, sig)
    if args.trace:
        p, trace = rewriting.normal_form_traced(expr, sig)
        _emit_poly(p, sig, args, trace)
    else:
        _emit_poly(rewriting.normal_form(expr, sig), sig, args)
    return 0


def _cmd_mul(args, sig) -> int:
    left = rewriting.normal_form(parse_poly(args.left, sig), sig)
    right = rewriting.normal_form(parse_poly(args.right, sig), sig)
    _emit_poly(rewriting.diamond_poly(left, right, sig), sig, args)
    return 0


def _cmd_coprod(args, sig) -> int:
    p = rewriting.normal_form(parse_poly(args.expr, sig), sig)
    t = hopf.coproduct_poly(p, sig)
    if args.fmt == "json":
        _print_json({"result": tensor_to_json(t, sig)})
    else:
        print(format_tensor(t, sig, ascii_tensor=args.ascii))
    return 0


def _cmd_counit(args, sig) -> int:
    p = rewriting.normal_form(parse_poly(args.expr, sig), sig)
    value = hopf.counit(p)
    if args.fmt == "json":
        _print_json({"result": str(value)})
    else:
        print(value)
    return 0


def _cmd_antipode(args, sig) -> int:
    p = rewriting.normal_form(parse_poly(args.expr, sig), sig)
    _emit_poly(hopf.antipode_poly(p, sig), sig, args)
    return 0


def _cmd_basis(args, sig) -> int:
    if args.max_degree < 0:
        raise ValueError("--max-degree must be >= 0")
    words = rewriting.basis_words(sig, args.max_degree)
    by_degree: dict[int, list] = {n: [] for n in range(args.max_degree + 1)}
    for w in words:
        by_degree[w.degree].append(w)
    if args.fmt == "json":
        _print_json(
            {
                "max_degree": args.max_degree,
                "counts": [len(by_degree[n]) for n in range(args.max_degree + 1)],
                "words": [
                    [str(w) for w in by_degree[n]]
                    for n in range(args.max_degree + 1)
                ],
            }
        )
        return 0
    for n in range(args.max_degree + 1):
        ws = by_degree[n]
        print(f"# degree {n}: {len(ws)} word{'s' if len(ws) != 1 else ''}")
        for w in ws:
            print(w)
    return 0


def _verify_reports(args, sig):
    gsb_report = hopf_report = None
    if args.target in ("gsb", "all"):
        system = None
        if args.mutate:
            op, _, which = args.mutate.partition(".")
            system = gsb.mutated_system(sig, op, which)
        gsb_report = gsb.verify_gsb(
            sig,
            args.uvw_degree,
            args.pi_degree,
            system=system,
            max_workers=_worker_count(),
        )
    if args.target in ("hopf", "all"):
        hopf_report = hopf.verify_hopf(
            sig, args.max_degree, seed=args.seed, max_workers=_worker_count()
        )
    return gsb_report, hopf_report


def _render_gsb_text(report) -> None:
    for fam in report.families:
        status = "ok" if not fam.failures else f"{len(fam.failures)} FAILURES"
        print(f"gsb {fam.family}: {fam.instances_checked} instances, {status}")
    print(f"gsb: {'PASS' if report.passed else 'FAIL'} "
          f"({report.instances_checked} compositions checked)")


def _render_hopf_text(report) -> None:
    for s in report.suites:
        status = "ok" if not s.failures else f"{len(s.failures)} FAILURES"
        print(f"hopf {s.suite}: {s.checked} checks, {status}")
    for key, value in report.informational.items():
        print(f"hopf info {key}: {value}")
    print(f"hopf: {'PASS' if report.passed else 'FAIL'} "
          f"({report.checks_run} checks run)")


def _cmd_verify(args, sig) -> int:
    gsb_report, hopf_report = _verify_reports(args, sig)
    passed = all(
        r.passed for r in (gsb_report, hopf_report) if r is not None
    )
    if args.fmt == "json":
        if args.target == "all":
            _print_json(
                {
                    "seed": args.seed,
                    "passed": passed,
                    "gsb": gsb_report.to_json(sig),
                    "hopf": hopf_report.to_json(sig),
                }
            )
        elif args.target == "gsb":
            _print_json(gsb_report.to_json(sig))
        else:
            _print_json(hopf_report.to_json(sig))
    else:
        if gsb_report is not None:
            _render_gsb_text(gsb_report)
        if hopf_report is not None:
            _render_hopf_text(hopf_report)
        print("PASS" if passed else "FAIL")
    return 0 if passed else 1


def _cmd_report(args, sig) -> int:
    from .reporting import write_report

    paths = write_report(
        args.out,
        sig,
        uvw_degree=args.uvw_degree,
        pi_degree=args.pi_degree,
        hopf_degree=args.max_degree,
        seed=args.seed,
    )
    for path in paths:
        print(path)
    return 0


_COMMANDS = {
    "normalize": _cmd_normalize,
    "mul": _cmd_mul,
    "coprod": _cmd_coprod,
    "counit": _cmd_counit,
    "antipode": _cmd_antipode,
    "basis": _cmd_basis,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bounds", None) is not None:
        try:
            args.uvw_degree, args.pi_degree = _parse_bounds(args.bounds)
        except ValueError as exc:
            parser.error(str(exc))  # exits with status 2
    try:
        sig = _signature(args)
    except SignatureError as exc:
        parser.error(str(exc))
    if getattr(args, "mutate", None):
        op, sep, which = args.mutate.partition(".")
        if not sep or which not in ("head", "tail", "both") or not sig.is_operator(op):
            parser.error(f"bad --mutate value {args.mutate!r}")
    try:
        return _COMMANDS[args.command](args, sig)
    except ParseError as exc:
        print(f"rbsys: parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"rbsys: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
