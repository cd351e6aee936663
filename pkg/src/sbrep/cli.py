"""Command line front end: ``sbrep <subcommand>``.

Exit codes: 0 clean, 1 relation violation, 2 input or constraint error,
3 audit discrepancy.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import as_gaussian
from .catalog import FAMILIES, Representation, build, sb2_classify
from .errors import SBRepError
from .irreducibility import (
    REDUCIBLE,
    Verdict,
    audit,
    burnside_verdict,
    exhaustive_verdict,
    invariant_line_witness,
    predicate_verdict,
)
from .linalg import Matrix
from .presentations import presentation, verify_rep
from .sweep import POOL, SweepConfig, run_sweep

EXIT_OK, EXIT_RELATIONS, EXIT_INPUT, EXIT_DISCREPANCY = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parse_at(text):
    if text is None:
        return None
    text = text.strip()
    if text.startswith("t="):
        text = text[2:]
    return as_gaussian(text)


def _load_json(source):
    try:
        if source == "-":
            return json.load(sys.stdin)
        if source.lstrip().startswith(("{", "[")):
            return json.loads(source)
        with open(source) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {source!r}: {exc}") from exc


def _load_rep(source, validate=False) -> Representation:
    obj = _load_json(source)
    try:
        return Representation.from_json(obj, validate=validate)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed representation: {exc}") from exc


def _emit(obj, args):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(text):
    if not text:
        return {}
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise InputError("--params must be a JSON object")
    return obj


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_list_families(args):
    _emit([{"tag": f.tag, "group": f.group, "params": list(f.params),
            "constraints": f.constraints, "n": f.fixed_n, "summary": f.summary}
           for f in FAMILIES.values()], args)
    return EXIT_OK


def cmd_construct(args):
    if args.list_families:
        return cmd_list_families(args)
    if not args.family:
        raise InputError("--family is required")
    rep = build(args.family, args.n, _params(args.params))
    _emit(rep.to_json(), args)
    return EXIT_OK


def cmd_verify(args):
    rep = _load_rep(args.rep)
    group = args.group or rep.group
    n = args.n or rep.n
    pres = presentation(group, n)
    violations = verify_rep(rep.images, pres)
    extra = [g.name for g in rep.images if g not in pres.generators]
    if extra:
        raise InputError(f"generators {', '.join(extra)} do not belong to {group}({n})")
    _emit({"violations": [v.to_json() for v in violations]}, args)
    return EXIT_RELATIONS if violations else EXIT_OK


def cmd_irreducible(args):
    rep = _load_rep(args.rep)
    at = _parse_at(args.at)
    if args.oracle == "burnside":
        verdict = burnside_verdict(rep, at=at)
    elif args.oracle == "predicate":
        verdict = predicate_verdict(rep, at=at)
    elif args.oracle == "exhaustive":
        mats = rep.matrices() if rep.ring != "laurent" else rep.evaluate(at or 2).matrices()
        verdict = exhaustive_verdict(mats)
    else:
        w = invariant_line_witness(rep, at=at)
        if w is not None:
            verdict = Verdict(REDUCIBLE, witness=w, oracle="fixed_vector")
        else:
            verdict = burnside_verdict(rep, at=at)
            verdict.notes.append("no invariant line found by the bounded witness search")
    _emit(verdict.to_json(), args)
    return EXIT_OK


def cmd_classify_sb2(args):
    if args.rep:
        rep = _load_rep(args.rep)
        from .presentations import sigma, tau

        S, T = rep.images[sigma(1)], rep.images[tau(1)]
    else:
        if not (args.sigma and args.tau):
            raise InputError("give --rep or both --sigma and --tau")
        S, T = (Matrix.from_json(_load_json(x)) for x in (args.sigma, args.tau))
    result = sb2_classify(S, T)
    _emit({
        "family": f"sb2_{result.family}",
        "params": {k: v.to_json() for k, v in result.params.items()},
        "conjugator": result.conjugator.to_json(),
        "template": result.template().to_json(),
    }, args)
    return EXIT_OK


def _sweep_config(args, family, strand_counts):
    cfg = _load_json(args.config) if getattr(args, "config", None) else {}
    grid = cfg.get("grid", {})
    if getattr(args, "grid", None):
        grid.update(_load_json(args.grid))
    fixed = cfg.get("params", {})
    fixed.update(_params(getattr(args, "params", None)))
    pool = [as_gaussian(v) for v in cfg["pool"]] if "pool" in cfg else POOL
    at = _parse_at(args.at) if args.at is not None else (
        _parse_at(str(cfg["at"])) if "at" in cfg else None)
    return SweepConfig(
        family=cfg.get("family", family),
        pool=pool,
        grid=grid,
        fixed=fixed,
        strand_counts=tuple(strand_counts or cfg.get("n", ())),
        at=at,
        limit=getattr(args, "limit", None) or cfg.get("limit"),
        samples=getattr(args, "samples", None) or cfg.get("samples"),
        seed=args.seed if args.seed is not None else cfg.get("seed"),
    )


def cmd_sweep(args):
    if not (args.family or args.config):
        raise InputError("give --family or --config")
    report = run_sweep(_sweep_config(args, args.family, args.n))
    _emit(report.to_json(), args)
    return report.exit_code()


def cmd_audit(args):
    if args.rep:
        rep = _load_rep(args.rep, validate=True)
        records = audit(rep, args.predicate or None, at=_parse_at(args.at))
        _emit({"discrepancies": [r.to_json() for r in records]}, args)
        return EXIT_DISCREPANCY if records else EXIT_OK
    if not args.family:
        raise InputError("give --rep or --family")
    report = run_sweep(_sweep_config(args, args.family, args.n))
    found = report.discrepancies
    _emit({"family": args.family, "summary": report.summary(),
           "discrepancies": found, "skipped": report.skipped}, args)
    if report.relation_failures:
        return EXIT_RELATIONS
    return EXIT_DISCREPANCY if found else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default,
                        help="seed for random subsampling (default: deterministic stride)")
    parser.add_argument("--at", default=default,
                        help="sample point for t, e.g. t=2 or 1+i")
    parser.add_argument("--output", default=default, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbrep",
        description="Build braid and singular braid group representations exactly "
                    "and decide whether they are irreducible.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a catalog representation")
    p.add_argument("--family")
    p.add_argument("--n", type=int)
    p.add_argument("--params", help="JSON object or file with family parameters")
    p.add_argument("--list-families", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a representation's relations")
    p.add_argument("--rep", required=True, help="representation JSON file ('-' for stdin)")
    p.add_argument("--group", choices=["bn", "sbn"])
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("irreducible", parents=[common], help="decide irreducibility")
    p.add_argument("--rep", required=True)
    p.add_argument("--oracle", default="burnside",
                   choices=["burnside", "witness", "predicate", "exhaustive"])
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("classify-sb2", parents=[common], help="classify a commuting SB_2 pair")
    p.add_argument("--rep")
    p.add_argument("--sigma", help="matrix JSON for the image of s1")
    p.add_argument("--tau", help="matrix JSON for the image of t1")
    p.set_defaults(func=cmd_classify_sb2)

    for name, func, hlp in (("sweep", cmd_sweep, "sweep a family over a parameter grid"),
                            ("audit", cmd_audit, "compare closed-form predicates with the oracle")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--family")
        p.add_argument("--n", type=int, nargs="*", default=None)
        p.add_argument("--params", help="fixed parameters (JSON)")
        p.add_argument("--grid", help="explicit per-parameter value lists (JSON)")
        p.add_argument("--config", help="sweep configuration JSON file")
        p.add_argument("--limit", type=int, help="cap on grid points (stride subsample)")
        p.add_argument("--samples", type=int, help="number of grid points to evaluate")
        if name == "audit":
            p.add_argument("--rep", help="audit a single representation file")
            p.add_argument("--predicate", action="append")
            p.add_argument("--sweep", choices=["pool"], default="pool")
        p.set_defaults(func=func)

    p = sub.add_parser("list-families", parents=[common], help="print the family catalog")
    p.set_defaults(func=cmd_list_families)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SBRepError, ValueError, KeyError, TypeError, AttributeError) as exc:
        msg = f"missing key {exc}" if type(exc) is KeyError else str(exc)
        sys.stderr.write(f"sbrep: error: {msg}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
