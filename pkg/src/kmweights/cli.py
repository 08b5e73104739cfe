"""Command-line front end: ``kmweights <command> ...``.

JSON output carries a ``"format"`` field and is byte-stable for a fixed
configuration; wall times appear only with ``--timings``.  Files are written
under ``--output`` or, failing that, the directory named by
``KMWEIGHTS_OUTPUT_DIR``; otherwise output goes to stdout only.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .affine import AffineWeight, NonIntegralLevelError, minimal_weight_table
from .casimir import primitive_pair_audit
from .hwmodules import NotDominantError, construct_mu0, enumerate_P
from .report import verify_all
from .rootsys import RootSystemError, build_root_system
from .serialize import FORMAT_VERSION, ParseError, format_weight, parse_weight_expr, q, weight_from_json, weight_to_json
from .superaffine import HypothesisError, SuperSpecError, SupportCandidate, catalog, obstruction_run
from .tracecheck import check_trace

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSISTENT = 3

OUTPUT_ENV = "KMWEIGHTS_OUTPUT_DIR"


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, name: str, text: str):
    sys.stdout.write(text)
    target = None
    if getattr(args, "output", None):
        target = Path(args.output)
    elif os.environ.get(OUTPUT_ENV):
        ext = "json" if getattr(args, "emit", "json") == "json" else "txt"
        target = Path(os.environ[OUTPUT_ENV]) / f"{name}.{ext}"
    if target is not None:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")


def _root_system(name: str):
    try:
        return build_root_system(name)
    except RootSystemError as e:
        raise CliError(f"parse error: {e}") from None


def _highest(rs, expr: str, level: int | None) -> AffineWeight:
    lam = parse_weight_expr(expr, rs.rank)
    if level is not None:
        if lam.level == 0:
            lam = lam + AffineWeight((0,) * rs.rank, 0, level)
        elif lam.level != level:
            raise CliError(f"--highest has level {lam.level} but --level is {level}")
    return lam


# -- commands ----------------------------------------------------------------------


def cmd_minimal(args) -> int:
    rs = _root_system(args.type)
    ok, rows = minimal_weight_table(rs)
    if args.emit == "json":
        text = _dump({"format": FORMAT_VERSION, "command": "minimal", "type": str(rs.type),
                      "ok": ok, "cosets": [{"minimal": [q(x) for x in lam], "beta_vee": q(v)}
                                           for _, lam, v in rows]})
    else:
        lines = [f"{rs.type}: {len(rows)} cosets"]
        lines += [f"  {format_weight(AffineWeight(lam)):<12} beta_vee = {q(v)}" for _, lam, v in rows]
        text = "\n".join(lines) + "\n"
    _emit(args, "minimal", text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_weights(args) -> int:
    rs = _root_system(args.type)
    lam = _highest(rs, args.highest, args.level)
    sup = enumerate_P(rs, lam, args.depth)
    if args.emit == "json":
        text = _dump({"format": FORMAT_VERSION, "command": "weights", "type": str(rs.type),
                      "highest": weight_to_json(lam), "depth": args.depth,
                      "weights": [{"weight": weight_to_json(w), "mult": sup.entries[w]}
                                  for w in sup.sorted_weights()]})
    else:
        text = "".join(f"{format_weight(w):<28}{sup.entries[w]:>6}\n" for w in sup.sorted_weights())
    _emit(args, "weights", text)
    return EXIT_OK


def cmd_mu0(args) -> int:
    rs = _root_system(args.type)
    lam = _highest(rs, args.highest, args.level)
    res = construct_mu0(rs, lam, Fraction(args.s))
    if args.emit == "json":
        text = _dump({"format": FORMAT_VERSION, "command": "mu0", "type": str(rs.type),
                      "highest": weight_to_json(lam), "s": q(res.s),
                      "mu0": weight_to_json(res.mu0), "member": res.member})
    else:
        text = f"mu0 = {format_weight(res.mu0)}  member = {res.member}\n"
    _emit(args, "mu0", text)
    return EXIT_OK if res.member else EXIT_FAIL


def cmd_casimir_audit(args) -> int:
    rs = _root_system(args.type)
    if args.level < 1:
        raise CliError("hypothesis violated: the pair audit needs level >= 1")
    lam = _highest(rs, args.highest, args.level)
    audit = primitive_pair_audit(enumerate_P(rs, lam, args.depth, multiplicities=False), lam)
    if args.emit == "json":
        text = _dump({"format": FORMAT_VERSION, "command": "casimir-audit", "type": str(rs.type),
                      "highest": weight_to_json(lam), "depth": args.depth,
                      "all_positive": audit.all_positive,
                      "rows": [{"lam": weight_to_json(r.lam), "mu": weight_to_json(r.mu),
                                "beta": list(r.beta), "value": q(r.value)} for r in audit.rows]})
    else:
        text = "".join(f"{format_weight(r.lam)} > {format_weight(r.mu)}: {q(r.value)}\n"
                       for r in audit.rows)
        text += f"{len(audit.rows)} pairs, all positive = {audit.all_positive}\n"
    _emit(args, "casimir-audit", text)
    return EXIT_OK if audit.ok else EXIT_FAIL


def load_support(spec, path: str) -> SupportCandidate:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"parse error: cannot read support file {path}: {e}") from None
    try:
        level = int(raw["level"])
        depth = int(raw["depth"])
        weights = frozenset(weight_from_json(w) for w in raw["weights"])
    except (KeyError, TypeError, ValueError) as e:
        raise CliError(f"parse error: support file needs level, depth and weights ({e})") from None
    return SupportCandidate(spec, level, weights, depth)


def _step_json(s) -> dict:
    def w(x):
        return weight_to_json(x) if isinstance(x, AffineWeight) else x
    out = {"rule": s.rule, "premises": [w(p) for p in s.premises], "conclusion": w(s.conclusion)}
    if s.root is not None:
        out["root"] = {"alpha": list(s.root.alpha), "n": s.root.n}
    if s.component is not None:
        out["component"] = s.component
    if s.value is not None:
        out["value"] = q(s.value)
    if s.forbidden:
        out["forbidden"] = len(s.forbidden)
    if s.note:
        out["note"] = s.note
    return out


def cmd_obstruct(args) -> int:
    try:
        spec = catalog(args.spec)
    except SuperSpecError as e:
        raise CliError(f"parse error: {e}") from None
    S = load_support(spec, args.support)
    tr = obstruction_run(spec, S, mode=args.mode)
    errors = check_trace(spec, S, tr)
    doc = {"format": FORMAT_VERSION, "command": "obstruct", "spec": spec.name,
           "level": S.level, "depth": S.depth, "mode": args.mode, "support_size": len(S.weights),
           "lam": weight_to_json(tr.lam) if tr.lam is not None else None,
           "delta_lambda": [{"alpha": list(g.alpha), "n": g.n} for g in tr.delta_lambda],
           "r": tr.r, "p": tr.p, "steps": [_step_json(s) for s in tr.steps],
           "verdict": tr.verdict, "checker_errors": errors}
    if args.emit == "json":
        text = _dump(doc)
    else:
        text = "".join(f"{i:>3} {s.rule:<10} -> {format_weight(s.conclusion) if isinstance(s.conclusion, AffineWeight) else s.conclusion}\n"
                       for i, s in enumerate(tr.steps))
        text += f"verdict: {tr.verdict}; checker: {'ok' if not errors else errors}\n"
    _emit(args, "obstruct", text)
    if errors:
        return EXIT_FAIL
    return EXIT_OK if tr.verdict == "contradiction" else EXIT_CONSISTENT


def cmd_verify_all(args) -> int:
    rep = verify_all(args.max_rank, args.depth)
    text = rep.dumps(args.timings) if args.emit == "json" else rep.table()
    _emit(args, "verify-all", text)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------------


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmweights", description="Exact affine weight computations and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, emit_default="table"):
        sp.add_argument("--emit", choices=("json", "table"), default=emit_default)
        sp.add_argument("--output", help="write the emitted text to this file as well")
        return sp

    sp = common(sub.add_parser("minimal", help="minimal dominant weight of every coset"))
    sp.add_argument("--type", required=True)
    sp.set_defaults(func=cmd_minimal)

    sp = common(sub.add_parser("weights", help="truncated weight set with multiplicities"))
    sp.add_argument("--type", required=True)
    sp.add_argument("--level", type=int)
    sp.add_argument("--highest", default="L0")
    sp.add_argument("--depth", type=_nonneg, default=2)
    sp.set_defaults(func=cmd_weights)

    sp = common(sub.add_parser("mu0", help="build mu0 and test membership"))
    sp.add_argument("--type", required=True)
    sp.add_argument("--level", type=int)
    sp.add_argument("--highest", default="L0")
    sp.add_argument("--s", default="0", help="delta coefficient of mu0 (rational)")
    sp.set_defaults(func=cmd_mu0)

    sp = common(sub.add_parser("casimir-audit", help="Casimir gap over dominant pairs"))
    sp.add_argument("--type", required=True)
    sp.add_argument("--level", type=int, default=1)
    sp.add_argument("--highest", default="L0")
    sp.add_argument("--depth", type=_nonneg, default=2)
    sp.set_defaults(func=cmd_casimir_audit)

    sp = common(sub.add_parser("obstruct", help="run the obstruction engine on a support file"),
                emit_default="json")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--support", required=True, help="JSON file with level, depth, weights")
    sp.add_argument("--mode", choices=("finite", "window"), default="finite")
    sp.set_defaults(func=cmd_obstruct)

    sp = common(sub.add_parser("verify-all", help="run every verification sweep"), emit_default="json")
    sp.add_argument("--max-rank", type=int, default=4)
    sp.add_argument("--depth", type=_nonneg, default=2)
    sp.add_argument("--timings", action="store_true", help="include wall times (breaks byte stability)")
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"kmweights: {e}", file=sys.stderr)
        return e.code
    except (ParseError, SuperSpecError) as e:
        print(f"kmweights: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotDominantError as e:
        print(f"kmweights: hypothesis violated (highest weight must be dominant integral "
              f"of level >= 1): {e}", file=sys.stderr)
        return EXIT_USAGE
    except NonIntegralLevelError as e:
        print(f"kmweights: hypothesis violated (integral level): {e}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as e:
        print(f"kmweights: hypothesis violated (obstruction needs level > 0 and two "
              f"simple even components): {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RootSystemError) as e:
        print(f"kmweights: precondition failed: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
