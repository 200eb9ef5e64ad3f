"""Command-line interface: ``puiseux-lengths <command> [options]``.

Exit codes: 0 ok, 1 audit failure, 2 usage error, 3 domain error,
4 resource cap exceeded. With ``--output json`` results are wrapped in an
envelope that echoes the run configuration, and errors go to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, replace

from . import goldbach, numsgp, puiseux, staged
from .arith import as_rational, format_rational, parse_rational_list
from .caps import Caps, default_caps
from .errors import DomainError, InternalError, PuiseuxError, ResourceError, StateError
from .realization import NotFound, SearchBounds, realize

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_AUDIT, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    output_format: str
    caps: Caps

    @property
    def bounds(self):
        return SearchBounds(self.caps.max_atoms, self.caps.max_atom_value, self.caps.max_element)

    def to_json(self):
        return {
            "output_format": self.output_format,
            "bounds": asdict(self.bounds),
            "factorization_cap": self.caps.factorization_cap,
            "prime_search_cap": self.caps.prime_search_cap,
        }


def _fmt_set(values):
    return "{" + ", ".join(str(v) for v in values) + "}"


def _rationals(values):
    return [format_rational(v) for v in values]


def _is_integral(gens):
    return all(g.denominator == 1 for g in gens)


# -- commands ------------------------------------------------------------------


def cmd_lengths(args, cfg):
    gens = parse_rational_list(args.monoid)
    x = as_rational(args.element)
    if _is_integral(gens) and x.denominator == 1:
        N = numsgp.minimalize(int(g) for g in gens)
        lengths = numsgp.length_set(N, int(x))
        atoms, path = _rationals(as_rational(a) for a in N.atoms), "numsgp"
    else:
        M = puiseux.normalize(gens)
        lengths = puiseux.length_set(M, x)
        atoms, path = _rationals(M.atoms), "puiseux"
    result = {"monoid": atoms, "element": format_rational(x), "lengths": list(lengths), "path": path}
    return result, _fmt_set(lengths)


def cmd_factorize(args, cfg):
    M = puiseux.normalize(parse_rational_list(args.monoid))
    x = as_rational(args.element)
    zs = puiseux.factorizations(M, x, cap=cfg.caps.factorization_cap)
    result = {
        "atoms": _rationals(M.atoms),
        "element": format_rational(x),
        "factorizations": [list(z) for z in zs],
        "lengths": sorted({sum(z) for z in zs}),
    }
    text = "\n".join(" + ".join(f"{c}*({a})" for c, a in zip(z, M.atoms) if c) or "0" for z in zs)
    return result, text or "(no factorizations)"


def cmd_atoms(args, cfg):
    M = puiseux.normalize(parse_rational_list(args.gens))
    atoms = _rationals(M.atoms)
    return {"atoms": atoms, "scale_factor": format_rational(M.scale_factor)}, ", ".join(str(a) for a in M.atoms)


def cmd_scale(args, cfg):
    M = puiseux.scale(puiseux.normalize(parse_rational_list(args.monoid)), as_rational(args.by))
    return {"atoms": _rationals(M.atoms), "by": format_rational(as_rational(args.by))}, ", ".join(
        str(a) for a in M.atoms
    )


def cmd_iso(args, cfg):
    M1 = puiseux.normalize(parse_rational_list(args.m1))
    M2 = puiseux.normalize(parse_rational_list(args.m2))
    r = puiseux.isomorphism_factor(M1, M2)
    value = None if r is None else format_rational(r)
    return {"factor": value}, "none" if r is None else str(r)


def cmd_witness_two(args, cfg):
    M = puiseux.normalize(parse_rational_list(args.monoid))
    x, cert = staged.witness_length_two(M)
    return {"monoid": _rationals(M.atoms), "x": format_rational(x), "lengths": list(cert)}, (
        f"x = {x}, L(x) = {_fmt_set(cert)}"
    )


def _build(kind, stages, cfg, pool="all"):
    if kind == "full-ssl":
        return staged.build_full_ssl(
            pool, stages, bounds=cfg.bounds, prime_search_cap=cfg.caps.prime_search_cap
        )
    if pool != "all":
        raise DomainError("--prime-pool only applies to full-ssl")
    return staged.build_non_two(stages)


def cmd_construct(args, cfg):
    M = _build(args.kind, args.stages, cfg, args.prime_pool)
    dump = M.dump()
    lines = "\n".join(json.dumps(s, separators=(",", ":")) for s in dump)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(lines + "\n")
    result = {"kind": M.kind.value, "prime_pool": M.prime_pool.name, "stages": dump}
    return result, lines


def _two_pool(stages, cfg):
    P = _build("full-ssl", stages, cfg, "1mod4")
    Q = _build("full-ssl", stages, cfg, "3mod4")
    report = staged.AuditReport()
    for n in range(1, stages + 1):
        tp, tq = P.stage(n).witness.target, Q.stage(n).witness.target
        report.add(f"targets stage {n}", tp == tq, f"{list(tp)} vs {list(tq)}")
    for s in range(1, stages + 1):
        for t in range(1, stages + 1):
            r = puiseux.isomorphism_factor(P.truncation(s), Q.truncation(t))
            report.add(f"non-isomorphic P{s} Q{t}", r is None)
    sub = staged.audit_full_ssl(P).checks + staged.audit_full_ssl(Q).checks
    report.add("pool audits", all(c["ok"] for c in sub))
    return report


def cmd_verify(args, cfg):
    if args.kind == "two-pool":
        report = _two_pool(args.stages, cfg)
    elif args.kind == "full-ssl":
        report = staged.audit_full_ssl(_build("full-ssl", args.stages, cfg, args.prime_pool))
    else:
        report = staged.audit_non_two(_build("non-two", args.stages, cfg))
    failed = [c for c in report.checks if not c["ok"]]
    text = f"{len(report.checks) - len(failed)}/{len(report.checks)} checks passed"
    if failed:
        text += "\n" + "\n".join(f"FAIL {c['check']}: {c['detail']}" for c in failed)
    return dict(report.to_json(), kind=args.kind, stages=args.stages), text, (EXIT_OK if report.ok else EXIT_AUDIT)


def cmd_realize(args, cfg):
    S = [int(s) for s in args.set.split(",") if s.strip()]
    r = realize(S, cfg.bounds)
    res = r.to_json()
    return res, f"<{', '.join(map(str, res['atoms']))}>, x = {r.element}, L = {_fmt_set(r.verified_set)}"


def cmd_goldbach(args, cfg):
    report = goldbach.verify_goldbach_theorem(args.bound, check_l3=args.check_l3)
    lines = [
        f"goldbach set up to {args.bound}: {len(report.goldbach_set)} numbers",
        f"discrepancies with L(2) on [4, {args.bound}]: {len(report.discrepancies)}",
        f"weak goldbach on [7, {args.bound}]: {'ok' if report.weak_goldbach_ok else 'FAILED'}",
    ]
    if args.bound <= 100:
        lines.insert(1, _fmt_set(report.goldbach_set))
    if args.check_l3:
        for flag in report.L3_flags:
            lines.append(f"L(3) flag: {flag['n']} in computed set = {flag['in_formula_set']}, Z>=7 claim = {flag['claimed']}")
    return report.to_json(), "\n".join(lines)


# -- parser ----------------------------------------------------------------------


def _common():
    common = _Parser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--output", choices=("text", "json"), default="text")
    g.add_argument("--factorization-cap", type=int)
    g.add_argument("--prime-search-cap", type=int)
    g.add_argument("--max-atoms", type=int)
    g.add_argument("--max-atom-value", type=int)
    g.add_argument("--max-element", type=int)
    return common


def build_parser():
    common = _common()
    parser = _Parser(prog="puiseux-lengths", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("lengths", cmd_lengths, "set of lengths of an element")
    p.add_argument("--monoid", required=True, help='generators, e.g. "2,3" or "1,2/3"')
    p.add_argument("--element", required=True)
    p = add("factorize", cmd_factorize, "all factorizations of an element")
    p.add_argument("--monoid", required=True)
    p.add_argument("--element", required=True)
    p = add("atoms", cmd_atoms, "minimal generating set")
    p.add_argument("--gens", required=True)
    p = add("scale", cmd_scale, "rescale a monoid by a positive rational")
    p.add_argument("--monoid", required=True)
    p.add_argument("--by", required=True)
    p = add("iso", cmd_iso, "rational r with M1 = r*M2, if any")
    p.add_argument("--m1", required=True)
    p.add_argument("--m2", required=True)
    p = add("witness-two", cmd_witness_two, "element whose set of lengths is {2}")
    p.add_argument("--monoid", required=True)
    p = add("construct", cmd_construct, "materialize a staged construction")
    p.add_argument("kind", choices=("full-ssl", "non-two"))
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--prime-pool", default="all", help='"all" or a congruence such as "1mod4"')
    p.add_argument("--dump", help="also write the stage dump (JSON lines) to this file")
    p = add("verify", cmd_verify, "audit a staged construction")
    p.add_argument("kind", choices=("full-ssl", "non-two", "two-pool"))
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--prime-pool", default="all")
    p = add("realize", cmd_realize, "integer submonoid and element with a given set of lengths")
    p.add_argument("--set", required=True, help='e.g. "2,3"')
    p = add("goldbach", cmd_goldbach, "lengths of 2 versus Goldbach numbers")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--check-l3", action="store_true")
    return parser


def _config(args) -> RunConfig:
    caps = default_caps()
    overrides = {
        name: getattr(args, name)
        for name in ("factorization_cap", "prime_search_cap", "max_atoms", "max_atom_value", "max_element")
        if getattr(args, name) is not None
    }
    return RunConfig(args.output, replace(caps, **overrides))


def _emit_error(kind, message, code, as_json, extra=None):
    if as_json:
        payload = {"error": kind, "message": message, "exit_code": code}
        if extra:
            payload.update(extra)
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    wants_json = any(a == "json" and i > 0 and argv[i - 1] == "--output" for i, a in enumerate(argv)) or (
        "--output=json" in argv
    )
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        out = args.func(args, cfg)
    except UsageError as exc:
        return _emit_error("usage", str(exc), EXIT_USAGE, wants_json)
    except NotFound as exc:
        return _emit_error("not_found", str(exc), EXIT_RESOURCE, wants_json, exc.to_json())
    except ResourceError as exc:
        return _emit_error("resource", str(exc), EXIT_RESOURCE, wants_json, {"cap": exc.cap})
    except (InternalError, StateError) as exc:
        return _emit_error("invariant", str(exc), EXIT_AUDIT, wants_json)
    except (DomainError, PuiseuxError, ValueError) as exc:
        return _emit_error("domain", str(exc), EXIT_DOMAIN, wants_json)
    result, text = out[0], out[1]
    code = out[2] if len(out) > 2 else EXIT_OK
    if cfg.output_format == "json":
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "config": cfg.to_json(),
            "result": result,
        }
        print(json.dumps(envelope, indent=2))
    else:
        print(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
