"""``concat-blocking`` command line.

Exit codes: 0 success or verified, 1 negative verdict or failed row,
2 guard hit or inconclusive, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__, bounds
from .code import (LinearCode, degeneracy_flags, dual, parse_gmat, weight_distribution,
                   write_gmat)
from .concat import ConcatSpec, certify_minimal_concat, concatenate
from .construct import Fixture, fixture, grs, mds_outer, search_shortest_minimal, simplex
from .errors import ConcatBlockingError, TooLarge
from .gf import companion_matrix, parse_field
from .geometry import (hyperplane_profile, is_strong_blocking, parse_pts, saturation_radius,
                       subgeometry_embed, system_from_code)
from .minimal import PAIR_GUARD, Verdict, ab_condition, is_minimal_code
from .tables import ENUM_LIMIT, reproduce

EXIT_OK, EXIT_NEGATIVE, EXIT_GUARDED, EXIT_USAGE = 0, 1, 2, 64
SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"fraction": str(obj), "value": float(obj)}
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class Output:
    def __init__(self, args):
        self.json = args.json
        self.timing = args.timing
        self.payload = {"schema": SCHEMA, "command": args.command}
        self.lines: list[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def emit(self, seconds: float):
        if self.timing:
            self.payload["seconds"] = round(seconds, 3)
        if self.json:
            print(json.dumps(self.payload, default=_jsonable, sort_keys=True, indent=2))
            return
        for line in self.lines:
            print(line)
        if self.timing:
            print(f"elapsed {seconds:.3f} s", file=sys.stderr)


# -- helpers -----------------------------------------------------------------------

def _load_code(path) -> LinearCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    code = parse_gmat(text)
    code.name = Path(path).name
    return code


def _load_system(path):
    if str(path).endswith(".pts"):
        try:
            return parse_pts(Path(path).read_text())
        except OSError as exc:
            raise UsageError(str(exc)) from None
    return system_from_code(_load_code(path))


def _emit_code(out: Output, code: LinearCode, dest):
    text = write_gmat(code)
    out.payload.update({"n": code.n, "k": code.k, "field": str(code.field)})
    if dest:
        Path(dest).write_text(text)
        out.payload["written"] = str(dest)
        out.text(f"wrote [{code.n},{code.k}]_{code.q} code to {dest}")
    else:
        out.payload["gmat"] = text
        out.text(text.rstrip("\n"))


def _code_summary(code: LinearCode) -> dict:
    wd = weight_distribution(code)
    projective, nondegenerate = degeneracy_flags(code)
    return {"n": code.n, "k": code.k, "q": code.q, "field": str(code.field), "d": wd.d,
            "w": wd.w, "distribution": wd.as_dict(), "projective": projective,
            "nondegenerate": nondegenerate}


# -- commands ------------------------------------------------------------------------

def cmd_construct(args, out: Output) -> int:
    kind = args.kind
    if kind == "simplex":
        code = simplex(parse_field(args.field), args.k)
    elif kind == "grs":
        code = grs(parse_field(args.field), args.n, args.k)
    elif kind == "mds-outer":
        code = mds_outer(parse_field(args.field), args.q, args.K)
    elif kind == "fixture":
        name = Fixture(args.name)
        if name is Fixture.ALFARANO_OUTER:
            if args.field is None:
                raise UsageError("AlfaranoOuter needs --field, --i and --j")
            code = fixture(name, parse_field(args.field), args.i, args.j)
        else:
            code = fixture(name)
    else:
        n, code = search_shortest_minimal(args.q, args.k, args.n_max,
                                          allow_large=args.allow_large)
        out.payload["n_min"] = n
    _emit_code(out, code, args.output)
    return EXIT_OK


def cmd_concat(args, out: Output) -> int:
    spec = ConcatSpec(_load_code(args.outer), _load_code(args.inner))
    code = concatenate(spec)
    _emit_code(out, code, args.output)
    if not args.certify:
        return EXIT_OK
    cert = certify_minimal_concat(spec)
    out.payload["certificate"] = cert.to_dict()
    out.text(f"certificate: {cert.verdict.value} ({cert.method.value})")
    return EXIT_OK if cert.positive else EXIT_GUARDED


def _verdict_code(verdict: Verdict) -> int:
    if verdict in (Verdict.MINIMAL, Verdict.CERTIFIED):
        return EXIT_OK
    return EXIT_NEGATIVE if verdict is Verdict.NOT_MINIMAL else EXIT_GUARDED


def cmd_check(args, out: Output) -> int:
    if args.what == "minimal":
        code = _load_code(args.file)
        if code.size <= PAIR_GUARD:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                cert = is_minimal_code(code)
        else:
            cert = ab_condition(code)
        out.payload["certificate"] = cert.to_dict()
        out.text(f"{code.name}: {cert.verdict.value} ({cert.method.value})")
        if cert.witness:
            out.text(f"  witness codeword {list(cert.witness[0])}")
            out.text(f"  contains support of {list(cert.witness[1])}")
        return _verdict_code(cert.verdict)
    if args.what == "sbs":
        s = _load_system(args.file)
        cert = is_strong_blocking(s)
        out.payload["certificate"] = cert.to_dict()
        label = "strong blocking set" if cert.positive else "not a strong blocking set"
        out.text(f"{args.file}: {label}")
        if cert.witness:
            out.text(f"  hyperplane {list(cert.witness[0])} section does not span it")
        return _verdict_code(cert.verdict)
    s = _load_system(args.file)
    if args.ambient:
        big = parse_field(args.ambient)
        small = s.field
        if big.p != small.p or big.m % small.m:
            raise UsageError(f"GF({big}) does not contain GF({small})")
        if big.m != small.m:
            s = subgeometry_embed(s, big.m // small.m)
    rho = saturation_radius(s)
    out.payload.update({"rho": rho, "ambient": str(s.field), "k": s.k, "points": s.n})
    out.text(f"saturation radius {rho} in PG({s.k - 1},{s.field.q})")
    return EXIT_OK


def cmd_profile(args, out: Output) -> int:
    s = _load_system(args.file)
    prof = hyperplane_profile(s)
    out.payload["profile"] = prof.to_dict()
    out.text(f"n={prof.n} min={prof.m} max={prof.M} d={prof.n - prof.M}")
    out.text(f"ratio test: {prof.certificate.verdict.value}")
    return EXIT_OK


def cmd_code_info(args, out: Output) -> int:
    code = _load_code(args.file)
    info = _code_summary(code)
    if args.dual:
        info["dual"] = _code_summary(dual(code))
    out.payload["code"] = info
    out.text(f"[{info['n']},{info['k']},{info['d']}]_{info['q']}  max weight {info['w']}")
    out.text("distribution " + " ".join(f"{w}:{c}" for w, c in info["distribution"].items()))
    out.text(f"projective {info['projective']}  nondegenerate {info['nondegenerate']}")
    return EXIT_OK


def _bounds_report(args) -> bounds.BoundsReport:
    what = args.what
    if what == "sbs":
        rep = bounds.BoundsReport({"k": args.k, "q": args.q})
        rep.add("lower", bounds.sbs_lower_bound(args.k, args.q), "(q+1)(k-1)")
        rep.add("upper", bounds.sbs_upper_bound(args.k, args.q),
                "floor((2k-1)/log2(4/3)) if q = 2 else (q+1) ceil(2(k-1)/(1+1/((q+1)^2 ln q)))")
    elif what == "gv":
        rep = bounds.BoundsReport({"q": args.q, "delta": args.delta})
        rep.add("entropy", bounds.q_entropy(args.q, args.delta), "H_q(delta)")
        rep.add("rate", bounds.gv_rate(args.q, args.delta), "1 - H_q(delta)")
        if args.eps is not None:
            rep.add("size_factor", bounds.gv_sbs_size_factor(args.q, args.eps),
                    "q^(1+2 eps) (q+1) / (1-eps)")
    elif what == "tower":
        p = bounds.tower_params(args.q0, args.h, args.n)
        rep = bounds.BoundsReport({"q0": args.q0, "h": args.h, "n": args.n})
        for key, val in p.to_dict().items():
            if key not in ("q0", "h", "n") and val is not None:
                rep.add(key, val, "tower")
        e = args.inner_dim
        if e:
            length, dim, dist = bounds.simplex_concat_params(p.N, p.k_n, p.outer_dist_lb,
                                                             args.q0, e)
            rep.add("simplex_concat", {"length": length, "dim": dim, "dist_lb": dist},
                    f"[N(q0^e-1)/(q0-1), k_n e, (N-m_n) q0^(e-1)] with e = {e}")
    elif what == "saturating":
        lo, hi, special = bounds.saturating_bounds(args.k, args.q, args.rho)
        rep = bounds.BoundsReport({"k": args.k, "q": args.q, "rho": args.rho})
        rep.add("lower", lo, "(rho+1)/e q^(k-1-rho)")
        rep.add("upper", hi, "rho(rho+1)(q^(k-1-rho)/2 + (q^(k-1-rho)-1)/(q-1))")
        rep.add("rho_k_minus_2_upper", special, "q C(k-1,2) + (k-1)(k-2)")
    elif what == "mds":
        N, D = bounds.mds_outer_params(args.q, args.K)
        rep = bounds.BoundsReport({"q": args.q, "K": args.K})
        rep.add("N", N, "qK - q + 1")
        rep.add("D", D, "(q-1)(K-1) + 1")
    else:
        rep = bounds.BoundsReport({"q0": args.q0})
        for key, val in bounds.rt4_params(args.q0).items():
            rep.add(key, val, "rt4")
    return rep


def cmd_bounds(args, out: Output) -> int:
    rep = _bounds_report(args)
    out.payload.update(rep.to_dict())
    for key, entry in rep.results.items():
        val = entry["value"]
        if isinstance(val, dict) and "fraction" in val:
            val = f"{val['fraction']} ({val['value']:.6g})"
        out.text(f"{key} = {val}")
    return EXIT_OK


def cmd_reproduce(args, out: Output) -> int:
    ids = args.rows.split(",") if args.rows else None
    results = reproduce(args.table, ids, outer_dir=args.outer_dir, enum_limit=args.enum_limit)
    out.payload["table"] = args.table
    out.payload["rows"] = [r.to_dict(timing=args.timing) for r in results]
    for r in results:
        out.text(r.line())
    counts = {s: sum(r.status == s for r in results) for s in ("PASS", "FAIL", "SKIPPED")}
    out.payload["summary"] = counts
    out.text(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIPPED']} skipped")
    return EXIT_NEGATIVE if counts["FAIL"] else EXIT_OK


def cmd_info(args, out: Output) -> int:
    out.payload["version"] = __version__
    out.text(f"concat-blocking {__version__}")
    if args.field:
        F = parse_field(args.field)
        info = {"p": F.p, "m": F.m, "q": F.q, "poly": list(F.poly),
                "generator": F.generator, "companion": companion_matrix(F).tolist()}
        out.payload["field"] = info
        out.text(f"GF({F}) of order {F.q}")
        out.text(f"  primitive polynomial coefficients (a0..am) {info['poly']}")
        out.text(f"  generator {F.generator}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--json", action="store_true", default=default,
                            help="emit a JSON report")
        parent.add_argument("--timing", action="store_true", default=default,
                            help="report elapsed time")
        return parent

    # subcommands must not reset flags given before them
    common = flags(argparse.SUPPRESS)
    ap = _Parser(prog="concat-blocking", parents=[flags(False)],
                 description="Minimal codes, concatenation and strong blocking sets.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    con = sub.add_parser("construct", parents=[common], help="build a code, print .gmat")
    csub = con.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    p = csub.add_parser("simplex", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("-k", type=int, required=True)
    p = csub.add_parser("grs", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p = csub.add_parser("mds-outer", parents=[common])
    p.add_argument("--field", required=True, help="outer field GF(q^k)")
    p.add_argument("-q", type=int, required=True, help="base field order")
    p.add_argument("-K", type=int, required=True)
    p = csub.add_parser("fixture", parents=[common])
    p.add_argument("name", choices=[f.value for f in Fixture])
    p.add_argument("--field")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p = csub.add_parser("search", parents=[common])
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--allow-large", action="store_true")
    for p in csub.choices.values():
        p.add_argument("-o", "--output")

    p = sub.add_parser("concat", parents=[common], help="concatenate two .gmat codes")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--certify", action="store_true")

    chk = sub.add_parser("check", parents=[common], help="minimality and geometry checks")
    ksub = chk.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = ksub.add_parser("minimal", parents=[common])
    p.add_argument("file")
    p = ksub.add_parser("sbs", parents=[common])
    p.add_argument("file", help=".gmat or .pts")
    p = ksub.add_parser("saturating", parents=[common])
    p.add_argument("file", help=".gmat or .pts")
    p.add_argument("--ambient", help="ambient field q^e containing the file's field")

    p = sub.add_parser("profile", parents=[common], help="hyperplane intersection profile")
    p.add_argument("file")

    code = sub.add_parser("code", parents=[common], help="code utilities")
    cosub = code.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = cosub.add_parser("info", parents=[common])
    p.add_argument("file")
    p.add_argument("--dual", action="store_true")

    bnd = sub.add_parser("bounds", parents=[common], help="closed-form bounds")
    bsub = bnd.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = bsub.add_parser("sbs", parents=[common])
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p = bsub.add_parser("gv", parents=[common])
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--eps", type=float)
    p = bsub.add_parser("tower", parents=[common])
    p.add_argument("--q0", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inner-dim", type=int, default=3,
                   help="simplex inner dimension for the worked arithmetic (0 to omit)")
    p = bsub.add_parser("saturating", parents=[common])
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p = bsub.add_parser("mds", parents=[common])
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-K", type=int, required=True)
    p = bsub.add_parser("rt4", parents=[common])
    p.add_argument("--q0", type=int, required=True)

    p = sub.add_parser("reproduce", parents=[common], help="rebuild table rows")
    p.add_argument("table", type=int, choices=[1, 2])
    p.add_argument("--rows", help="comma-separated row ids, e.g. T1-1,T1-2")
    p.add_argument("--outer-dir", help="directory with <row-id>.gmat outer codes")
    p.add_argument("--enum-limit", type=int, default=ENUM_LIMIT)

    p = sub.add_parser("info", parents=[common], help="version and field details")
    p.add_argument("--field")
    return ap


COMMANDS = {"construct": cmd_construct, "concat": cmd_concat, "check": cmd_check,
            "profile": cmd_profile, "code": cmd_code_info, "bounds": cmd_bounds,
            "reproduce": cmd_reproduce, "info": cmd_info}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args)
    t0 = time.perf_counter()
    try:
        status = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"concat-blocking: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"concat-blocking: guard: {exc}", file=sys.stderr)
        return EXIT_GUARDED
    except (ConcatBlockingError, ValueError) as exc:
        print(f"concat-blocking: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.emit(time.perf_counter() - t0)
    return status


if __name__ == "__main__":
    sys.exit(main())
