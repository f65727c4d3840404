"""Command-line interface: ``twisted-terada <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import cohomology, homology, qseries, selberg, terada
from .ratfun import NearPoleError, rat_eq

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_POLE = 3

ENUM_CAP = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _emit(obj: dict, as_json: bool, text: str) -> None:
    print(json.dumps(obj) if as_json else text)


def _cap(args, n: int) -> None:
    if n > ENUM_CAP and not args.force:
        raise _Refused(f"n={n} exceeds the enumeration cap {ENUM_CAP}; pass --force to run anyway")


class _Refused(Exception):
    pass


# ---- subcommands -------------------------------------------------------------------


def _cmd_jn(args) -> int:
    _cap(args, args.n)
    report = homology.jn_report(args.n, check=args.check)
    if args.json:
        print(report.dumps())
    else:
        print(f"J_{args.n}/{args.n}! = {report.closed}")
        if args.check:
            print(f"enumeration over {report.term_count} faces: {'equal' if report.equal else 'MISMATCH'}")
    return EXIT_OK if report.equal else EXIT_FAIL


def _cmd_faces(args) -> int:
    _cap(args, args.n)
    fv = terada.fvector(args.n)
    _emit({"n": args.n, "fvector": fv}, args.json, f"Terada-{args.n} f-vector: {tuple(fv)}")
    return EXIT_OK


def _cmd_neighbors(args) -> int:
    _cap(args, args.n)
    n = args.n
    rows = []
    for sigma in terada.neighbor_permutations(n):
        faces = [str(f) for s, f in terada.touching_neighbors(n) if s == sigma]
        rows.append({"sigma": "".join(map(str, sigma)),
                     "juzu": str(terada.juzu_of_permutation(sigma)),
                     "faces": faces})
    far = [str(j) for j in terada.non_touching_juzus(n)]
    if args.json:
        print(json.dumps({"n": n, "neighbors": rows, "non_touching": far}))
        return EXIT_OK
    print(f"Terada-{n} T touches {len(rows)} others:")
    for r in rows:
        print(f"  {r['sigma']}  juzu {r['juzu']}  along {', '.join(r['faces'])}")
    if n == 4 or args.all:
        print(f"non-touching juzus: {' '.join(far) or '(none)'}")
    return EXIT_OK


def _cmd_cohomology(args) -> int:
    closed = cohomology.omega_closed(args.n)
    ok = cohomology.verify_theorem2(args.n) if args.check else True
    if args.json:
        out = {"n": args.n, "equal": ok, "two_pi_i_power": closed.power,
               "closed_factors": [[str(f), m] for f, m in closed.rational_part.factors]}
        if args.check:
            out["enumerated"] = cohomology.omega_self_intersection(args.n).rational_part.to_json()
        print(json.dumps(out))
    else:
        print(f"omega.omega = (2 pi i)^{closed.power} * {closed.rational_part}")
        if args.check:
            print(f"admissible-vertex sum: {'equal' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def _qseries_checks(n_max: int) -> list[tuple[str, int, bool]]:
    out = []
    for n in range(1, n_max + 1):
        out.append(("g-binomial alternating sum", n, qseries.verify_g_binomial_alternating(n)))
        out.append(("q-Chu-Vandermonde", n, qseries.verify_q_chu_vandermonde(n)))
        out.append(("reversal identity", n, qseries.verify_reversal_identity(n)))
        out.append(("Chu-Vandermonde", n, qseries.verify_classical_chu_vandermonde(n)))
    return out


def _print_checks(checks: list[tuple[str, int, bool]], as_json: bool) -> int:
    if as_json:
        print(json.dumps({"checks": [{"name": c, "n": n, "ok": ok} for c, n, ok in checks],
                          "ok": all(ok for *_, ok in checks)}))
    else:
        for c, n, ok in checks:
            print(f"{'PASS' if ok else 'FAIL'}  {c}  n={n}")
    return EXIT_OK if all(ok for *_, ok in checks) else EXIT_FAIL


def _cmd_qcheck(args) -> int:
    return _print_checks(_qseries_checks(args.n_max), args.json)


def _tolerance(n: int) -> float:
    return 1e-8 if n <= 3 else 1e-6


def _cmd_reciprocity(args) -> int:
    if args.draws is not None:
        params = selberg.random_params(args.n, args.seed, args.draws, margin=args.margin)
    else:
        missing = [k for k in ("alpha", "beta", "gamma") if getattr(args, k) is None]
        if missing:
            raise _Usage(f"--{', --'.join(missing)} required unless --draws is given")
        params = [selberg.SelbergParams(args.n, args.alpha, args.beta, args.gamma, args.margin)]
        params[0].negated()
    reports = [selberg.reciprocity_report(p, args.seed) for p in params]
    tol = _tolerance(args.n)
    for r in reports:
        if args.json:
            print(json.dumps(r.to_json()))
        else:
            a, b, g = r.params
            print(f"n={r.n} alpha={a:.6g} beta={b:.6g} gamma={g:.6g} residual={r.residual:.3e} seed={r.seed}")
    return EXIT_OK if all(r.residual < tol for r in reports) else EXIT_FAIL


def _cmd_verify(args) -> int:
    m = args.n_max
    top = m if args.force else min(m, ENUM_CAP)
    checks: list[tuple[str, int, bool]] = []
    for n in range(1, top + 1):
        enumerated = homology.jn_enumerated(n)
        closed = homology.jn_closed(n).expand() / _fact(n)
        checks.append(("J_n enumeration = closed form", n, rat_eq(enumerated, closed)))
        checks.append(("J_n decomposition = enumeration", n, rat_eq(homology.jn_decomposed(n), enumerated)))
    for n in range(1, m + 1):
        checks.append(("X(n,n) closed form", n, rat_eq(homology.x_monomial_sum(n, n), homology.x_closed(n).expand())))
        checks.append(("A_n recursion", n, rat_eq(homology.a_recursive(n), homology.a_closed(n).expand())))
        checks.append(("omega vertex sum = closed form", n, cohomology.verify_theorem2(n)))
        checks.append(("n-beta simplex sum", n, rat_eq(cohomology.beta_n_simplex_self(n),
                                                        cohomology.beta_n_simplex_closed(n))))
    checks += _qseries_checks(m)
    return _print_checks(checks, args.json)


def _fact(n: int) -> int:
    from math import factorial

    return factorial(n)


class _Usage(Exception):
    pass


# ---- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twisted-terada", description="Intersection numbers on Terada-n chambers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="print JSON")
        return sp

    sp = add("jn", _cmd_jn, "closed form of J_n / n!")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--check", action="store_true", help="also enumerate the faces and compare")
    sp.add_argument("--force", action="store_true")

    sp = add("faces", _cmd_faces, "f-vector of Terada-n")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--force", action="store_true")

    sp = add("neighbors", _cmd_neighbors, "chambers touching T")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--all", action="store_true", help="list non-touching juzus for any n")
    sp.add_argument("--force", action="store_true")

    sp = add("cohomology", _cmd_cohomology, "self-intersection of omega")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--check", action="store_true", help="compare with the admissible-vertex sum")

    sp = add("qcheck", _cmd_qcheck, "q-series identities")
    sp.add_argument("--n-max", type=_positive, required=True)

    sp = add("reciprocity", _cmd_reciprocity, "numeric Selberg reciprocity residual")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--draws", type=_positive)
    sp.add_argument("--margin", type=float, default=selberg.DEFAULT_MARGIN)

    sp = add("verify", _cmd_verify, "run every exact check up to n-max")
    sp.add_argument("--n-max", type=_positive, required=True)
    sp.add_argument("--force", action="store_true")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (_Refused, _Usage) as e:
        print(f"twisted-terada: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (selberg.PoleMarginError, selberg.GammaPoleError, NearPoleError) as e:
        print(f"twisted-terada: pole: {e}", file=sys.stderr)
        return EXIT_POLE


def main() -> None:
    sys.exit(run())
