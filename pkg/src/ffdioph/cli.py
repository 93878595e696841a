"""Command-line front end.

Exit codes: 0 success; 1 usage error; 2 verification failure (a property the
theory guarantees did not hold - the strongest regression signal); 3 budget
or precision refusal.  Flags mirror environment variables with the
``FFDIOPH_`` prefix (FFDIOPH_FORMAT, FFDIOPH_SEED, FFDIOPH_PAR,
FFDIOPH_OUT).  All output is deterministic for a fixed (config, seed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import approx, badset, construct, formats, singularity, transfer
from .contfrac import cf_from_partial_quotients, verify_identities
from .errors import (
    BudgetExceeded,
    CFTooShort,
    FFDiophError,
    NotFoundAtBound,
    PrecisionExceeded,
    SpecExhausted,
    VerificationDefect,
)
from .laurent import Laurent
from .ostrowski import cylinder_of, decompose_poly, enumerate_prefixes, expand_beta
from .vectors import LaurentMatrix, LaurentVec, PolyVec


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, naming the flag
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _env(name, default=None):
    return os.environ.get(f"FFDIOPH_{name}", default)


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=["json", "csv"], default=_env("FORMAT", "json")
    )
    common.add_argument("--out", default=_env("OUT"))
    common.add_argument("--seed", type=int, default=int(_env("SEED", "0")))
    common.add_argument("--par", type=int, default=int(_env("PAR", "1")))
    parents = {"parents": [common]}

    p = _Parser(prog="ffdioph", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    cf = sub.add_parser("cf", help="continued fractions")
    cfsub = cf.add_subparsers(dest="action", required=True)
    cfe = cfsub.add_parser("expand", **parents)
    cfe.add_argument("--field", required=True)
    cfe.add_argument("--source", required=True)
    cfe.add_argument("--max-k", type=int, required=True)
    cfe.add_argument("--verify", action="store_true", help="run the identity suite")

    ost = sub.add_parser("ostrowski", help="Ostrowski numeration")
    ostsub = ost.add_subparsers(dest="action", required=True)
    for name in ("expand", "decompose", "cylinders"):
        sp = ostsub.add_parser(name, **parents)
        sp.add_argument("--field", required=True)
        sp.add_argument("--alpha", required=True, help="cf source spec")
        sp.add_argument("--depth", type=int, required=True)
        if name == "expand":
            sp.add_argument("--beta", required=True, help="Laurent JSON")
        if name == "decompose":
            sp.add_argument("--poly", required=True)

    ap = sub.add_parser("approx", help="Dirichlet / best approximations / exponents")
    apsub = ap.add_subparsers(dest="action", required=True)
    for name in ("dirichlet", "bestseq", "exponents"):
        sp = apsub.add_parser(name, **parents)
        sp.add_argument("--field", required=True)
        sp.add_argument("--matrix", required=True, help="matrix JSON or @file")
        if name == "dirichlet":
            sp.add_argument("--c", type=int, required=True)
        if name == "bestseq":
            sp.add_argument("--ymax", required=True, help="q^Y")
        if name == "exponents":
            sp.add_argument("--theta", help="vector JSON or @file")
            sp.add_argument("--height", required=True, help="q^h")

    tr = sub.add_parser("transfer", help="transference and Kronecker checks")
    trsub = tr.add_subparsers(dest="action", required=True)
    for name in ("check", "solve", "kronecker"):
        sp = trsub.add_parser(name, **parents)
        sp.add_argument("--field", required=True)
        sp.add_argument("--matrix", required=True)
        sp.add_argument("--theta", required=name != "check")
        if name in ("check", "solve"):
            sp.add_argument("--s", type=int, required=True)
            sp.add_argument("--t", type=int, required=True)
        if name == "kronecker":
            sp.add_argument("--bound", type=int, required=True)
            sp.add_argument("--eps-exp", type=int)

    co = sub.add_parser("construct", help="prescribed-exponent constructions", **parents)
    co.add_argument("--field", default="q=2")
    co.add_argument("--omega", required=True, help="rational or 'inf'")
    co.add_argument("--nu", required=True, help="rational or 'inf'")
    co.add_argument("--levels", type=int, required=True)
    co.add_argument("--verify", default="upper,lower")
    co.add_argument("--nmax", type=int, default=None)

    si = sub.add_parser("singular", help="singular-on-average statistics", **parents)
    si.add_argument("--field", default="q=2")
    si.add_argument("--alpha", required=True)
    si.add_argument("--N", type=int, required=True)
    si.add_argument("--c", required=True, help="rational, e.g. 1/8")
    si.add_argument("--oracle", action="store_true")
    si.add_argument("--scan", help="comma list of N values for the scan table")

    ba = sub.add_parser("bad", help="Bad-set certificates and survivor trees")
    basub = ba.add_subparsers(dest="action", required=True)
    bc = basub.add_parser("certify", **parents)
    bc.add_argument("--field", required=True)
    bc.add_argument("--matrix", help="matrix JSON or @file")
    bc.add_argument("--alpha", help="cf source (1x1 shortcut)")
    bc.add_argument("--theta", help="vector JSON or @file")
    bc.add_argument("--epsilon", required=True, help="q^-a or q^-a/b")
    bc.add_argument("--window", required=True, help="h0:h1")
    bs = basub.add_parser("survivors", **parents)
    bs.add_argument("--field", required=True)
    bs.add_argument("--alpha", help="cf source (1x1 shortcut)")
    bs.add_argument("--matrix", help="matrix JSON or @file")
    bs.add_argument("--l", type=int, required=True)
    bs.add_argument("--depth", type=int, required=True)
    bs.add_argument("--ymax", default="q^8")
    bv = basub.add_parser("cover", **parents)
    bv.add_argument("--field", default="q=2")
    bv.add_argument("--alpha", required=True)
    bv.add_argument("--K", type=int, default=1)
    bv.add_argument("--t", type=int, required=True)
    bv.add_argument("--depth", type=int, required=True)
    bv.add_argument("--M", help="rational > lambda for the s-bound")

    dm = sub.add_parser("dimension", help="dimension-bound formula evaluation", **parents)
    dm.add_argument("--d", required=True, help="comma list of grid exponents")
    dm.add_argument("--l", type=int, required=True)
    dm.add_argument("--n", type=int, default=1)
    dm.add_argument("--q", type=int, default=2)
    return p


# -- input helpers -----------------------------------------------------------------


def _load_json_arg(s: str):
    if s.startswith("@"):
        with open(s[1:]) as fh:
            return json.load(fh)
    return json.loads(s)


def _matrix(F, s: str) -> LaurentMatrix:
    return formats.matrix_from_obj(F, _load_json_arg(s))


def _vector(F, s: str) -> LaurentVec:
    return formats.vector_from_obj(F, _load_json_arg(s))


def _qpow(s: str) -> int:
    s = s.strip()
    if s.startswith("q^"):
        return int(s[2:])
    return int(s)


def _alpha_matrix(F, args, prec=60):
    if getattr(args, "matrix", None):
        return _matrix(F, args.matrix)
    cf = formats.parse_cf_source(F, args.alpha, seed=args.seed)
    return LaurentMatrix([[cf.alpha(prec)]])


# -- emitters ---------------------------------------------------------------------


def _emit(args, payload) -> None:
    if args.format == "csv" and isinstance(payload, list):
        buf = io.StringIO()
        if payload and isinstance(payload[0], dict):
            w = csv.DictWriter(buf, fieldnames=sorted(payload[0]))
            w.writeheader()
            for row in payload:
                w.writerow({k: _csv_cell(v) for k, v in row.items()})
        out = buf.getvalue()
    else:
        out = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=_json_cell)
        out += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, default=_json_cell)
    return v


def _json_cell(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"not serializable: {v!r}")


def _frac_str(x) -> str:
    return str(x) if x is not None else "-inf"


# -- handlers ---------------------------------------------------------------------


def _cmd_cf(args) -> int:
    F = formats.parse_field(args.field)
    cf = formats.parse_cf_source(F, args.source, seed=args.seed)
    try:
        cf.extend_to(args.max_k)
    except SpecExhausted:
        if not cf.terminated:
            raise
    rows = []
    for k in range(1, cf.k_max() + 1):
        rows.append(
            {
                "k": k,
                "A": formats.poly_to_obj(cf.A(k)),
                "P": formats.poly_to_obj(cf.P(k)),
                "Q": formats.poly_to_obj(cf.Q(k)),
                "deg_Q": cf.deg_Q(k),
            }
        )
    if args.verify:
        for k in range(1, cf.k_max() - 2):
            rep = verify_identities(cf, k)
            if not rep.all_pass:
                raise VerificationDefect(f"identity suite failed at k = {k}: {rep}")
    _emit(args, rows)
    return 0


def _cmd_ostrowski(args) -> int:
    F = formats.parse_field(args.field)
    cf = formats.parse_cf_source(F, args.alpha, seed=args.seed)
    if args.action == "expand":
        beta = formats.laurent_from_obj(F, _load_json_arg(args.beta))
        digits = expand_beta(beta, cf, args.depth).digits
        _emit(args, [formats.poly_to_obj(d) for d in digits])
    elif args.action == "decompose":
        Q = formats.poly_from_expr(F, args.poly) if not args.poly.startswith("[") \
            else formats.poly_from_obj(F, json.loads(args.poly))
        B = decompose_poly(Q, cf, args.depth)
        _emit(args, [formats.poly_to_obj(b) for b in B])
    else:
        rows = []
        for prefix in enumerate_prefixes(cf, args.depth):
            cyl = cylinder_of(prefix, cf)
            rows.append(
                {
                    "prefix": [formats.poly_to_obj(s) for s in prefix],
                    "center": formats.laurent_to_obj(cyl.center),
                    "radius_exp": cyl.radius_exp,
                }
            )
        _emit(args, rows)
    return 0


def _cmd_approx(args) -> int:
    F = formats.parse_field(args.field)
    A = _matrix(F, args.matrix)
    if args.action == "dirichlet":
        u = approx.dirichlet_solve(A, args.c)
        val = A.apply(u).bracket_dist()
        _emit(
            args,
            {
                "u": [formats.poly_to_obj(p) for p in u],
                "norm_exp": u.norm().exp,
                "value_exp": val.exp,
            },
        )
    elif args.action == "bestseq":
        seq = approx.best_approx_seq(A, _qpow(args.ymax))
        rep = approx.check_best_approx_props(seq)
        _emit(
            args,
            {
                "records": [
                    {
                        "y": [formats.poly_to_obj(p) for p in v],
                        "Y_exp": ye,
                        "M_exp": me,
                    }
                    for v, ye, me in zip(seq.vectors, seq.Y_exps, seq.M_exps)
                ],
                "degenerate": seq.degenerate,
                "checks": {
                    "monotone": rep.monotone_Y_step,
                    "main_inequality": rep.main_inequality,
                    "sharpened_m1": rep.sharpened_m1,
                },
            },
        )
    else:
        theta = _vector(F, args.theta) if args.theta else None
        w = approx.exponent_estimates(A, theta, _qpow(args.height))
        _emit(
            args,
            {
                "rows": [{"h": h, "e": e} for h, e in w.rows],
                "omega_witness": _frac_str(w.omega_witness),
                "omega_hat_witness": _frac_str(w.omega_hat_witness),
                "note": "witnesses at height H, not limits",
            },
        )
    return 0


def _cmd_transfer(args) -> int:
    F = formats.parse_field(args.field)
    A = _matrix(F, args.matrix)
    if args.action == "kronecker":
        theta = _vector(F, args.theta)
        rep = transfer.kronecker_condition2(A, theta, args.bound)
        payload = {
            "condition2_holds": rep.holds,
            "at_degree": rep.deg_bound,
            "relations_checked": rep.relations_checked,
            "exact": rep.exact,
            "witnesses": [
                {"u": [formats.poly_to_obj(p) for p in u], "frac_exp": e}
                for u, e in rep.witnesses
            ],
        }
        if args.eps_exp is not None:
            x = transfer.kronecker_solve(A, theta, args.eps_exp)
            payload["solution"] = [formats.poly_to_obj(p) for p in x]
        _emit(args, payload)
        return 0
    theta = _vector(F, args.theta) if args.theta else LaurentVec(
        [Laurent.exact_zero(F)] * A.n
    )
    inst = transfer.TransferInstance(A, theta, args.s, args.t)
    if args.action == "check":
        _emit(args, {"hypothesis_holds": transfer.hypothesis_holds(inst)})
        return 0
    x = transfer.transference_solve(inst)
    _emit(args, {"x": [formats.poly_to_obj(p) for p in x]})
    return 0


def _cmd_construct(args) -> int:
    F = formats.parse_field(args.field)
    om = construct.INF if args.omega == "inf" else Fraction(args.omega)
    nu = construct.INF if args.nu == "inf" else Fraction(args.nu)
    spec = construct.GrowthSpec(om, nu, F)
    K = args.levels
    xb = construct.build_xi(spec, K)
    tb = construct.build_theta(xb, nu, max(K - 2, 1))
    n_max = args.nmax if args.nmax is not None else max(K - 4, 1)
    what = set(args.verify.split(",")) if args.verify else set()
    audit = []
    ok = True
    for n in range(0, n_max + 1):
        row = {"n": n, "deg_Q": xb.deg_Q(n), "deg_u": tb.e[n], "deg_V": tb.deg_V(n)}
        if "upper" in what:
            rep = construct.verify_upper(tb, n)
            row["upper"] = {
                "lhs_exp": rep.lhs_exp,
                "mid_exp": _frac_str(rep.mid_exp),
                "rhs_exp": _frac_str(rep.rhs_exp),
                "witness_ratio": _frac_str(rep.witness_ratio),
                "passed": rep.passed,
            }
            ok = ok and rep.passed
        if "lower" in what and tb.deg_V(n) <= 13:
            rep = construct.verify_lower(tb, n)
            row["lower"] = {
                "bound_exp": _frac_str(rep.bound_exp),
                "min_exp": rep.min_exp,
                "passed": rep.passed,
            }
            ok = ok and rep.passed
        audit.append(row)
    _emit(args, {"audit": audit, "all_passed": ok})
    if not ok:
        raise VerificationDefect("a construction window or bound failed")
    return 0


def _cmd_singular(args) -> int:
    F = formats.parse_field(args.field)
    cf = formats.parse_cf_source(F, args.alpha, seed=args.seed)
    c = Fraction(args.c)
    if args.scan:
        Ns = [int(x) for x in args.scan.split(",")]
        rep = singularity.singular_on_average_scan(cf, Ns, [c])
        _emit(
            args,
            {
                "rows": [
                    {
                        "N": r.N,
                        "delta": r.delta,
                        "ratio": _frac_str(r.ratio),
                        "certified_bound": _frac_str(r.certified_bound),
                        "interval_rate": _frac_str(r.interval_rate),
                    }
                    for r in rep.rows
                ],
                "verdict": rep.verdict,
            },
        )
        return 0
    if args.N == 0:
        _emit(args, [{"N": 0, "delta": 0}])
        return 0
    if args.oracle and args.par > 1:
        with ThreadPoolExecutor(max_workers=args.par) as ex:
            verdicts = list(
                ex.map(
                    lambda l: singularity.has_solution_at(cf, 2**l, c, oracle=True),
                    range(1, args.N + 1),
                )
            )
    else:
        verdicts = [
            singularity.has_solution_at(cf, 2**l, c, oracle=args.oracle)
            for l in range(1, args.N + 1)
        ]
    rows = [{"l": l, "solvable": v} for l, v in enumerate(verdicts, start=1)]
    rows.append({"l": "delta", "solvable": sum(verdicts)})
    _emit(args, rows)
    return 0


def _cmd_bad(args) -> int:
    F = formats.parse_field(args.field)
    if args.action == "certify":
        A = _alpha_matrix(F, args)
        theta = _vector(F, args.theta) if args.theta else None
        a, b = formats.parse_eps(args.epsilon)
        h0, _, h1 = args.window.partition(":")
        cert = badset.bad_certify(A, theta, (a, b), int(h0), int(h1))
        _emit(
            args,
            {
                "passed": cert.passed,
                "min_stat": _frac_str(cert.min_stat),
                "argmin": [formats.poly_to_obj(p) for p in cert.argmin]
                if cert.argmin
                else None,
                "window": [cert.h0, cert.h1],
                "claim": f"certificate up to height q^{cert.h1} only",
            },
        )
        return 0
    if args.action == "survivors":
        A = _alpha_matrix(F, args)
        seq = approx.best_approx_seq(A, _qpow(args.ymax))
        idx = badset.phi_extract(seq.Y_exps, args.l)
        rows = [seq.vectors[i - 1] for i in idx if seq.Y_exps[i - 1] >= 1]
        tree = badset.survivor_tree(rows[: args.depth], A.n, args.l, args.depth)
        out = sys.stdout if not args.out else open(args.out, "w")
        try:
            for lv in tree.levels:
                for c in lv.centers:
                    out.write(
                        json.dumps(
                            {"level": lv.index, "center": [list(x) for x in c]},
                            sort_keys=True,
                        )
                        + "\n"
                    )
        finally:
            if args.out:
                out.close()
        return 0
    cf = formats.parse_cf_source(F, args.alpha, seed=args.seed)
    M = Fraction(args.M) if args.M else None
    rep = badset.ostro_cover(cf, args.K, args.t, args.depth, M=M)
    _emit(
        args,
        {
            "k_seq": rep.k_seq,
            "levels": [
                {
                    "i": lv.i,
                    "survivors": lv.survivors,
                    "max_per_parent": lv.max_per_parent,
                    "per_parent_bound": lv.per_parent_bound,
                    "separation_ok": lv.separation_ok,
                }
                for lv in rep.levels
            ],
            "lambda_running_min": _frac_str(rep.lambda_running_min),
            "s_bound": rep.s_bound,
        },
    )
    return 0


def _cmd_dimension(args) -> int:
    d = [int(x) for x in args.d.split(",")]
    rep = badset.dimension_lower_bound(d, args.l, args.n, args.q)
    _emit(
        args,
        {
            "value": _frac_str(rep.value),
            "paper_limit": _frac_str(rep.limit),
            "k": rep.k,
            "note": "finite-k value; the limit is printed for comparison only",
        },
    )
    return 0


_HANDLERS = {
    "cf": _cmd_cf,
    "ostrowski": _cmd_ostrowski,
    "approx": _cmd_approx,
    "transfer": _cmd_transfer,
    "construct": _cmd_construct,
    "singular": _cmd_singular,
    "bad": _cmd_bad,
    "dimension": _cmd_dimension,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except VerificationDefect as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return 2
    except (BudgetExceeded, PrecisionExceeded, CFTooShort, NotFoundAtBound) as err:
        print(f"refused: {err}", file=sys.stderr)
        return 3
    except (FFDiophError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
