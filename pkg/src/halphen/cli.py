"""Command-line front end: roots, spectrum, potential, exact, dist, verify.

Exit codes: 0 success, 1 invariant failure (verify), 2 usage, 3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from fractions import Fraction

from . import distributional as dist
from . import exact_j_half as ejh
from . import qes, verify
from .algebraization import canonical_operator
from .errors import HalphenError
from .exactmath import Surd, is_exact
from .report import encode, fmt
from .weierstrass import EllipticInvariants, r_to_w, roots_from_invariants

log = logging.getLogger("halphen")


def rational(text: str) -> Fraction:
    """Exact parse of "p/q", integers and finite decimals."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _root(z) -> dict:
    e = encode(z)
    if "value" in e:
        out = {"re": e["value"], "im": "0" if e["exact"] else 0.0, "exact": e["exact"]}
        if "approx" in e:
            out["approx"] = e["approx"]
        return out
    return e


def _linspace(a: float, b: float, n: int) -> list[float]:
    if n < 1:
        raise HalphenError("need at least one sample")
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# commands: each returns (json payload, csv header, csv rows)
# ---------------------------------------------------------------------------

def cmd_roots(a):
    inv = EllipticInvariants(a.g2, a.g3)
    rt = roots_from_invariants(inv)
    payload = {"g2": encode(a.g2), "g3": encode(a.g3), "discriminant": encode(inv.discriminant),
               "roots": [_root(z) for z in rt.as_tuple()], "ordering": "descending-real"}
    rows = []
    for i, z in enumerate(rt.as_tuple(), 1):
        c = complex(z)
        rows.append([f"e{i}", fmt(z), repr(c.real), repr(c.imag), is_exact(z)])
    return payload, ["root", "value", "re", "im", "exact"], rows


def cmd_spectrum(a):
    if a.n < 0:
        raise HalphenError("n must be >= 0")
    sols = qes.solve_qes(a.n, a.g2, a.g3)
    found = qes.discrepancies(a.n, a.g2, a.g3, Fraction(1))
    payload = {
        "n": a.n, "g2": encode(a.g2), "g3": encode(a.g3),
        "B_values": [encode(s.B) for s in sols for _ in range(s.multiplicity)],
        "solutions": [{"B": encode(s.B), "multiplicity": s.multiplicity,
                       "coeffs": encode(list(s.coefficients)), "residual_norm": encode(s.residual_norm),
                       "eta": encode(list(s.eta)), "exponents": encode(list(s.exponents))}
                      for s in sols],
        "discrepancies": [d.to_dict() for d in found],
    }
    rows = []
    for s in sols:
        for m, c in enumerate(s.coefficients):
            rows.append([fmt(s.B), s.multiplicity, m, fmt(c), repr(s.residual_norm)])
    return payload, ["B", "multiplicity", "m", "a_m", "residual_norm"], rows


def cmd_potential(a):
    j = Fraction(a.n, 2)
    op = canonical_operator(j, a.g2, a.g3, a.B)
    inv = EllipticInvariants(a.g2, a.g3)
    rows = []
    for r in _linspace(a.r_min, a.r_max, a.samples):
        w = r_to_w(r, inv)
        vg = qes.schrodinger_potential(op, r)
        vp = qes.potential_printed(r, j, a.g2, a.g3, a.B)
        rows.append([r, w, vg, vp, vg - vp])
    header = ["r", "w", "V_general", "V_paper", "diff"]
    payload = {"n": a.n, "g2": encode(a.g2), "g3": encode(a.g3), "B": encode(a.B),
               "rows": [dict(zip(header, map(encode, row))) for row in rows]}
    return payload, header, [[repr(x) for x in row] for row in rows]


def cmd_exact(a):
    params = ejh.PCTParams(a.nu, a.gamma, a.m, a.B, a.branch, EllipticInvariants(a.g2, a.g3))
    pair = ejh.k_pm(a.B, a.g2, a.g3)
    rs = _linspace(a.r_min, a.r_max, a.samples)
    res = dict(ejh.residual_diagnostic(params, rs))
    rows = []
    for r in rs:
        wp = math.exp(float(pair.k_plus) * r) if not pair.complex_pair else float("nan")
        rows.append([r, wp, ejh.exact_wavefunction(params, r), res[r]])
    header = ["r", "w_plus", "R", "residual"]
    payload = {"nu": a.nu, "gamma": a.gamma, "m": a.m, "B": encode(a.B), "branch": a.branch,
               "k": encode(params.k()), "rows": [dict(zip(header, map(encode, row))) for row in rows]}
    return payload, header, [[repr(x) for x in row] for row in rows]


def _split_exact(x):
    if isinstance(x, Fraction):
        return str(x.numerator), str(x.denominator)
    if isinstance(x, Surd) and x.b == 0:
        return _split_exact(x.a)
    return (repr(x), "") if is_exact(x) else ("", "")


def cmd_dist(a):
    exp = dist.assemble_distribution(a.s, a.q, a.k2, a.kmax)
    rep = dist.verify_fourier_condition(exp)
    rows = []
    for label, seq in [(str(m), s) for m, s in sorted(exp.per_m.items())] + [("all", exp.coeffs)]:
        for k, x in enumerate(seq):
            num, den = _split_exact(x)
            rows.append([k, label, num, den, repr(complex(x).real)])
    payload = {
        "s": a.s, "n": exp.n, "q": encode(a.q), "K2": encode(a.k2), "K": a.kmax,
        "coefficients": encode(list(exp.coeffs)),
        "per_m": {str(m): encode(list(s)) for m, s in sorted(exp.per_m.items())},
        "leading_index": {str(m): k for m, k in sorted(exp.leading.items())},
        "weights": {str(m): {"floor_binomial": encode(w[0]), "series_binomial": encode(w[1])}
                    for m, w in sorted(exp.weights.items())},
        "fourier": {
            "interior_exact_zero": rep["interior_exact_zero"],
            "max_interior": encode(rep["max_interior"]),
            "per_m": {str(m): {"k0": v["k0"], "initial": encode({str(k): c for k, c in v["initial"].items()}),
                               "boundary": encode({str(k): c for k, c in v["boundary"].items()}),
                               "nonzero_interior_orders": v["nonzero_interior_orders"]}
                      for m, v in sorted(rep["per_m"].items())},
        },
    }
    return payload, ["k", "m", "numerator", "denominator", "value"], rows


def cmd_verify(a):
    report = verify.run(a.suite, a.seed)
    rows = [[c["suite"], c["name"], "pass" if c["passed"] else "FAIL"] for c in report["checks"]]
    return report, ["suite", "check", "result"], rows


# ---------------------------------------------------------------------------

def _render(fmt_name: str, payload, header, rows) -> str:
    if fmt_name == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="halphen", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def inv_args(sp, g2="1", g3="0"):
        sp.add_argument("--g2", type=rational, default=rational(g2))
        sp.add_argument("--g3", type=rational, default=rational(g3))

    def grid_args(sp, lo, hi, n):
        sp.add_argument("--r-min", type=float, default=lo)
        sp.add_argument("--r-max", type=float, default=hi)
        sp.add_argument("--samples", type=int, default=n)

    sp = sub.add_parser("roots", parents=[common], help="Weierstrass roots")
    inv_args(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("spectrum", parents=[common], help="accessory parameters and polynomials")
    sp.add_argument("--n", type=int, required=True)
    inv_args(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("potential", parents=[common], help="potential on an r grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--B", type=rational, default=Fraction(0))
    inv_args(sp)
    grid_args(sp, 0.6, 5.0, 10)
    sp.set_defaults(func=cmd_potential)

    sp = sub.add_parser("exact", parents=[common], help="exactly solvable spin-1/2 wave function")
    sp.add_argument("--nu", type=int, default=2)
    sp.add_argument("--gamma", type=int, default=1)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--B", type=rational, default=Fraction(0))
    sp.add_argument("--branch", choices=("plus", "minus"), default="minus")
    inv_args(sp)
    grid_args(sp, 2.0, 10.0, 5)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("dist", parents=[common], help="delta-series coefficients")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--q", type=rational, default=Fraction(0))
    sp.add_argument("--k2", type=rational, default=Fraction(1, 2))
    sp.add_argument("--kmax", type=int, default=12)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    sp.add_argument("--suite", choices=("all",) + tuple(verify.SUITES), default="all")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    level = os.environ.get("HALPHEN_LOG", "error").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.ERROR),
                        format="halphen: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    log.debug("arguments: %s", vars(args))
    try:
        payload, header, rows = args.func(args)
    except HalphenError as exc:
        print(f"halphen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = _render(args.format, payload, header, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and payload["summary"]["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
