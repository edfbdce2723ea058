"""Command-line interface: ``realspec {exact,numeric,mc,gvalue,table}``.

Exit status is 0 on success, 2 on usage or contract errors and 3 when a
numerical routine misses its accuracy target.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .errors import AccuracyError, ContractError
from .exact import format_graded
from .meijer import GIndex, g_eval
from .probability import EnsembleSpec, Path, probability_exact
from . import montecarlo, numeric

EXIT_CONTRACT = 2
EXIT_ACCURACY = 3

DEFAULT_PAIRS = ((2, 2), (2, 4), (2, 6), (4, 4), (4, 6))
CSV_HEADER = ("N", "L1", "L2", "exact", "decimal")


def sig6(x: float) -> str:
    """Six significant digits, trailing zeros kept."""
    return f"{x:#.6g}"


def _int_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _spec(args):
    return EnsembleSpec(args.N, tuple(args.L))


def _spec_record(spec):
    return {"N": spec.N, "Ls": list(spec.Ls)}


def _exact_or_none(spec):
    try:
        return probability_exact(spec)
    except ContractError:
        return None


def cmd_exact(args):
    spec = _spec(args)
    res = probability_exact(spec)
    rec = {
        "command": "exact",
        "spec": _spec_record(spec),
        "exact": format_graded(res.value),
        "decimal": res.decimal,
        "path": res.path.value,
    }
    agree = {}
    if args.cross_check:
        stripped = spec.stripped()
        if len(stripped) == 1:
            alt_path = Path.DETERMINANT if res.path is Path.CLOSED_FORM_M1 else Path.CLOSED_FORM_M1
            alt = probability_exact(spec, alt_path)
            rec["cross_check"] = {"path": alt_path.value, "exact": format_graded(alt.value)}
            agree["cross_check"] = alt.value == res.value
        else:
            rec["cross_check"] = None
    if args.numeric:
        est = numeric.probability_numeric(spec, args.tol)
        rec["numeric"] = {"value": est.value, "error": est.error, "tol": args.tol}
        agree["numeric"] = abs(est.value - res.decimal) <= 1e-6
    if agree:
        rec["agreement"] = agree
    human = str(res.value)
    if not (res.value.grade == 0 and res.value.coeff.denominator == 1):
        human += f" ({sig6(res.decimal)})"
    lines = [human]
    if "cross_check" in rec and rec["cross_check"]:
        lines.append(f"cross-check [{rec['cross_check']['path']}]: {rec['cross_check']['exact']}")
    if args.numeric:
        lines.append(f"numeric: {rec['numeric']['value']:.12g} +/- {rec['numeric']['error']:.1e}")
    failed = [k for k, v in agree.items() if not v]
    if failed and "cross_check" in failed:
        _emit(args, rec, lines)
        print(f"error: exact paths disagree for {spec}", file=sys.stderr)
        return EXIT_ACCURACY
    if failed:
        _emit(args, rec, lines)
        print(f"error: numeric oracle disagrees beyond 1e-6 for {spec}", file=sys.stderr)
        return EXIT_ACCURACY
    return _emit(args, rec, lines)


def cmd_numeric(args):
    spec = _spec(args)
    est = numeric.probability_numeric(spec, args.tol)
    rec = {
        "command": "numeric",
        "spec": _spec_record(spec),
        "numeric": {"value": est.value, "error": est.error, "tol": args.tol},
        "decimal": est.value,
    }
    lines = [f"{est.value:.12g} +/- {est.error:.1e}"]
    ex = _exact_or_none(spec)
    if ex is not None:
        rec["exact"] = format_graded(ex.value)
        rec["agreement"] = {"exact": abs(ex.decimal - est.value) <= 1e-6}
        lines.append(f"exact: {ex.value} ({sig6(ex.decimal)})")
    return _emit(args, rec, lines)


def cmd_mc(args):
    spec = _spec(args)
    cfg = montecarlo.MCConfig(spec, args.trials, args.seed, args.imag_tol)
    est = montecarlo.estimate(cfg)
    mc = {
        "p_all_real": est.p_all_real,
        "stderr": est.stderr,
        "trials": est.trials,
        "seed": est.seed,
        "failures": est.failures,
        "max_spectral_radius": est.max_spectral_radius,
        "counts": {str(k): v for k, v in est.counts.items()},
    }
    rec = {"command": "mc", "spec": _spec_record(spec), "mc": mc, "decimal": est.p_all_real}
    lines = [f"p_hat = {est.p_all_real:.6f} +/- {est.stderr:.6f}  (trials={est.trials}, seed={est.seed})"]
    lines += [f"  k={k}: {v}" for k, v in est.counts.items()]
    ex = _exact_or_none(spec)
    if ex is not None:
        z = est.z_score(ex.decimal)
        rec["exact"] = format_graded(ex.value)
        rec["agreement"] = {"within_3_sigma": abs(z) <= 3.0}
        lines.append(f"exact: {ex.value} ({sig6(ex.decimal)}), z = {z:+.2f}")
    return _emit(args, rec, lines)


def cmd_gvalue(args):
    idx = GIndex(args.j, args.k, tuple(args.alphas), tuple(args.betas))
    val = g_eval(idx)
    s = str(val.numerator) if val.denominator == 1 else f"{val.numerator}/{val.denominator}"
    rec = {
        "command": "gvalue",
        "index": {"j": idx.j, "k": idx.k, "alphas": list(idx.alphas), "betas": list(idx.betas)},
        "exact": s,
        "decimal": float(val),
    }
    return _emit(args, rec, [s])


def table_rows(n_values=(2, 3), pairs=DEFAULT_PAIRS):
    for N in n_values:
        for L1, L2 in pairs:
            res = probability_exact(EnsembleSpec(N, (L1, L2)))
            yield (N, L1, L2, format_graded(res.value), sig6(res.decimal))


def render_table(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def cmd_table(args):
    if args.l_values is None:
        pairs = DEFAULT_PAIRS
    else:
        ls = sorted(set(args.l_values))
        pairs = tuple((a, b) for i, a in enumerate(ls) for b in ls[i:])
    text = render_table(table_rows(tuple(args.n_values), pairs))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _emit(args, rec, lines):
    if getattr(args, "json", False):
        print(dumps(rec))
    else:
        print("\n".join(lines))
    return 0


def dumps(rec) -> str:
    """Canonical single-line JSON used for every record."""
    return json.dumps(rec, separators=(", ", ": "), allow_nan=False)


def build_parser():
    p = argparse.ArgumentParser(
        prog="realspec",
        description="Probability that all eigenvalues of a product of truncated "
        "Haar orthogonal matrices are real.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_spec(sp):
        sp.add_argument("-N", type=int, required=True, help="matrix dimension")
        sp.add_argument("-L", type=_int_list, required=True, help="truncations, e.g. 2,4")
        sp.add_argument("--json", action="store_true", help="emit one JSON object")

    sp = sub.add_parser("exact", help="exact rational (times pi power) value")
    add_spec(sp)
    sp.add_argument("--cross-check", action="store_true",
                    help="also run the alternate exact path and compare")
    sp.add_argument("--numeric", action="store_true", help="also run the quadrature oracle")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("numeric", help="quadrature oracle")
    add_spec(sp)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_numeric)

    sp = sub.add_parser("mc", help="Monte Carlo estimate")
    add_spec(sp)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--imag-tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("gvalue", help="one Meijer G value at z = 1")
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--alphas", type=_int_list, required=True)
    sp.add_argument("--betas", type=_int_list, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gvalue)

    sp = sub.add_parser("table", help="CSV table of exact m = 2 probabilities")
    sp.add_argument("--n-values", type=_int_list, default=[2, 3])
    sp.add_argument("--l-values", type=_int_list, default=None,
                    help="use every pair L1 <= L2 from this set instead of the default grid")
    sp.add_argument("--out", default=None, help="write CSV to this file")
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except AccuracyError as exc:
        msg = f"accuracy failure: {exc}"
        if exc.achieved is not None and math.isfinite(exc.achieved):
            msg += f" (achieved {exc.achieved:.2e})"
        print(msg, file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
