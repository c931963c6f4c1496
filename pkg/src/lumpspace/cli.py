"""Command-line driver.

    lumpspace verify metric|kahler|volume-form [...]
    lumpspace volume total|cylinder|baptista [...]
    lumpspace sweep profile [...]

Exit status: 0 all checks pass, 1 a check failed, 2 usage error, 3 I/O error.
"""
import argparse
import itertools
import math
import sys

import numpy as np

from lumpspace.errors import LumpspaceError, NumericalError, UsageError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _mu_range(text):
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}") from None
    if not (a > 0 and b > 0 and n >= 1):
        raise argparse.ArgumentTypeError("start and stop must be positive and count >= 1")
    return np.geomspace(a, b, n) if n > 1 else np.array([a])


def _mu_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common(p, grid=False, tol=1e-8):
    p.add_argument("--c1", type=float, default=4.0, help="domain curvature (default 4)")
    p.add_argument("--c2", type=float, default=4.0, help="target curvature (default 4)")
    p.add_argument("--tol", type=float, default=tol, help=f"relative tolerance (default {tol:g})")
    p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="report runtime_ms as 0")
    if grid:
        p.add_argument("--grid", default="128x128", metavar="NRxNT", help="sphere grid (default 128x128)")


def _profile_args(p):
    p.add_argument("--profile", choices=("l2", "fs"), default="l2")
    p.add_argument("--c", type=float, default=1.0, help="Fubini-Study curvature for --profile fs")


def build_parser():
    ap = _Parser(prog="lumpspace", description="Geometry of the degree-1 lump moduli space H_{1,k}.")
    sub = ap.add_subparsers(dest="group", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="quadrature vs closed-form checks")
    vs = verify.add_subparsers(dest="what", required=True, parser_class=_Parser)
    m = vs.add_parser("metric", help="L2 lengths of canonical directions")
    m.add_argument("--k", type=int, default=2)
    m.add_argument("--mu", type=float, default=2.0)
    _common(m, grid=True)
    kk = vs.add_parser("kahler", help="closedness constraints")
    kk.add_argument("--k", type=int, default=2)
    kk.add_argument("--mu-list", type=_mu_list, default=[1.1, 1.5, 2.0, 5.0])
    _profile_args(kk)
    _common(kk)
    vf = vs.add_parser("volume-form", help="Gram determinant vs closed form of F(mu)")
    vf.add_argument("--k", type=int, default=2)
    vf.add_argument("--mu", type=float, default=2.0)
    _common(vf, grid=True)

    volume = sub.add_parser("volume", help="total volumes")
    vv = volume.add_subparsers(dest="what", required=True, parser_class=_Parser)
    t = vv.add_parser("total", help="total volume of H_{1,k}")
    t.add_argument("--k", type=int, default=2)
    _profile_args(t)
    _common(t, tol=1e-6)
    cy = vv.add_parser("cylinder", help="volume of the cylinder C_W, W = z^d")
    cy.add_argument("--d", type=int, default=1)
    _common(cy, tol=1e-6)
    b = vv.add_parser("baptista", help="evaluate the conjectured volume formula")
    b.add_argument("--d", type=int, default=1)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--g", type=int, default=0)
    b.add_argument("--vol-sigma", type=float, default=math.pi)
    _common(b, tol=1e-12)

    sweep = sub.add_parser("sweep", help="parameter sweeps written as CSV")
    ss = sweep.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = ss.add_parser("profile", help="measure (A, B) along a log-spaced mu range")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--mu-range", type=_mu_range, default=_mu_range("1.05:100:40"))
    sp.add_argument("--csv", metavar="PATH", required=True)
    _common(sp, grid=True, tol=1e-9)
    return ap


# --- commands -------------------------------------------------------------

def _grid(args):
    from lumpspace.quadrature import build_grid, parse_resolution

    nr, nt = parse_resolution(args.grid)
    return build_grid(nr, nt, args.c1)


def _profile(args):
    from lumpspace.kahler import fs_profile, l2_profile

    return fs_profile(args.c) if args.profile == "fs" else l2_profile(args.c1, args.c2)


def _check_k(k):
    if k < 1:
        raise UsageError(f"--k must be >= 1, got {k}")


def _check_mu(mu):
    if not mu > 1:
        raise UsageError(f"--mu must exceed 1, got {mu}")


def canonical_directions(k):
    from lumpspace.lie import PCoords

    dirs = [("dmu", PCoords.dmu(k)), ("p0", PCoords.p0(k)), ("pmu", PCoords.pmu(k)),
            ("ptilde", PCoords.ptilde(k))]
    if k >= 2:
        dirs += [("phat", PCoords.phat(k)), ("pcheck", PCoords.pcheck(k))]
    return dirs


def cmd_verify_metric(args, report):
    from lumpspace.kahler import gamma_eval, l2_profile
    from lumpspace.maps import l2_inner, tangent_field

    _check_k(args.k)
    _check_mu(args.mu)
    grid = _grid(args)
    co = l2_profile(args.c1, args.c2).coefficients(args.mu)
    dirs = canonical_directions(args.k)
    fields = {n: tangent_field(args.mu, c, grid) for n, c in dirs}
    for n, c in dirs:
        report.add(f"length_{n}", gamma_eval(co, args.mu, c, c),
                   l2_inner(fields[n], fields[n], c2=args.c2), args.tol)
    for (n1, _), (n2, _) in itertools.combinations(dirs, 2):
        report.add(f"orthogonal_{n1}_{n2}", 0.0, l2_inner(fields[n1], fields[n2], c2=args.c2), args.tol)


def cmd_verify_kahler(args, report):
    from lumpspace.kahler import check_k1, check_k2, kahler_generator_pairs, k1_reference_triples
    from lumpspace.lie import Jmap

    _check_k(args.k)
    prof = _profile(args)
    for mu in args.mu_list:
        _check_mu(mu)
        co = prof.coefficients(mu)
        for name, X, Y, Z in k1_reference_triples(args.k):
            report.add(f"k1_{name}_mu{mu:g}", 0.0, check_k1(co, mu, X, Y, Z), args.tol)
        for name, X, _ in kahler_generator_pairs(args.k):
            report.add(f"k2_{name}_mu{mu:g}", 0.0, check_k2(prof, mu, X, Jmap(X, mu)), args.tol)


def cmd_verify_volume_form(args, report):
    from lumpspace.kahler import l2_profile
    from lumpspace.volume import volume_factor_closed, volume_factor_gram

    _check_k(args.k)
    _check_mu(args.mu)
    prof = l2_profile(args.c1, args.c2)
    closed = volume_factor_closed(prof, args.mu, args.k)
    report.values["F_closed"] = closed
    report.add("F_gram", closed, volume_factor_gram(args.k, args.mu, args.c1, args.c2, _grid(args)), args.tol)
    report.add("F_hermitian", closed, volume_factor_closed(prof, args.mu, args.k, form="hermitian"), args.tol)


def cmd_volume_total(args, report):
    from lumpspace import volume as V

    _check_k(args.k)
    prof = _profile(args)
    closed = V.total_volume(prof, args.k)
    report.values["volume"] = closed
    report.add("volume_numeric", closed, V.total_volume_numeric(prof, args.k), args.tol)
    report.add("volume_full_range_formula", V.total_volume_full_range(prof.B, args.k), closed, args.tol)
    gk = V.vol_g_mod_k_report(args.k)
    report.values["vol_g_mod_k"] = gk.adjudicated
    report.values["vol_g_mod_k_printed"] = gk.printed
    report.values["vol_g_mod_k_printed_ratio"] = gk.ratio
    report.add("vol_g_mod_k_haar", gk.adjudicated, gk.haar, args.tol)


def cmd_volume_cylinder(args, report):
    from lumpspace.cylinder import CylinderSpec, fubini_crosscheck

    spec = CylinderSpec(args.d, args.c1, args.c2)
    mu_first, z_first = fubini_crosscheck(spec)
    report.values["volume"] = mu_first
    report.add("volume_mu_first", spec.expected_volume, mu_first, args.tol)
    report.add("volume_z_first", mu_first, z_first, args.tol)


def cmd_volume_baptista(args, report):
    from lumpspace.kahler import l2_profile
    from lumpspace.volume import BaptistaParams, baptista_volume, total_volume

    p = BaptistaParams(args.d, args.k, args.g, args.c2, args.vol_sigma)
    val = baptista_volume(p)
    report.values["N"] = p.N
    report.values["volume"] = val
    if args.d == 1 and args.g == 0 and args.k >= 2:
        c1 = 4.0 * math.pi / args.vol_sigma
        report.add("total_volume_l2", total_volume(l2_profile(c1, args.c2), args.k), val, args.tol)


def cmd_sweep_profile(args, report):
    from lumpspace.kahler import l2_profile, measure_profile
    from lumpspace.report import write_sweep_csv

    _check_k(args.k)
    grid = _grid(args)
    prof = l2_profile(args.c1, args.c2)
    rows = []
    for mu in args.mu_range:
        _check_mu(mu)
        A, B = measure_profile(args.k, float(mu), grid, args.c1, args.c2)
        Ac = float(prof.A(mu))
        rows.append({"mu": float(mu), "A_numeric": A, "B_numeric": B, "A_closed": Ac, "B_closed": prof.B,
                     "rel_err_A": abs(A - Ac) / Ac,
                     "rel_err_B": None if B is None else abs(B - prof.B) / prof.B})
    write_sweep_csv(args.csv, rows)
    report.values["rows"] = len(rows)
    report.values["max_rel_err_A"] = max(r["rel_err_A"] for r in rows)
    Bs = [r["B_numeric"] for r in rows if r["B_numeric"] is not None]
    if Bs:
        report.add("B_constant_spread", 0.0, (max(Bs) - min(Bs)) / prof.B, args.tol)
        report.add("B_closed", prof.B, float(np.mean(Bs)), args.tol)


COMMANDS = {
    ("verify", "metric"): cmd_verify_metric,
    ("verify", "kahler"): cmd_verify_kahler,
    ("verify", "volume-form"): cmd_verify_volume_form,
    ("volume", "total"): cmd_volume_total,
    ("volume", "cylinder"): cmd_volume_cylinder,
    ("volume", "baptista"): cmd_volume_baptista,
    ("sweep", "profile"): cmd_sweep_profile,
}

_PARAM_KEYS = ("k", "mu", "mu_list", "mu_range", "c1", "c2", "c", "d", "g", "vol_sigma", "grid", "tol",
               "profile", "csv")


def run(args):
    """Execute a parsed command; returns the finished Report."""
    from lumpspace.report import Report

    report = Report(command=f"{args.group} {args.what}")
    for key in _PARAM_KEYS:
        if hasattr(args, key):
            v = getattr(args, key)
            report.params[key] = list(map(float, v)) if isinstance(v, (list, np.ndarray)) else v
    COMMANDS[(args.group, args.what)](args, report)
    return report.finish(timing=not args.no_timing)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except UsageError as e:
        print(f"lumpspace: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"lumpspace: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except NumericalError as e:
        print(f"lumpspace: numerical failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    except LumpspaceError as e:
        print(f"lumpspace: {e}", file=sys.stderr)
        return EXIT_FAIL
    text = report.to_json()
    try:
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as e:
        print(f"lumpspace: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
