"""Command-line interface: ``eval``, ``verify``, ``region`` and ``dynfric``.

Exit codes: 0 success, 1 usage error, 2 domain/existence error,
3 verification failure.
"""
import argparse
import csv
import enum
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import dynfric, integral_family as fam
from .errors import DomainError, QuadratureError, SideConditionError
from .quadrature_oracle import QuadratureSpec, oracle_H, oracle_I

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3

DEFAULT_LAMBDAS = (-0.5, -0.2, 0.0, 0.5, 1.0, 2.0, 3.5)
DEFAULT_MUS = (0.5, 1.0, 2.0, 3.0)
DEFAULT_NUS = (-1.5, -0.5, 0.0, 0.5, 1.0, 1.5, 3.0)
DEFAULT_ZS = (0.1, 0.9, 2.5, 8.0)


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    REDUCED_FORM = "reduced_form"
    ORACLE = "oracle"


@dataclass
class OutputRecord:
    inputs: dict
    value: float
    method: Method
    admissible: bool = True
    err_estimate: float | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.err_estimate is not None) != (self.method is Method.ORACLE):
            raise ValueError("err_estimate is reported for oracle results only")

    def as_dict(self):
        row = dict(self.inputs)
        row["value"] = self.value
        row["method"] = self.method.value
        if self.err_estimate is not None:
            row["err_estimate"] = self.err_estimate
        row["admissible"] = self.admissible
        row.update(self.extra)
        return row


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _real(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite real number: {text!r}")
    return value


def _real_list(text):
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(_real(s.strip()) for s in items)


def _format_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rows, fmt):
    """Serialize a list of dicts as json, csv or a plain aligned table."""
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    columns = []
    for row in rows:
        for k in row:
            if k not in columns:
                columns.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    table = [columns] + [[_format_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n" for r in table)


def _emit(args, rows):
    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    p = fam.ParamTriple(args.lam, args.mu, args.nu)
    verdict = fam.check_domain(p)
    if not verdict.admissible:
        print(
            f"inadmissible parameters: need lambda > {verdict.binding_bound!r} "
            f"(got lambda={args.lam!r}, mu={args.mu!r}, nu={args.nu!r})",
            file=sys.stderr,
        )
        return EXIT_DOMAIN
    method = Method(args.method)
    rows = []
    for z in args.z:
        if z < 0:
            raise UsageError(f"z must be >= 0, got {z!r}")
        inputs = {"lambda": args.lam, "mu": args.mu, "nu": args.nu, "z": z}
        if method is Method.CLOSED_FORM:
            r = fam.closed_form(p, z)
            rec = OutputRecord(inputs, r.value, method, extra={
                "gamma_term": r.gamma_term,
                "boundary_term": r.boundary_term,
                "denominator": r.denominator,
            })
        elif method is Method.REDUCED_FORM:
            value = 0.0 if z == 0 else fam.reduced_form(p, z)
            rec = OutputRecord(inputs, value, method)
        else:
            if z == 0:
                rec = OutputRecord(inputs, 0.0, method, err_estimate=0.0)
            else:
                o = oracle_I(args.lam, args.mu, args.nu, z, QuadratureSpec(rel_tol=args.rel_tol))
                rec = OutputRecord(inputs, o.value, method, err_estimate=o.err_estimate,
                                   extra={"panels_used": o.panels_used})
        rows.append(rec.as_dict())
    _emit(args, rows)
    return EXIT_OK


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


IDENTITIES = ("oracle_dev", "transform_dev", "by_parts_dev", "ladder_dev", "reduced_form_dev")


def verify_point(lam, mu, nu, z, rel_tol=1e-8, identity_tol=1e-12, oracle_tol=1e-10):
    """Run every check at one grid point; returns a record dict."""
    p = fam.ParamTriple(lam, mu, nu)
    row = {"lambda": lam, "mu": mu, "nu": nu, "z": z}
    if not fam.check_domain(p).admissible:
        row["status"] = "skipped-inadmissible"
        return row
    failures = []
    i = fam.closed_form(p, z).value

    try:
        o = oracle_I(lam, mu, nu, z, QuadratureSpec(rel_tol=oracle_tol))
        dev = _rel(i, o.value)
    except QuadratureError as exc:
        dev = math.inf
        failures.append(f"oracle: {exc}")
    row["oracle_dev"] = dev
    if not dev <= rel_tol:
        failures.append("oracle_dev")

    dev = 0.0
    for r in (0.5, 1.0, mu, 2.0 * mu):
        q = fam.transform_scaling(p, r)
        dev = max(dev, _rel(i, fam.closed_form(q, z ** r).value / r))
    row["transform_dev"] = dev

    row["by_parts_dev"] = _rel(i, fam.reduce_by_parts(p, z))

    q = fam.shifted_triple(p)
    g = fam.closed_form(p, z).gamma_term
    terms = (mu * fam.closed_form(q, z).value, g, mu * (nu - 1.0) * i)
    row["ladder_dev"] = abs(fam.ladder_identity_residual(p, z)) / max(abs(t) for t in terms)

    if lam > mu - 1.0:
        row["reduced_form_dev"] = _rel(i, fam.reduced_form(p, z))
    else:
        row["reduced_form_dev"] = None

    for name in IDENTITIES[1:]:
        v = row[name]
        if v is not None and not v <= identity_tol:
            failures.append(name)
    row["status"] = "fail" if failures else "ok"
    if failures:
        row["failed"] = ";".join(failures)
    return row


def cmd_verify(args):
    points = [
        (lam, mu, nu, z)
        for lam in args.lambdas
        for mu in args.mus
        for nu in args.nus
        for z in args.zs
    ]
    for pt in points:
        if not pt[1] > 0 or not pt[3] > 0:
            raise UsageError("grid needs mu > 0 and z > 0")

    def run(pt):
        return verify_point(*pt, rel_tol=args.rel_tol, identity_tol=args.identity_tol,
                            oracle_tol=args.oracle_tol)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run, points))
    else:
        rows = [run(pt) for pt in points]
    _emit(args, rows)

    checked = [r for r in rows if r["status"] != "skipped-inadmissible"]
    failed = [r for r in rows if r["status"] == "fail"]
    print(f"points: {len(rows)} checked: {len(checked)} "
          f"skipped-inadmissible: {len(rows) - len(checked)} failed: {len(failed)}", file=sys.stderr)
    for name in IDENTITIES:
        vals = [r[name] for r in checked if r.get(name) is not None]
        worst = max(vals) if vals else 0.0
        print(f"max {name}: {worst:.3e}", file=sys.stderr)
    for r in failed:
        print(f"FAIL (lambda={r['lambda']!r}, mu={r['mu']!r}, nu={r['nu']!r}, z={r['z']!r}): "
              f"{r['failed']}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def mu_grid(mu_min, mu_max, samples):
    step = (mu_max - mu_min) / (samples - 1)
    grid = [mu_min + k * step for k in range(samples - 1)]
    grid.append(mu_max)
    return grid


def cmd_region(args):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if not 0 < args.mu_min < args.mu_max:
        raise UsageError("need 0 < --mu-min < --mu-max")
    branch = fam.check_domain(fam.ParamTriple(0.0, 1.0, args.nu)).branch
    rows = []
    for mu, lam_min in fam.region_boundary(args.nu, mu_grid(args.mu_min, args.mu_max, args.samples)):
        rows.append({"mu": mu, "lambda_min": lam_min, "branch": branch.name})
    _emit(args, rows)
    return EXIT_OK


def cmd_dynfric(args):
    if args.y is not None:
        ys = [args.y]
    else:
        if args.samples < 1 or args.y_max < args.y_min:
            raise UsageError("need --samples >= 1 and --y-max >= --y-min")
        ys = [args.y_min] if args.samples == 1 else mu_grid(args.y_min, args.y_max, args.samples)
    if any(y < 0 for y in ys):
        raise UsageError("y must be >= 0")
    base = dynfric.HSpec(args.a, args.family, 0.0)
    try:
        dynfric.check_existence(base)
    except DomainError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN
    rows = []
    for y in ys:
        spec = dynfric.HSpec(args.a, args.family, y)
        h = dynfric.h_eval(spec)
        row = {"a": args.a, "family": spec.family.value, "nu": spec.nu, "y": y, "H": h}
        if args.oracle:
            o = oracle_H(args.a, spec.nu, y, QuadratureSpec(rel_tol=args.rel_tol))
            row["H_oracle"] = o.value
            row["err_estimate"] = o.err_estimate
            row["deviation"] = _rel(h, o.value)
        rows.append(row)
    _emit(args, rows)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="powexpint", description="Closed forms for int_0^z x^lambda E_nu(x^mu) dx.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("eval", help="evaluate I(lambda, mu, nu; z)")
    p.add_argument("--lambda", dest="lam", type=_real, required=True)
    p.add_argument("--mu", type=_real, required=True)
    p.add_argument("--nu", type=_real, required=True)
    p.add_argument("--z", type=_real, nargs="+", required=True)
    p.add_argument("--method", choices=[m.value for m in Method], default="closed_form")
    p.add_argument("--rel-tol", type=_real, default=1e-10, help="oracle target tolerance")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="closed form vs oracle and identity residuals over a grid")
    p.add_argument("--lambdas", type=_real_list, default=DEFAULT_LAMBDAS)
    p.add_argument("--mus", type=_real_list, default=DEFAULT_MUS)
    p.add_argument("--nus", type=_real_list, default=DEFAULT_NUS)
    p.add_argument("--zs", type=_real_list, default=DEFAULT_ZS)
    p.add_argument("--rel-tol", type=_real, default=1e-8,
                   help="allowed closed-form vs oracle relative deviation")
    p.add_argument("--identity-tol", type=_real, default=1e-12)
    p.add_argument("--oracle-tol", type=_real, default=1e-10, help="oracle target tolerance")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("region", help="boundary of the existence region in the (mu, lambda) plane")
    p.add_argument("--nu", type=_real, required=True)
    p.add_argument("--mu-min", type=_real, default=0.1)
    p.add_argument("--mu-max", type=_real, default=4.0)
    p.add_argument("--samples", type=int, default=40)
    common(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("dynfric", help="tabulate H1/H2")
    p.add_argument("--a", type=_real, required=True)
    p.add_argument("--family", choices=("H1", "H2"), type=str.upper, required=True)
    p.add_argument("--y", type=_real, default=None)
    p.add_argument("--y-min", type=_real, default=0.0)
    p.add_argument("--y-max", type=_real, default=3.0)
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--oracle", action="store_true", help="add the 2-D quadrature column")
    p.add_argument("--rel-tol", type=_real, default=1e-10, help="oracle target tolerance")
    common(p)
    p.set_defaults(func=cmd_dynfric)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SideConditionError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN
    except QuadratureError as exc:
        print(f"oracle failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
