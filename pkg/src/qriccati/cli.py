"""Command-line front end: ``qriccati <command> --q Q ...``.

Every command prints one JSON object (or a delimited table with
``--output table``) on stdout.  Failures print a JSON error object on stderr
and exit with 1 (usage), 2 (expression parse), 3 (math domain) or
4 (internal).
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import serialize as S
from .exact import MathDomainError, QRiccatiError, RationalFunction
from .linear import (
    LinearFirstOrderEq,
    LinearHomogeneousEq,
    describe_closed_form,
    eval_closed_form,
    find_rational_solutions,
    solve_homogeneous,
)
from .parsing import ParseError, parse_expression, parse_scalar
from .qspecial import EvalRequest, QBase, gamma_q_z
from .report import growth_figure, growth_rows, render_table, write_table
from .riccati import (
    DEGREE_CAP,
    RiccatiEquation,
    SolutionEvaluator,
    family_member,
    general_solution,
    moebius_linearize,
    rational_solution_search,
    reduce_to_linear,
    riccati_numeric_residual,
    riccati_to_y_orbit,
    second_order_residuals,
    to_second_order,
    verify_solution_exact,
)
from .valuedist import closed_form_pole_zero_census, growth_curve

log = logging.getLogger("qriccati")

EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 1, 2, 3, 4
CONFIG_ENV = "QRICCATI_CONFIG"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandConfig:
    q: str | None = None
    eps: float = 1e-12
    pole_guard: float = 1e-9
    degree_bound: int = 6
    depth: int = 30
    output: str = "json"

    def request(self) -> EvalRequest:
        return EvalRequest(self.eps, self.pole_guard)


def read_config(path) -> dict:
    """``key=value`` lines; ``#`` starts a comment."""
    out = {}
    known = {f.name: f.type for f in fields(CommandConfig)}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _coerce(cfg: dict) -> dict:
    conv = {"eps": float, "pole_guard": float, "degree_bound": int, "depth": int}
    try:
        return {k: conv.get(k, str)(v) for k, v in cfg.items()}
    except ValueError as exc:
        raise UsageError(f"bad config value: {exc}") from None


def resolve_config(args) -> CommandConfig:
    """Defaults, then the config file, then explicit flags.

    The file is ``$QRICCATI_CONFIG`` when set, else ``--config``.
    """
    cfg = CommandConfig()
    path = os.environ.get(CONFIG_ENV) or args.config
    if path:
        if not Path(path).is_file():
            raise UsageError(f"config file not found: {path}")
        cfg = replace(cfg, **_coerce(read_config(path)))
    flags = {k: getattr(args, k) for k in ("q", "eps", "pole_guard", "degree_bound", "depth", "output")
             if getattr(args, k, None) is not None}
    cfg = replace(cfg, **flags)
    if cfg.output not in ("json", "table"):
        raise UsageError("output must be json or table")
    if cfg.eps <= 0 or cfg.pole_guard <= 0:
        raise UsageError("eps and pole_guard must be positive")
    return cfg


# -- helpers -----------------------------------------------------------------


def _q(cfg: CommandConfig) -> QBase:
    if cfg.q is None:
        raise UsageError("--q is required")
    return QBase.of(parse_scalar(cfg.q))


def _expr(text: str) -> RationalFunction:
    return parse_expression(text)


def _equation(cfg, A_text) -> RiccatiEquation:
    eq = RiccatiEquation(_q(cfg), _expr(A_text))
    if eq.degenerate:
        raise MathDomainError("degenerate coefficient A = -1/((q-1) z)")
    return eq


def _complex(text: str) -> complex:
    return complex(parse_scalar(text))


def _point(text: str):
    c = parse_scalar(text)
    return c, S.exact_scalar(c)


_RADII = re.compile(r"^\s*([0-9.eE+-]+)\s*\.\.\s*([0-9.eE+-]+)\s*x\s*(\d+)\s*$")


def parse_radii(text: str) -> list[float]:
    """``R1..R2xSTEPS`` -> STEPS log-spaced radii from R1 to R2."""
    import numpy as np

    m = _RADII.match(text)
    if not m:
        raise UsageError("radii must look like R1..R2xSTEPS, e.g. 1..1e6x25")
    r1, r2, n = float(m.group(1)), float(m.group(2)), int(m.group(3))
    if not 0 < r1 < r2 or n < 3:
        raise UsageError("radii need 0 < R1 < R2 and at least 3 steps")
    return [float(x) for x in np.geomspace(r1, r2, n)]


def _homogeneous_from(args, cfg) -> LinearHomogeneousEq:
    q = _q(cfg)
    if args.a is not None:
        return LinearHomogeneousEq(q, _expr(args.a))
    if args.A is None or args.f1 is None or args.f2 is None:
        raise UsageError("give --a, or --A with --f1 and --f2")
    eq = _equation(cfg, args.A)
    return moebius_linearize(eq, _expr(args.f1), _expr(args.f2))[0]


# -- commands ----------------------------------------------------------------


def cmd_verify_riccati(args, cfg):
    eq = _equation(cfg, args.A)
    r = verify_solution_exact(eq, _expr(args.f))
    return {"residual": S.expression(r), "is_solution": r.is_zero}


def cmd_reduce(args, cfg):
    eq = _equation(cfg, args.A)
    lin = reduce_to_linear(eq, _expr(args.f0))
    return {"a1": S.expression(lin.A1), "a0": S.expression(lin.A0), "c": S.expression(lin.C)}


def cmd_find_rational_linear(args, cfg):
    q = _q(cfg)
    polys = []
    for text in (args.a1, args.a0, args.c):
        f = _expr(text)
        if not f.is_polynomial:
            raise UsageError("a1, a0 and c must be polynomials")
        polys.append(f.num)
    eq = LinearFirstOrderEq(q, *polys)
    res = find_rational_solutions(eq, args.bound if args.bound is not None else 8)
    return {
        "particular": S.expression(res.particular) if res.particular is not None else None,
        "homogeneous_basis": [S.expression(u) for u in res.homogeneous_basis],
        "solutions": [S.expression(u) for u in res.solutions],
        "denominator": S.expression(res.denominator),
        "completeness": res.completeness,
    }


def cmd_search_riccati(args, cfg):
    eq = _equation(cfg, args.A)
    bound = args.bound if args.bound is not None else cfg.degree_bound
    if bound > DEGREE_CAP:
        raise UsageError(f"--bound may not exceed {DEGREE_CAP}")
    res = rational_solution_search(eq, bound)
    return {
        "solutions": [S.expression(f) for f in res.solutions],
        "infinite_family": res.infinite_family,
        "note": res.note,
    }


def cmd_family(args, cfg):
    eq = _equation(cfg, args.A)
    f = family_member(eq, _expr(args.f0), _expr(args.f1), _expr(args.f2), parse_scalar(args.phi))
    return {"f": S.expression(f.rational), "residual": S.expression(verify_solution_exact(eq, f.rational))}


def cmd_linearize(args, cfg):
    eq = _equation(cfg, args.A)
    lin, _ = moebius_linearize(eq, _expr(args.f1), _expr(args.f2))
    cf = solve_homogeneous(lin)
    return {
        "a": S.expression(lin.a),
        "c": S.root_value(cf.exact_c, cf.c, cfg.eps),
        "alphas": [S.root_value(e, v, cfg.eps) for v, e in zip(cf.alphas, cf.exact_alphas)],
        "betas": [S.root_value(e, v, cfg.eps) for v, e in zip(cf.betas, cf.exact_betas)],
        "n0": cf.n0,
        "closed_form": describe_closed_form(cf),
        "meromorphic": cf.meromorphic,
    }


def cmd_eval_gamma_q(args, cfg):
    q = _q(cfg)
    z, z_out = _point(args.z)
    v = gamma_q_z(complex(z), q, cfg.request())
    return {"z": z_out, "value": S.numeric(v, cfg.eps)}


def cmd_eval_closed_form(args, cfg):
    lin = _homogeneous_from(args, cfg)
    cf = solve_homogeneous(lin)
    z, z_out = _point(args.z)
    v = eval_closed_form(cf, complex(z), cfg.request())
    return {
        "closed_form": describe_closed_form(cf),
        "meromorphic": cf.meromorphic,
        "z": z_out,
        "value": S.numeric(v, cfg.eps),
    }


def cmd_second_order(args, cfg):
    so = to_second_order(_equation(cfg, args.A))
    return {"c2": S.expression(so.c2), "c1": S.expression(so.c1), "c0": S.expression(so.c0)}


def cmd_orbit_verify(args, cfg):
    eq = _equation(cfg, args.A)
    if args.f is not None:
        f = SolutionEvaluator.from_rational(_expr(args.f))
    elif args.f1 is not None and args.f2 is not None:
        f = general_solution(eq, _expr(args.f1), _expr(args.f2), _complex(args.scale), cfg.request())
    else:
        raise UsageError("give --f, or --f1 and --f2")
    z0, _ = _point(args.z0)
    orbit = riccati_to_y_orbit(eq, f, complex(z0), cfg.depth)
    rec = second_order_residuals(to_second_order(eq), orbit)
    rows = []
    for k, z in enumerate(orbit.points):
        rr = riccati_numeric_residual(eq, f, z)
        rows.append({
            "k": k,
            "z": S.exact_scalar(z0 * eq.qx**k),
            "riccati_residual": rr,
            "recurrence_residual": rec[k] if k < len(rec) else None,
        })
    vals = [x for r in rows for x in (r["riccati_residual"], r["recurrence_residual"]) if x is not None]
    return {
        "rows": rows,
        "max_residual": max(vals) if vals else None,
        "truncated_at": orbit.truncated_at,
        "eps": cfg.eps,
    }


def cmd_census(args, cfg):
    lin = _homogeneous_from(args, cfg)
    cf = solve_homogeneous(lin)
    radii = parse_radii(args.radii)
    census = closed_form_pole_zero_census(cf, radii[-1])
    rec = growth_curve(census, radii, args.which)
    if args.table:
        write_table(args.table, ("r", "n(r)"), growth_rows(rec))
    if args.figure:
        growth_figure(rec, args.figure, f"{args.which} of {describe_closed_form(cf)}")
    fit = rec.best
    return {
        "closed_form": describe_closed_form(cf),
        "which": args.which,
        "rows": [{"r": r, "n": n, "N": N} for r, n, N in rec.rows()],
        "fit": {"model": rec.best_model, "coefficient": fit.coefficient, "intercept": fit.intercept, "r2": fit.r2},
        "loglog_exponent": rec.loglog_exponent,
        "_table": (("r", "n(r)"), growth_rows(rec)),
    }


COMMANDS = {
    "verify-riccati": cmd_verify_riccati,
    "reduce": cmd_reduce,
    "find-rational-linear": cmd_find_rational_linear,
    "search-riccati": cmd_search_riccati,
    "family": cmd_family,
    "linearize": cmd_linearize,
    "eval-gamma-q": cmd_eval_gamma_q,
    "eval-closed-form": cmd_eval_closed_form,
    "second-order": cmd_second_order,
    "orbit-verify": cmd_orbit_verify,
    "census": cmd_census,
}


class _Parser(argparse.ArgumentParser):
    # let values such as -1/2, -2/(z+1) or -z through as option arguments
    _NEGATIVE = re.compile(r"^-[\d.(zi]")

    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self._negative_number_matcher = self._NEGATIVE

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", help="base q, e.g. 1/2 or 1/5+3/10*i")
    common.add_argument("--eps", type=float)
    common.add_argument("--pole-guard", dest="pole_guard", type=float)
    common.add_argument("--degree-bound", dest="degree_bound", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--output", choices=("json", "table"))
    common.add_argument("--config", help="key=value file (overridden by $%s)" % CONFIG_ENV)

    p = _Parser(prog="qriccati", description="q-difference Riccati equations and q-gamma closed forms")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("verify-riccati", "exact residual of a rational candidate")
    s.add_argument("--A", required=True)
    s.add_argument("--f", required=True)

    s = add("reduce", "linear equation for u = 1/(f - f0)")
    s.add_argument("--A", required=True)
    s.add_argument("--f0", required=True)

    s = add("find-rational-linear", "rational solutions of a1 u(qz) + a0 u(z) + c = 0")
    s.add_argument("--a1", required=True)
    s.add_argument("--a0", required=True)
    s.add_argument("--c", default="0")
    s.add_argument("--bound", type=int)

    s = add("search-riccati", "rational solutions of the Riccati equation")
    s.add_argument("--A", required=True)
    s.add_argument("--bound", type=int)

    s = add("family", "member of the one-parameter family through three solutions")
    for k in ("--A", "--f0", "--f1", "--f2", "--phi"):
        s.add_argument(k, required=True)

    s = add("linearize", "Moebius linearization through two rational solutions")
    for k in ("--A", "--f1", "--f2"):
        s.add_argument(k, required=True)

    s = add("eval-gamma-q", "numeric gamma_q(z)")
    s.add_argument("--z", required=True)

    for name, help_ in (("eval-closed-form", "evaluate the closed form of h(qz) = a h(z)"),
                        ("census", "pole/zero counts of the closed form on disks")):
        s = add(name, help_)
        s.add_argument("--a", help="coefficient a(z)")
        s.add_argument("--A")
        s.add_argument("--f1")
        s.add_argument("--f2")
        if name == "eval-closed-form":
            s.add_argument("--z", required=True)
        else:
            s.add_argument("--radii", required=True, help="R1..R2xSTEPS")
            s.add_argument("--which", choices=("poles", "zeros", "both"), default="poles")
            s.add_argument("--table", help="write r, n(r) to this file (.csv or tab-separated)")
            s.add_argument("--figure", help="write a growth plot to this image file")

    s = add("second-order", "coefficients of the equivalent second-order equation")
    s.add_argument("--A", required=True)

    s = add("orbit-verify", "residuals along the orbit q^k z0")
    s.add_argument("--A", required=True)
    s.add_argument("--f")
    s.add_argument("--f1")
    s.add_argument("--f2")
    s.add_argument("--scale", default="1")
    s.add_argument("--z0", required=True)
    return p


def _table_text(result: dict) -> str:
    if "_table" in result:
        header, rows = result["_table"]
        return render_table(header, rows)
    if "rows" in result:
        rows = result["rows"]
        header = list(rows[0]) if rows else []
        return render_table(header, [[_flat(r[h]) for h in header] for r in rows])
    return render_table(("key", "value"), [(k, _flat(v)) for k, v in result.items()])


def _flat(v):
    if isinstance(v, dict):
        if "re" in v:
            return f"{v['re']}{'+' if not str(v['im']).startswith('-') else ''}{v['im']}*i"
        return S.dumps(v)
    if isinstance(v, list):
        return "; ".join(str(_flat(x)) for x in v)
    return v


def _fail(code: int, kind: str, message: str, **extra) -> int:
    sys.stderr.write(S.dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        cfg = resolve_config(args)
        result = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except ParseError as exc:
        return _fail(EXIT_PARSE, "parse", exc.message, line=exc.line, column=exc.column,
                     expected=list(exc.expected))
    except (QRiccatiError, ZeroDivisionError) as exc:
        return _fail(EXIT_DOMAIN, "math-domain", str(exc))
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        log.debug("internal error", exc_info=True)
        return _fail(EXIT_INTERNAL, "internal", f"{type(exc).__name__}: {exc}")
    if cfg.output == "table":
        sys.stdout.write(_table_text(result))
    else:
        result.pop("_table", None)
        sys.stdout.write(S.dumps(result) + "\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
