"""Acceptance criteria 1-17, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import cmath
import contextlib
import io
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from qriccati import cli
from qriccati.exact import CQ, Polynomial, RationalFunction, format_rational_function
from qriccati.linear import (
    LinearFirstOrderEq,
    LinearHomogeneousEq,
    describe_closed_form,
    eval_closed_form,
    factor_coefficient,
    find_rational_solutions,
    solve_homogeneous,
)
from qriccati.parsing import parse_expression as P
from qriccati.qspecial import EvalRequest, QBase, direct_product, gamma_q_pole_set, gamma_q_z, qpochhammer_inf
from qriccati.riccati import (
    RiccatiEquation,
    SolutionEvaluator,
    cross_ratio_invariance_check,
    delta_q_riccati_identity,
    family_member,
    general_solution,
    moebius_linearize,
    orbit_points,
    rational_solution_search,
    reduce_to_linear,
    riccati_to_y_orbit,
    second_order_equivalence,
    second_order_residuals,
    to_second_order,
    verify_solution_exact,
)
from qriccati.valuedist import (
    OrbitGrid,
    closed_form_pole_zero_census,
    growth_curve,
    log_radii,
    zero_factorization_check,
)

GOLDEN = Path(__file__).parent / "golden"
HALF = Fraction(1, 2)

POLY = (HALF, "z^3+6*z^2+7*z", "2*z+4")
PAIR = (-HALF, "-6*z/((z+1)*(z-2))", "1/(z+1)", "-2/(z+1)")


def pair():
    q, A, f1, f2 = PAIR
    return RiccatiEquation.of(q, P(A)), P(f1), P(f2)


def proportional(polys, expected) -> bool:
    ratio = None
    for p, e in zip(polys, expected):
        r = RationalFunction(p, e)
        if not r.is_constant or (ratio is not None and r != ratio):
            return False
        ratio = r
    return not ratio.is_zero


def lin(q, a1, a0, c="0"):
    return LinearFirstOrderEq(QBase.of(q), P(a1).num, P(a0).num, P(c).num)


# ---------------------------------------------------------------------------
# criteria


def c01():
    eq = RiccatiEquation.of(POLY[0], P(POLY[1]))
    t = time.perf_counter()
    r = verify_solution_exact(eq, P(POLY[2]))
    dt = time.perf_counter() - t
    return r.is_zero and dt < 1.0, f"residual {format_rational_function(r)} in {dt:.3f} s"


def c02():
    eq, f1, f2 = pair()
    r1, r2 = verify_solution_exact(eq, f1), verify_solution_exact(eq, f2)
    return r1.is_zero and r2.is_zero, f"residuals {format_rational_function(r1)}, {format_rational_function(r2)}"


def c03():
    eq = RiccatiEquation.of(POLY[0], P(POLY[1]))
    l = reduce_to_linear(eq, P(POLY[2]))
    target = [P("z^2+4*z-2").num, P("2*(z+1)^2").num, P("z").num]
    got = ", ".join(format_rational_function(RationalFunction(p)) for p in (l.A1, l.A0, l.C))
    return proportional([l.A1, l.A0, l.C], target), f"(A1, A0, C) = ({got})"


def c04():
    worst = []
    for a1, a0 in (("z^2+4*z-2", "2*(z+1)^2"), ("z^3-3*z^2-8*z-4", "z^3+3*z^2+4*z+4")):
        for depth in range(0, 9):
            worst.append(len(find_rational_solutions(lin(HALF, a1, a0), depth).solutions))
    return max(worst) == 0, f"solutions found over bounds 0..8: {max(worst)}"


EXPECTED_A = "(1+3*z/2)/(1-2*z)"


def c05():
    eq, f1, f2 = pair()
    l, _ = moebius_linearize(eq, f1, f2)
    fac = factor_coefficient(l.a)
    cf = solve_homogeneous(l)
    alphas = {r.exact for r in fac.alphas}
    betas = {r.exact for r in fac.betas}
    ok = (
        l.a == P(EXPECTED_A)
        and fac.c == 1
        and cf.n0 == 0
        and alphas == {CQ(Fraction(-2, 3))}
        and betas == {CQ(HALF)}
        and describe_closed_form(cf) == "gamma_q(-3/2*z)/gamma_q(2*z)"
    )
    detail = (
        f"a = {format_rational_function(l.a)} (expected {EXPECTED_A}), c = {fac.c}, "
        f"alpha = {sorted(map(str, alphas))}, beta = {sorted(map(str, betas))}, h = {describe_closed_form(cf)}"
    )
    return ok, detail


def c06():
    eq, f1, f2 = pair()
    l, _ = moebius_linearize(eq, f1, f2)
    cf = solve_homogeneous(l)
    q = cf.q.num
    lattice = [p for p, _ in closed_form_pole_zero_census(cf, 4.0).poles + closed_form_pole_zero_census(cf, 4.0).zeros]
    rng = random.Random(6)
    worst, n = 0.0, 0
    while n < 100:
        z = cmath.rect(1.5 * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
        if any(abs(w - p) < 1e-3 for w in (z, q * z) for p in lattice):
            continue
        h, hq = eval_closed_form(cf, z), eval_closed_form(cf, q * z)
        worst = max(worst, abs(hq - l.a.evaluate(z) * h) / abs(h))
        n += 1
    return worst <= 1e-10, f"max relative residual {worst:.2e} at 100 points"


def c07():
    rng = random.Random(7)
    out = []
    for qs in ("1/2", "-1/2", "3/10", 0.2 + 0.3j):
        qb = QBase.of(qs)
        req = EvalRequest(eps=1e-12)
        poles = gamma_q_pole_set(qb, 10)
        worst, n = 0.0, 0
        while n < 1000:
            z = cmath.rect(2 * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
            if any(abs(z - p) < 1e-6 for p in poles):
                continue
            g = gamma_q_z(z, qb, req)
            worst = max(worst, abs(gamma_q_z(qb.num * z, qb, req) - (1 - z) * g) / abs(g))
            n += 1
        out.append(worst)
    return max(out) <= 1e-10, "max relative residual per q " + ", ".join(f"{w:.1e}" for w in out)


def c08():
    eq = RiccatiEquation.of(HALF, P("14/(25*z)"))
    res = rational_solution_search(eq, seed_solution=P("2/(5*z)"))
    if len(res.solutions) != 3:
        return False, f"manufactured equation has {len(res.solutions)} rational solutions"
    f0, f1, f2 = res.solutions
    ends = family_member(eq, f0, f1, f2, 0).rational == f1 and family_member(eq, f0, f1, f2, -1).rational == f2
    rng = random.Random(8)
    verified = tried = 0
    while tried < 20:
        phi = Fraction(rng.randint(-30, 30), rng.randint(1, 11))
        try:
            f = family_member(eq, f0, f1, f2, phi)
        except ValueError:
            continue  # phi on the one value where the family denominator vanishes
        tried += 1
        verified += verify_solution_exact(eq, f.rational).is_zero
    return ends and verified == 20, f"endpoints {'exact' if ends else 'wrong'}, {verified}/20 members verify"


def c09():
    eq, f1, f2 = pair()
    sols = [general_solution(eq, f1, f2, s) for s in (1, 2, 1j, -3)]
    pts = orbit_points([0.7 + 0.1j, -0.9 + 0.5j, 0.2 - 1.2j, 1.3j, -1.4 - 0.3j], eq.q, 10)
    rep = cross_ratio_invariance_check(eq, sols, pts)
    bad = sols[:3] + [SolutionEvaluator(lambda z: f1.evaluate(z) + z)]
    neg = cross_ratio_invariance_check(eq, bad, pts)
    ok = rep.samples_used >= 50 and rep.max_deviation <= 1e-8 and neg.max_deviation > 1e-3
    return ok, f"max deviation {rep.max_deviation:.1e} over {rep.samples_used} samples, control {neg.max_deviation:.2f}"


def _random_rf(rng, deg):
    def coeff():
        return CQ(Fraction(rng.randint(-9, 9), rng.randint(1, 6)), Fraction(rng.randint(-9, 9), rng.randint(1, 6)))

    num = Polynomial(coeff() for _ in range(rng.randint(1, deg + 1)))
    den = Polynomial(coeff() for _ in range(rng.randint(1, deg + 1)))
    while den.is_zero:
        den = Polynomial([coeff()])
    return RationalFunction(num, den)


def c10():
    rng = random.Random(10)
    eqs = [RiccatiEquation.of(Fraction(rng.choice([1, 2, -1, -2]), rng.choice([3, 5, 7])), _random_rf(rng, 4))
           for _ in range(10)]
    eqs.append(pair()[0])
    good = sum(second_order_equivalence(e)[0] for e in eqs)
    return good == len(eqs), f"{good}/{len(eqs)} coefficient-wise identities"


def c11():
    eq, f1, _ = pair()
    orbit = riccati_to_y_orbit(eq, f1, 0.7, 30)
    res = second_order_residuals(to_second_order(eq), orbit)
    ok = orbit.truncated_at is None and len(res) == 29 and max(res) <= 1e-8
    return ok, f"max relative residual {max(res):.1e} over {len(res)} interior indices"


def c12():
    eq1 = RiccatiEquation.of(POLY[0], P(POLY[1]))
    eq3, f1, f2 = pair()
    zeros = [delta_q_riccati_identity(eq1, P(POLY[2])), delta_q_riccati_identity(eq3, f1),
             delta_q_riccati_identity(eq3, f2)]
    planted = delta_q_riccati_identity(eq1, P("z"))
    ok = all(r.is_zero for r in zeros) and not planted.is_zero
    return ok, f"solutions {'zero' if all(r.is_zero for r in zeros) else 'nonzero'}, planted non-solution {format_rational_function(planted)}"


def c13():
    cf = solve_homogeneous(LinearHomogeneousEq(QBase.of(HALF), P("1-z")))
    radii = [r for r in log_radii(1, 1e6, 61) if abs(math.log2(r) - round(math.log2(r))) > 1e-9 or r == 1]
    rec = growth_curve(closed_form_pole_zero_census(cf, 1e6), radii)
    expected = tuple(math.floor(math.log2(r)) + 1 for r in radii)
    fit = rec.fits["C*log r"]
    ok = rec.counts == expected and fit.r2 >= 0.99
    return ok, f"counts {'exact' if rec.counts == expected else 'differ'} on {len(radii)} radii, R^2 {fit.r2:.4f}"


def c14():
    # s = -12/z: A = -(q-1) z s^2 = 72/z with q = 1/2
    q = HALF
    s = P("-12/z")
    eq = RiccatiEquation.of(q, -(RationalFunction(P("z").num) * (CQ(q) - 1)) * s * s)
    found = rational_solution_search(eq, 2).solutions
    exact_ok = bool(found) and all(zero_factorization_check(eq, s, f).identity_residual.is_zero for f in found)
    if len(found) < 2:
        return False, f"only {len(found)} rational solutions found"
    f = general_solution(eq, found[0], found[1], 1)
    rep = zero_factorization_check(eq, s, f, OrbitGrid.circle(q, 2.0, 64, 8))
    ok = exact_ok and bool(rep.zeros) and rep.all_matched and max(r.distance for r in rep.zeros) <= 1e-6
    return ok, (f"identity exact for {len(found)} rational solutions; {len(rep.zeros)} orbit zeros, "
                f"max distance to f = +-s {max((r.distance for r in rep.zeros), default=math.nan):.1e}")


def c15():
    eq = RiccatiEquation.of(HALF, P("2*(z+1)*(z+2)/(z*(z^2-3*z-2))"))
    r = format_rational_function(verify_solution_exact(eq, P("(z-1)/(z+1)")))
    golden = json.loads((GOLDEN / "verify_inconsistent_coefficient.json").read_text())["residual"]
    note = (GOLDEN / "verify_inconsistent_coefficient.md").exists()
    return r == golden and note, f"residual {r} {'matches' if r == golden else 'differs from'} the fixture"


def c16():
    rng = random.Random(16)
    worst = 0.0
    for _ in range(200):
        q = cmath.rect(rng.uniform(0.05, 0.7), rng.uniform(-math.pi, math.pi))
        a = cmath.rect(rng.uniform(0, 2), rng.uniform(-math.pi, math.pi))
        v = qpochhammer_inf(a, q, EvalRequest(eps=1e-12))
        ref = direct_product(a, q, 200)
        worst = max(worst, abs(v - ref) / abs(ref))
    return worst <= 1e-11, f"max relative deviation {worst:.1e} over 200 (a, q)"


def _cli(argv):
    return subprocess.run([sys.executable, "-m", "qriccati.cli", *argv], capture_output=True, text=True)


def c17():
    cmds = json.loads((GOLDEN / "commands.json").read_text())
    golden_ok = all(_cli(cmds[n]).stdout == (GOLDEN / f"{n}.json").read_text()
                    for n in ("verify_polynomial", "reduce_polynomial", "linearize_pair"))
    rng = random.Random(17)
    trips = sum(P(format_rational_function(f)) == f for f in (_random_rf(rng, 4) for _ in range(1000)))
    codes = {
        0: ["second-order", "--q", "1/2", "--A", "z"],
        1: ["second-order", "--q", "1/2"],
        2: ["second-order", "--q", "1/2", "--A", "z^^2"],
        3: ["second-order", "--q", "1", "--A", "z"],
    }
    exits = {want: _cli(argv).returncode for want, argv in codes.items()}
    exits_ok = all(want == got for want, got in exits.items())
    # exit code 4 needs an internal failure; provoke one in-process
    def broken(args, cfg):
        raise RuntimeError("provoked")

    saved = cli.COMMANDS["second-order"]
    cli.COMMANDS["second-order"] = broken
    try:
        with contextlib.redirect_stderr(io.StringIO()):
            internal = cli.main(["second-order", "--q", "1/2", "--A", "z"])
    finally:
        cli.COMMANDS["second-order"] = saved
    ok = golden_ok and trips == 1000 and exits_ok and internal == 4
    return ok, f"golden {'match' if golden_ok else 'differ'}, round trips {trips}/1000, exit codes {exits} and 4 -> {internal}"


CRITERIA = [c01, c02, c03, c04, c05, c06, c07, c08, c09, c10, c11, c12, c13, c14, c15, c16, c17]
RESULTS: dict[int, str] = {}


def line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n):
    try:
        ok, detail = CRITERIA[n - 1]()
    except Exception as exc:  # a crash is a failure with a reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[n] = line(n, ok, detail)
    print(RESULTS[n])
    assert ok, detail


if __name__ == "__main__":
    bad = 0
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        bad += not ok
        print(line(n, ok, detail), flush=True)
    sys.exit(1 if bad else 0)
