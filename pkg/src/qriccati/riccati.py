"""The q-difference Riccati equation

    f(qz) = (A(z) + f(z)) / (1 - (q - 1) z f(z)),

checked in the cleared form ``(q-1) z f(qz) f(z) = f(qz) - f(z) - A(z)``.

Exact work (verification, reduction to a linear equation, one-parameter
families, Moebius linearization, the second-order passage) uses
:mod:`qriccati.exact`; transcendental solutions are built numerically from
the gamma_q closed form of the linearized equation.
"""

from __future__ import annotations

import cmath
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact import (
    CQ,
    INDETERMINATE,
    ONE,
    POLE,
    MathDomainError,
    Polynomial,
    QRiccatiError,
    RationalFunction,
    Z,
    as_rational_function,
    delta_q,
    is_marker,
    poly_gcd,
    poly_lcm,
)
from .linear import (
    LinearFirstOrderEq,
    LinearHomogeneousEq,
    RationalSolutionSet,
    eval_closed_form,
    find_rational_solutions,
    solve_homogeneous,
)
from .qspecial import DEFAULT_REQUEST, EvalRequest, QBase

log = logging.getLogger(__name__)


class NotASolutionError(QRiccatiError, ValueError):
    pass


def _z() -> RationalFunction:
    return RationalFunction(Z)


@dataclass(frozen=True)
class RiccatiEquation:
    q: QBase
    A: RationalFunction

    def __post_init__(self):
        self.q.require_exact()

    @classmethod
    def of(cls, q, A) -> "RiccatiEquation":
        return cls(QBase.of(q), as_rational_function(A))

    @property
    def qx(self) -> CQ:
        return self.q.exact

    @property
    def degenerate(self) -> bool:
        """True when ``A = -1/((q-1) z)``, the excluded coefficient."""
        return self.A == -ONE / (_z() * (self.qx - 1))

    def step(self, z: complex, fz):
        """Numeric ``f(qz)`` from ``f(z)`` (the Riccati map)."""
        a = self.A.evaluate(z)
        if is_marker(a) or is_marker(fz):
            return INDETERMINATE
        den = 1 - (self.q.num - 1) * z * fz
        if den == 0:
            return POLE
        return (a + fz) / den


# ---------------------------------------------------------------------------
# Solution evaluators


@dataclass(frozen=True)
class SolutionEvaluator:
    """A function of ``z`` returning a complex value or :data:`POLE`.

    ``rational`` is set when the function is an exact rational function;
    ``kind`` is ``'rational'``, ``'closed-form'`` or ``'opaque'``.
    """

    func: Callable[[complex], object]
    kind: str = "opaque"
    rational: RationalFunction | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_rational(cls, f) -> "SolutionEvaluator":
        f = as_rational_function(f)
        return cls(f.evaluate, "rational", f)

    def __call__(self, z):
        return self.func(complex(z))


def as_evaluator(f) -> SolutionEvaluator:
    if isinstance(f, SolutionEvaluator):
        return f
    if isinstance(f, RationalFunction):
        return SolutionEvaluator.from_rational(f)
    if callable(f):
        return SolutionEvaluator(f)
    return SolutionEvaluator.from_rational(as_rational_function(f))


def _rational_of(f) -> RationalFunction | None:
    if isinstance(f, SolutionEvaluator):
        return f.rational
    if isinstance(f, RationalFunction):
        return f
    if callable(f):
        return None
    return as_rational_function(f)


# ---------------------------------------------------------------------------
# Exact checks


def verify_solution_exact(eq: RiccatiEquation, f) -> RationalFunction:
    """``(q-1) z f(qz) f(z) - f(qz) + f(z) + A(z)``; zero iff ``f`` solves."""
    f = as_rational_function(f)
    q = eq.qx
    fq = f.dilate(q)
    return _z() * (q - 1) * fq * f - fq + f + eq.A


def is_solution(eq: RiccatiEquation, f) -> bool:
    return verify_solution_exact(eq, f).is_zero


@dataclass(frozen=True)
class NondegeneracyReport:
    first: RationalFunction  # 1 - (q-1) z f(z)
    second: RationalFunction  # 1 + (q-1) z f(qz)

    @property
    def first_vanishes(self) -> bool:
        return self.first.is_zero

    @property
    def second_vanishes(self) -> bool:
        return self.second.is_zero

    @property
    def ok(self) -> bool:
        return not (self.first_vanishes or self.second_vanishes)


def check_nondegeneracy(eq: RiccatiEquation, f) -> NondegeneracyReport:
    f = as_rational_function(f)
    qz = _z() * (eq.qx - 1)
    return NondegeneracyReport(1 - qz * f, 1 + qz * f.dilate(eq.qx))


def _require_solution(eq, f, what="seed"):
    if not is_solution(eq, f):
        raise NotASolutionError(f"{what} is not a solution")


def reduce_to_linear(eq: RiccatiEquation, f0, *, check: bool = True) -> LinearFirstOrderEq:
    """Linear equation for ``u = 1/(f - f0)``.

    ``alpha1 u(qz) + alpha0 u(z) + (q-1) z = 0`` with
    ``alpha1 = 1 + (q-1) z f0(qz)`` and ``alpha0 = (q-1) z f0(z) - 1``;
    denominators are cleared, the common polynomial factor removed and the
    result scaled so the ``u(qz)`` coefficient is monic.
    """
    f0 = as_rational_function(f0)
    if check:
        _require_solution(eq, f0)
    q = eq.qx
    qz = _z() * (q - 1)
    alpha1 = 1 + qz * f0.dilate(q)
    alpha0 = qz * f0 - 1
    return clear_linear(eq.q, alpha1, alpha0, qz)


def clear_linear(q: QBase, a1, a0, c) -> LinearFirstOrderEq:
    """Turn rational coefficients into coprime polynomial ones."""
    a1, a0, c = (as_rational_function(x) for x in (a1, a0, c))
    L = poly_lcm(poly_lcm(a1.den, a0.den), c.den)
    polys = [(x * L).num if not x.is_zero else Polynomial() for x in (a1, a0, c)]
    g = Polynomial()
    for p in polys:
        g = poly_gcd(g, p)
    polys = [p.exact_div(g) if not p.is_zero else p for p in polys]
    lead = polys[0].leading if not polys[0].is_zero else polys[1].leading
    polys = [p.scale(ONE / lead) for p in polys]
    return LinearFirstOrderEq(q, *polys)


# ---------------------------------------------------------------------------
# One-parameter family


@dataclass(frozen=True)
class FamilyParameter:
    """Either an exact constant or a q-periodic evaluator ``phi(qz) = phi(z)``."""

    constant: CQ | None = None
    evaluator: Callable[[complex], complex] | None = None

    def __post_init__(self):
        if (self.constant is None) == (self.evaluator is None):
            raise ValueError("give exactly one of constant / evaluator")

    @classmethod
    def const(cls, c) -> "FamilyParameter":
        return cls(constant=CQ.of(c))

    @classmethod
    def periodic(cls, fn) -> "FamilyParameter":
        return cls(evaluator=fn)

    def value(self, z: complex):
        if self.constant is not None:
            return complex(self.constant)
        return self.evaluator(z)

    def validate(self, q: QBase, samples: int = 32, tol: float = 1e-9, seed: int = 0) -> None:
        if self.constant is not None:
            return
        rng = random.Random(seed)
        for _ in range(samples):
            z = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-np.pi, np.pi))
            a, b = self.evaluator(z), self.evaluator(q.num * z)
            if is_marker(a) or is_marker(b):
                continue
            if abs(a - b) > tol * max(1.0, abs(a)):
                raise ValueError("parameter is not q-periodic on the sample set")


def _family_value(v0, v1, v2, phi):
    if any(is_marker(v) for v in (v0, v1, v2, phi)):
        return INDETERMINATE
    den = phi * (v2 - v1) + (v2 - v0)
    if den == 0:
        return POLE
    return (v1 - v0) * (v2 - v0) / den + v0


def family_member(eq: RiccatiEquation, f0, f1, f2, phi) -> SolutionEvaluator:
    """``f = (f1-f0)(f2-f0) / (phi (f2-f1) + (f2-f0)) + f0``.

    ``phi = 0`` gives ``f1`` and ``phi = -1`` gives ``f2``.  With rational
    seeds and constant ``phi`` the result is exact.
    """
    if not isinstance(phi, FamilyParameter):
        phi = FamilyParameter.const(phi)
    phi.validate(eq.q)
    rats = [_rational_of(f) for f in (f0, f1, f2)]
    if all(r is not None for r in rats):
        r0, r1, r2 = rats
        if r0 == r1 or r0 == r2 or r1 == r2:
            raise ValueError("degenerate seeds: two seeds coincide")
        for r in rats:
            _require_solution(eq, r)
        if phi.constant is not None:
            den = (r2 - r1) * phi.constant + (r2 - r0)
            if den.is_zero:
                raise ValueError("parameter value makes the family denominator vanish")
            f = (r1 - r0) * (r2 - r0) / den + r0
            return SolutionEvaluator.from_rational(f)
    e0, e1, e2 = (as_evaluator(f) for f in (f0, f1, f2))

    def member(z):
        return _family_value(e0(z), e1(z), e2(z), phi.value(z))

    return SolutionEvaluator(member, "opaque")


# ---------------------------------------------------------------------------
# Cross ratio


def cross_ratio(f1, f2, f3, f, z=None):
    """``((f - f1)/(f - f2)) : ((f3 - f1)/(f3 - f2))``.

    Arguments are values, or evaluators when ``z`` is given.  Values may be
    :data:`POLE` (the point at infinity).  Returns :data:`POLE` when
    ``f = f2`` and :data:`INDETERMINATE` if the three reference values are
    not pairwise distinct.
    """
    if z is not None:
        vals = [as_evaluator(g)(z) if not isinstance(g, (complex, float, int)) else g
                for g in (f1, f2, f3, f)]
    else:
        vals = [f1, f2, f3, f]
    a1, a2, a3, a = vals
    if any(v is INDETERMINATE for v in vals):
        return INDETERMINATE

    def same(x, y):
        return (x is POLE and y is POLE) or (not is_marker(x) and not is_marker(y) and x == y)

    if same(a1, a2) or same(a1, a3) or same(a2, a3):
        return INDETERMINATE
    if same(a, a2):
        return POLE

    # R = (a - a1)(a3 - a2) / ((a - a2)(a3 - a1)); each value occurs once
    # upstairs and once downstairs, so an infinite value just drops out.
    def diff(x, y):
        return None if (x is POLE or y is POLE) else x - y

    num = [diff(a, a1), diff(a3, a2)]
    den = [diff(a, a2), diff(a3, a1)]
    n = 1 + 0j
    d = 1 + 0j
    for t in num:
        if t is not None:
            n *= t
    for t in den:
        if t is not None:
            d *= t
    if d == 0:
        return POLE
    return n / d


@dataclass(frozen=True)
class CrossRatioReport:
    max_deviation: float
    samples_used: int
    samples_skipped: int
    insufficient: bool


def orbit_points(z0s: Sequence[complex], q: QBase, depth: int) -> list[complex]:
    pts = []
    for z0 in z0s:
        z = complex(z0)
        for _ in range(depth):
            pts.append(z)
            z *= q.num
    return pts


def cross_ratio_invariance_check(eq: RiccatiEquation, solutions, samples) -> CrossRatioReport:
    """Max of ``|R(qz) - R(z)| / max(1, |R(z)|)`` over the sample points."""
    f1, f2, f3, f = (as_evaluator(s) for s in solutions)
    worst = 0.0
    used = skipped = 0
    distinct = {complex(s) for s in samples}
    for z in samples:
        z = complex(z)
        r0 = cross_ratio(f1, f2, f3, f, z)
        r1 = cross_ratio(f1, f2, f3, f, eq.q.num * z)
        if is_marker(r0) or is_marker(r1):
            skipped += 1
            continue
        used += 1
        worst = max(worst, abs(r1 - r0) / max(1.0, abs(r0)))
    return CrossRatioReport(worst, used, skipped, len(distinct) < 2)


# ---------------------------------------------------------------------------
# Moebius linearization and general solution


def _values_back(f1v, f2v, h):
    if h is POLE:
        return f1v
    if h == 0:
        return f2v
    if is_marker(f1v) or is_marker(f2v):
        return POLE
    if h + 1 == 0:
        return POLE
    return (f1v * h + f2v) / (h + 1)


@dataclass(frozen=True)
class MoebiusBackMap:
    """``h -> (f1 h + f2) / (h + 1)``."""

    f1: RationalFunction
    f2: RationalFunction

    def __call__(self, h, z):
        """Value of ``f`` at ``z`` given the value ``h`` (or :data:`POLE`)."""
        z = complex(z)
        return _values_back(self.f1.evaluate(z), self.f2.evaluate(z), h)

    def exact(self, h) -> RationalFunction:
        h = as_rational_function(h)
        return (self.f1 * h + self.f2) / (h + 1)

    def compose(self, h) -> SolutionEvaluator:
        h = as_evaluator(h)
        return SolutionEvaluator(lambda z: self(h(z), z), "closed-form")


def moebius_linearize(eq: RiccatiEquation, f1, f2) -> tuple[LinearHomogeneousEq, MoebiusBackMap]:
    """``h(qz) = a(z) h(z)`` with ``a = (1 - (q-1) z f1) / (1 - (q-1) z f2)``."""
    f1, f2 = as_rational_function(f1), as_rational_function(f2)
    if f1 == f2:
        raise ValueError("f1 and f2 must be distinct")
    _require_solution(eq, f1, "f1")
    _require_solution(eq, f2, "f2")
    qz = _z() * (eq.qx - 1)
    a = (1 - qz * f1) / (1 - qz * f2)
    return LinearHomogeneousEq(eq.q, a), MoebiusBackMap(f1, f2)


def _hpoly_mul(a, b):
    out = [RationalFunction()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _hpoly_add(*ps):
    n = max(len(p) for p in ps)
    out = [RationalFunction()] * n
    for p in ps:
        for i, x in enumerate(p):
            out[i] = out[i] + x
    return out


def moebius_formal_residual(eq: RiccatiEquation, lin: LinearHomogeneousEq, back: MoebiusBackMap):
    """Coefficients (in the formal value ``H = h(z)``) of the cleared
    Riccati residual of ``f = back(h)`` given ``h(qz) = a(z) H``.

    All coefficients vanish exactly when the linearization is consistent.
    """
    q = eq.qx
    a = lin.a
    f1, f2 = back.f1, back.f2
    f1q, f2q = f1.dilate(q), f2.dilate(q)
    one = RationalFunction.constant(1)
    num_z = [f2, f1]  # f(z) = (f1 H + f2)/(H + 1)
    den_z = [one, one]
    num_q = [f2q, f1q * a]  # f(qz) = (f1(qz) a H + f2(qz))/(a H + 1)
    den_q = [one, a]
    qz = _z() * (q - 1)
    t1 = [qz * c for c in _hpoly_mul(num_q, num_z)]
    t2 = [-c for c in _hpoly_mul(num_q, den_z)]
    t3 = _hpoly_mul(num_z, den_q)
    t4 = [eq.A * c for c in _hpoly_mul(den_z, den_q)]
    return _hpoly_add(t1, t2, t3, t4)


def general_solution(
    eq: RiccatiEquation,
    f1,
    f2,
    scale=1.0,
    req: EvalRequest = DEFAULT_REQUEST,
) -> SolutionEvaluator:
    """``f = back(scale * h)`` with ``h`` the gamma_q closed form.

    Different scales give different solutions; ``scale = 0`` returns ``f2``.
    """
    lin, back = moebius_linearize(eq, f1, f2)
    scale = complex(scale)
    if scale == 0:
        return SolutionEvaluator.from_rational(back.f2)
    cf = solve_homogeneous(lin)

    def f(z):
        h = eval_closed_form(cf, z, req)
        return back(h if h is POLE else scale * h, z)

    return SolutionEvaluator(
        f,
        "closed-form",
        meta={"closed_form": cf, "linear": lin, "scale": scale, "branch": cf.branch_note},
    )


def riccati_numeric_residual(eq: RiccatiEquation, f, z):
    """Relative residual of the cleared equation at ``z`` (None at poles)."""
    f = as_evaluator(f)
    z = complex(z)
    fz, fq, a = f(z), f(eq.q.num * z), eq.A.evaluate(z)
    if is_marker(fz) or is_marker(fq) or is_marker(a):
        return None
    t = [(eq.q.num - 1) * z * fq * fz, fq, fz, a]
    r = t[0] - t[1] + t[2] + t[3]
    return abs(r) / max(1e-300, max(abs(x) for x in t))


# ---------------------------------------------------------------------------
# Second-order passage


@dataclass(frozen=True)
class SecondOrderEq:
    """``c2 y(q^2 z) + c1 y(qz) + c0 y(z) = 0``."""

    q: QBase
    c2: RationalFunction
    c1: RationalFunction
    c0: RationalFunction

    def __post_init__(self):
        if self.c2.is_zero:
            raise MathDomainError("c2 must not vanish identically")


def to_second_order(eq: RiccatiEquation) -> SecondOrderEq:
    q = eq.qx
    c0 = (1 + _z() * (q - 1) * eq.A) * q
    return SecondOrderEq(eq.q, RationalFunction.constant(1), RationalFunction.constant(-(q + 1)), c0)


def _formal_delta(vec, q: CQ):
    """Delta_q on ``sum vec[i](z) * Y_i`` where ``Y_i`` stands for ``y(q^i z)``."""
    shifted = [RationalFunction()] + [c.dilate(q) for c in vec]
    padded = list(vec) + [RationalFunction()]
    inv = ONE / (_z() * (q - 1))
    return [(s - p) * inv for s, p in zip(shifted, padded)]


def formal_second_order_expansion(eq: RiccatiEquation) -> list[RationalFunction]:
    """Coefficients of ``y(z), y(qz), y(q^2 z)`` in ``Delta_q^2 y + A/((q-1)z) y``."""
    q = eq.qx
    one = RationalFunction.constant(1)
    v = _formal_delta(_formal_delta([one], q), q)
    v[0] = v[0] + eq.A / (_z() * (q - 1))
    return v


def second_order_equivalence(eq: RiccatiEquation) -> tuple[bool, RationalFunction]:
    """Whether the expanded operator is a rational multiple of the
    ``to_second_order`` form; also returns the multiplier."""
    so = to_second_order(eq)
    v = formal_second_order_expansion(eq)
    w = [so.c0, so.c1, so.c2]
    ratio = v[2] / w[2]
    return all(vi == ratio * wi for vi, wi in zip(v, w)), ratio


@dataclass(frozen=True)
class YOrbit:
    points: tuple[complex, ...]
    values: tuple[complex, ...]
    truncated_at: int | None = None

    @property
    def truncated(self) -> bool:
        return self.truncated_at is not None


def riccati_to_y_orbit(eq: RiccatiEquation, f, z0, depth: int) -> YOrbit:
    """``y`` on ``{q^k z0}`` from ``y(qz) = (1 - (q-1) z f(z)) y(z)``, ``y(z0) = 1``."""
    f = as_evaluator(f)
    q = eq.q.num
    z = complex(z0)
    pts, vals = [z], [1 + 0j]
    for k in range(depth):
        fz = f(z)
        if is_marker(fz):
            return YOrbit(tuple(pts), tuple(vals), k)
        vals.append((1 - (q - 1) * z * fz) * vals[-1])
        z = z * q
        pts.append(z)
    return YOrbit(tuple(pts), tuple(vals))


def second_order_residuals(so: SecondOrderEq, orbit: YOrbit) -> list[float]:
    """Relative recurrence residual at each interior orbit index."""
    out = []
    ys, zs = orbit.values, orbit.points
    for k in range(len(ys) - 2):
        c = [so.c0.evaluate(zs[k]), so.c1.evaluate(zs[k]), so.c2.evaluate(zs[k])]
        if any(is_marker(x) for x in c):
            out.append(float("nan"))
            continue
        terms = [c[0] * ys[k], c[1] * ys[k + 1], c[2] * ys[k + 2]]
        scale = max(abs(t) for t in terms)
        out.append(abs(sum(terms)) / scale if scale else 0.0)
    return out


def delta_q_riccati_identity(eq: RiccatiEquation, f, *, strict: bool = False) -> RationalFunction:
    """``Delta_q f - (A + (q-1) z f^2) / ((q-1) z (1 - (q-1) z f))``.

    Zero for every solution.  For a non-solution the (nonzero) residual is
    returned, or :class:`NotASolutionError` raised when ``strict``.
    """
    f = as_rational_function(f)
    if strict:
        _require_solution(eq, f)
    qz = _z() * (eq.qx - 1)
    rhs = (eq.A + qz * f * f) / (qz * (1 - qz * f))
    return delta_q(f, eq.qx) - rhs


# ---------------------------------------------------------------------------
# Rational solution search


@dataclass(frozen=True)
class RiccatiSearchResult:
    """Exactly verified rational solutions.

    ``infinite_family`` is set when the reduced linear equation has a
    rational homogeneous solution; :meth:`member` then yields further
    rational solutions for every constant.
    """

    solutions: tuple[RationalFunction, ...]
    seed: RationalFunction | None = None
    linear: LinearFirstOrderEq | None = None
    linear_solutions: RationalSolutionSet | None = None
    infinite_family: bool = False
    note: str = ""

    def member(self, c) -> RationalFunction:
        if not self.infinite_family:
            raise ValueError("equation has no rational one-parameter family")
        u = self.linear_solutions.member(c)
        return self.seed + 1 / u


SEARCH_NOTE = (
    "seed: heuristic numeric fit + exact verification; "
    "remaining solutions: exact reduction to a linear equation"
)


def _sample_points(q: QBase, count: int, rng: np.random.Generator) -> np.ndarray:
    pts = []
    while len(pts) < count:
        z0 = rng.uniform(0.8, 1.6) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        z = z0
        for _ in range(3):
            pts.append(z)
            z = z * q.num
            if not 0.2 < abs(z) < 5:
                break
    return np.array(pts[:count])


def _fit_seed(eq, n, m, rng, restarts, max_den):
    from scipy.optimize import least_squares

    q = eq.q.num
    a_c = np.array(eq.A.num.complex_coeffs[::-1] or (0j,))
    b_c = np.array(eq.A.den.complex_coeffs[::-1])
    nun = (n + 1) + m
    pts = _sample_points(eq.q, 2 * nun + 8, rng)
    qpts = q * pts
    deg = 2 * max(n, m) + 1 + eq.A.degree
    wts = 1.0 / (1.0 + np.abs(pts)) ** deg
    A_vals = np.polyval(a_c, pts)
    B_vals = np.polyval(b_c, pts)

    def unpack(x):
        c = x[:nun] + 1j * x[nun:]
        P = c[: n + 1][::-1]
        D = np.concatenate(([1.0 + 0j], c[n + 1:][::-1]))
        return P, D

    def resid(x):
        P, D = unpack(x)
        Pz, Pq = np.polyval(P, pts), np.polyval(P, qpts)
        Dz, Dq = np.polyval(D, pts), np.polyval(D, qpts)
        e = B_vals * ((q - 1) * pts * Pq * Pz - Pq * Dz + Pz * Dq) + A_vals * Dq * Dz
        e = e * wts
        return np.concatenate((e.real, e.imag))

    found = []
    for _ in range(restarts):
        x0 = rng.normal(scale=2.0, size=2 * nun)
        try:
            sol = least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400 * nun)
        except Exception:  # pragma: no cover - optimizer failure is just a miss
            continue
        if np.max(np.abs(sol.fun)) > 1e-7:
            continue
        P, D = unpack(sol.x)
        for den_cap in (1, 10, 100, 1000, max_den):
            cand = _rationalize_candidate(P[::-1], D[::-1], den_cap)
            if cand is not None and is_solution(eq, cand) and check_nondegeneracy(eq, cand).ok:
                if cand not in found:
                    found.append(cand)
                break
        if found:
            break
    return found


def _rationalize_candidate(P, D, cap):
    def rat(x):
        return CQ(Fraction(float(x.real)).limit_denominator(cap), Fraction(float(x.imag)).limit_denominator(cap))

    den = Polynomial(rat(c) for c in D)
    if den.is_zero:
        return None
    return RationalFunction(Polynomial(rat(c) for c in P), den)


def find_seed(eq: RiccatiEquation, degree_bound: int = 6, *, restarts: int = 8, seed: int = 0,
              max_den: int = 10**6) -> RationalFunction | None:
    """Heuristic stage: first exactly verified rational solution, by
    increasing total degree of numerator plus denominator."""
    rng = np.random.default_rng(seed)
    for total in range(0, 2 * degree_bound + 1):
        for m in range(0, min(total, degree_bound) + 1):
            n = total - m
            if n > degree_bound:
                continue
            hits = _fit_seed(eq, n, m, rng, restarts, max_den)
            if hits:
                log.debug("seed found at (deg num, deg den) = (%d, %d)", n, m)
                return hits[0]
    return None


DEGREE_CAP = 6


def rational_solution_search(
    eq: RiccatiEquation,
    degree_bound: int = DEGREE_CAP,
    *,
    max_extra_degree: int = 8,
    seed_solution=None,
    restarts: int = 8,
    seed: int = 0,
) -> RiccatiSearchResult:
    """Rational solutions of the Riccati equation.

    Stage 1 finds one seed ``f0`` (or uses ``seed_solution``); stage 2
    reduces to the linear equation for ``u = 1/(f - f0)`` and collects its
    rational solutions exactly.  Everything returned has zero exact residual;
    completeness is only relative to the search bounds.
    """
    if degree_bound > DEGREE_CAP:
        raise ValueError(f"degree_bound above the configured cap {DEGREE_CAP}")
    if seed_solution is not None:
        f0 = as_rational_function(seed_solution)
        _require_solution(eq, f0)
    else:
        f0 = find_seed(eq, degree_bound, restarts=restarts, seed=seed)
    if f0 is None:
        return RiccatiSearchResult((), note=SEARCH_NOTE)
    lin = reduce_to_linear(eq, f0)
    sols = find_rational_solutions(lin, max_extra_degree)
    out = [f0]
    if sols.particular is not None:
        out.append(f0 + 1 / sols.particular)
        if sols.homogeneous_basis:
            out.append(f0 + 1 / (sols.particular + sols.homogeneous_basis[0]))
    for f in out:
        if not is_solution(eq, f):
            raise QRiccatiError("internal: produced a non-solution")
    return RiccatiSearchResult(
        tuple(out), f0, lin, sols, bool(sols.homogeneous_basis and sols.particular is not None), SEARCH_NOTE
    )
