"""Desk-scale value distribution: pole/zero counts on disks, growth fits and
the zero set of ``Delta_q f``.

Nevanlinna functionals are not computed.  Growth is read off the counting
function ``n(r)`` (points in ``|z| <= r`` with multiplicity) and the
integrated proxy ``N(r) = int n(t)/t dt`` taken by the trapezoid rule in
``log r``.  Statements of the form "infinitely many" are reported as counts
growing across windows, never as proofs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .exact import (
    POLE,
    QRiccatiError,
    RationalFunction,
    Z,
    as_rational_function,
    delta_q,
    is_marker,
)
from .linear import ClosedFormSolution
from .qspecial import DEFAULT_REQUEST, EvalRequest, QBase
from .riccati import RiccatiEquation, SolutionEvaluator, as_evaluator, is_solution
from .roots import roots


class HypothesisError(QRiccatiError, ValueError):
    pass


@dataclass(frozen=True)
class OrbitGrid:
    """Points ``b q^k`` for base points ``b`` and ``0 <= k < depth``."""

    base_points: tuple[complex, ...]
    q: QBase
    depth: int
    cyclic: bool = False  # base points are consecutive on a closed curve

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if any(complex(b) == 0 for b in self.base_points):
            raise ValueError("base points must be nonzero")

    @classmethod
    def circle(cls, q, radius: float, n_angles: int, depth: int) -> "OrbitGrid":
        q = QBase.of(q)
        pts = tuple(cmath.rect(radius, 2 * math.pi * (j + 0.5) / n_angles) for j in range(n_angles))
        return cls(pts, q, depth, cyclic=True)

    def points(self) -> np.ndarray:
        b = np.asarray(self.base_points, dtype=complex)[:, None]
        return b * self.q.num ** np.arange(self.depth)[None, :]


# ---------------------------------------------------------------------------
# Census of a closed form


@dataclass(frozen=True)
class Census:
    """Poles and zeros as ``(point, multiplicity)`` pairs inside a disk."""

    radius: float
    poles: tuple[tuple[complex, int], ...]
    zeros: tuple[tuple[complex, int], ...]
    origin_branch_point: bool = False

    def count(self, r: float, which: str = "poles") -> int:
        groups = {"poles": (self.poles,), "zeros": (self.zeros,), "both": (self.poles, self.zeros)}[which]
        tol = 1e-12 * max(1.0, r)
        return sum(m for g in groups for p, m in g if abs(p) <= r + tol)


def _lattice(centre: complex, q: QBase, radius: float) -> list[complex]:
    """``centre * q**(-k)``, ``k >= 0``, inside ``|z| <= radius``."""
    out = []
    if centre == 0:
        return out
    k = 0
    z = complex(centre)
    while abs(z) <= radius * (1 + 1e-12):
        out.append(z)
        k += 1
        z = complex(centre) / q.num**k
    return out


def _net(points: Iterable[tuple[complex, int]], tol: float) -> list[tuple[complex, int]]:
    merged: list[list] = []
    for p, m in points:
        for cell in merged:
            if abs(cell[0] - p) <= tol * max(1.0, abs(p)):
                cell[1] += m
                break
        else:
            merged.append([p, m])
    return [(p, m) for p, m in merged if m != 0]


def closed_form_pole_zero_census(cf: ClosedFormSolution, radius: float, tol: float = 1e-9) -> Census:
    """Poles ``alpha q^-k`` and zeros ``beta q^-k`` of ``z^n0 prod gamma_q(z/alpha) / prod gamma_q(z/beta)``.

    Coincident pole and zero points cancel by multiplicity.
    """
    cf.q.require_convergent()
    signed = [(p, 1) for a in cf.alphas for p in _lattice(a, cf.q, radius)]
    signed += [(p, -1) for b in cf.betas for p in _lattice(b, cf.q, radius)]
    if cf.n0:
        signed.append((0j, -cf.n0))
    net = _net(signed, tol)
    poles = tuple(sorted(((p, m) for p, m in net if m > 0), key=lambda t: abs(t[0])))
    zeros = tuple(sorted(((p, -m) for p, m in net if m < 0), key=lambda t: abs(t[0])))
    return Census(radius, poles, zeros, origin_branch_point=not cf.meromorphic)


# ---------------------------------------------------------------------------
# Growth fits


@dataclass(frozen=True)
class GrowthFit:
    """``n(r) ~ intercept + coefficient * (log r)**power``."""

    power: int
    coefficient: float
    intercept: float
    r2: float


@dataclass(frozen=True)
class GrowthRecord:
    radii: tuple[float, ...]
    counts: tuple[int, ...]
    integrated: tuple[float, ...]
    fits: dict = field(default_factory=dict)
    integrated_fits: dict = field(default_factory=dict)
    best_model: str = ""
    loglog_exponent: float | None = None

    @property
    def best(self) -> GrowthFit:
        return self.fits[self.best_model]

    def rows(self):
        return list(zip(self.radii, self.counts, self.integrated))


MODELS = {"C*log r": 1, "C*(log r)^2": 2}


def _fit(x: np.ndarray, y: np.ndarray, power: int) -> GrowthFit:
    X = np.column_stack((np.ones_like(x), x**power))
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    pred = X @ coef
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res == 0 else 0.0)
    return GrowthFit(power, float(coef[1]), float(coef[0]), r2)


def _integrate(radii: np.ndarray, counts: np.ndarray) -> np.ndarray:
    lr = np.log(radii)
    out = np.zeros_like(lr)
    out[1:] = np.cumsum(0.5 * (counts[1:] + counts[:-1]) * np.diff(lr))
    return out


def log_radii(r_min: float, r_max: float, steps: int) -> list[float]:
    return list(np.geomspace(r_min, r_max, steps))


def growth_curve(source, radii: Sequence[float], which: str = "poles") -> GrowthRecord:
    """Counting function on ``radii`` with least-squares fits in ``log r``.

    ``source`` is a :class:`Census`, a :class:`GrowthRecord` (reused counts) or
    a callable ``r -> count``.  ``radii`` must be ascending, positive and span
    at least three decades.
    """
    r = np.asarray(radii, dtype=float)
    if r.ndim != 1 or len(r) < 3 or np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise ValueError("radii must be at least three ascending positive values")
    if r[-1] / r[0] < 1e3 * (1 - 1e-12):
        raise ValueError("radii must span at least three decades")
    if isinstance(source, Census):
        if r[-1] > source.radius * (1 + 1e-12):
            raise ValueError("census radius is smaller than the largest requested radius")
        counts = np.array([source.count(x, which) for x in r])
    elif isinstance(source, GrowthRecord):
        if tuple(source.radii) != tuple(float(x) for x in r):
            raise ValueError("record radii differ from the requested radii")
        counts = np.asarray(source.counts)
    else:
        counts = np.array([int(source(x)) for x in r])
    if np.any(np.diff(counts) < 0):
        raise QRiccatiError("counting function decreased with the radius")
    lr = np.log(r)
    integrated = _integrate(r, counts.astype(float))
    fits = {name: _fit(lr, counts.astype(float), p) for name, p in MODELS.items()}
    ifits = {name: _fit(lr, integrated, p) for name, p in MODELS.items()}
    best = max(fits, key=lambda k: (fits[k].r2, -fits[k].power))
    mask = (counts > 0) & (lr > 0)
    slope = None
    if mask.sum() >= 2 and np.ptp(np.log(lr[mask])) > 0:
        slope = float(np.polyfit(np.log(lr[mask]), np.log(counts[mask]), 1)[0])
    return GrowthRecord(
        tuple(float(x) for x in r),
        tuple(int(c) for c in counts),
        tuple(float(x) for x in integrated),
        fits,
        ifits,
        best,
        slope,
    )


# ---------------------------------------------------------------------------
# Degrees of Delta_q f


@dataclass(frozen=True)
class DeltaGrowthReport:
    degree_f: int
    degree_delta: int
    numerator_degree: int  # of A + (q-1) z f^2
    denominator_degree: int  # of (q-1) z (1 - (q-1) z f)
    ratio: float | None
    doubling: bool
    correction: int  # degree_delta - 2 degree_f
    degenerate: bool  # Delta_q f == 0
    identity_holds: bool


def _deg(f: RationalFunction) -> int:
    return max(f.num.degree, f.den.degree, 0)


def delta_growth_experiment(eq: RiccatiEquation, f) -> DeltaGrowthReport:
    f = as_rational_function(f)
    if not is_solution(eq, f):
        raise QRiccatiError("seed is not a solution")
    q = eq.qx
    qz = RationalFunction(Z) * (q - 1)
    d = delta_q(f, q)
    num = eq.A + qz * f * f
    den = qz * (1 - qz * f)
    df, dd = _deg(f), _deg(d)
    return DeltaGrowthReport(
        df,
        dd,
        _deg(num),
        _deg(den),
        dd / df if df else None,
        dd == 2 * df,
        dd - 2 * df,
        d.is_zero,
        d == num / den,
    )


# ---------------------------------------------------------------------------
# Zeros of Delta_q f under A = -(q-1) z s^2


@dataclass(frozen=True)
class ZeroRecord:
    z: complex
    branch: str | None  # '+s' when f = s, '-s' when f = -s
    distance: float


@dataclass(frozen=True)
class ZeroFactorizationReport:
    exact: bool
    identity_residual: RationalFunction | None
    max_identity_deviation: float
    zeros: tuple[ZeroRecord, ...]
    status: str

    @property
    def all_matched(self) -> bool:
        return all(r.branch is not None for r in self.zeros)


def _delta_evaluator(f: SolutionEvaluator, q: QBase) -> Callable[[complex], object]:
    def g(z):
        z = complex(z)
        a, b = f(q.num * z), f(z)
        if is_marker(a) or is_marker(b):
            return POLE
        return (a - b) / ((q.num - 1) * z)

    return g


def delta_evaluator(f, q) -> SolutionEvaluator:
    """Numeric ``Delta_q f``."""
    q = QBase.of(q)
    return SolutionEvaluator(_delta_evaluator(as_evaluator(f), q))


def _newton(g, z: complex, iters: int = 60):
    """Complex Newton on an analytic ``g`` with a central-difference slope."""
    for _ in range(iters):
        gz = g(z)
        if is_marker(gz):
            return None
        h = 1e-7 * max(1.0, abs(z))
        a, b = g(z + h), g(z - h)
        if is_marker(a) or is_marker(b):
            return None
        dg = (a - b) / (2 * h)
        if dg == 0:
            return None
        step = gz / dg
        z = z - step
        if abs(step) <= 1e-14 * max(1.0, abs(z)):
            break
    return z


def _match(fz, sz, tol) -> tuple[str | None, float]:
    if is_marker(fz) or is_marker(sz):
        return None, math.inf
    dp, dm = abs(fz - sz), abs(fz + sz)
    scale = max(1.0, abs(sz))
    if min(dp, dm) <= tol * scale:
        return ("+s" if dp <= dm else "-s"), min(dp, dm)
    return None, min(dp, dm)


def _grid_minima(vals: np.ndarray, cyclic: bool) -> list[tuple[int, int]]:
    """Indices of local minima of ``vals`` over 8-neighbourhoods."""
    nb, nk = vals.shape
    out = []
    for i in range(nb):
        for k in range(nk):
            v = vals[i, k]
            if not np.isfinite(v):
                continue
            ok = True
            for di in (-1, 0, 1):
                ii = i + di
                if cyclic:
                    ii %= nb
                elif not 0 <= ii < nb:
                    continue
                for dk in (-1, 0, 1):
                    kk = k + dk
                    if (di, dk) == (0, 0) or not 0 <= kk < nk:
                        continue
                    if vals[ii, kk] < v:
                        ok = False
            if ok:
                out.append((i, k))
    return out


def zero_factorization_check(
    eq: RiccatiEquation,
    s,
    f,
    orbit: OrbitGrid | None = None,
    tol: float = 1e-6,
) -> ZeroFactorizationReport:
    """Check ``Delta_q f = (f + s)(f - s) / (1 - (q-1) z f)`` and that each
    zero of ``Delta_q f`` sits where ``f = s`` or ``f = -s``."""
    s = as_rational_function(s)
    q = eq.qx
    qz = RationalFunction(Z) * (q - 1)
    if s.is_constant or eq.A != -qz * s * s:
        raise HypothesisError("hypothesis violated: A must equal -(q-1) z s(z)^2 with s nonconstant")
    rat = f.rational if isinstance(f, SolutionEvaluator) else (f if isinstance(f, RationalFunction) else None)
    if rat is not None:
        if not is_solution(eq, rat):
            raise QRiccatiError("f is not a solution")
        resid = delta_q(rat, q) - (rat + s) * (rat - s) / (1 - qz * rat)
        d = delta_q(rat, q)
        found = []
        if not d.is_zero and d.num.degree > 0:
            for r in roots(d.num):
                z = r.value
                if orbit is not None:
                    pts = np.abs(orbit.points())
                    if not pts.min() <= abs(z) <= pts.max():
                        continue
                branch, dist = _match(rat.evaluate(z), s.evaluate(z), tol)
                found.append(ZeroRecord(z, branch, dist))
        return ZeroFactorizationReport(True, resid, 0.0 if resid.is_zero else math.inf, tuple(found), _status(found))
    if orbit is None:
        raise ValueError("a numeric solution needs an orbit grid")
    fe = as_evaluator(f)
    g = _delta_evaluator(fe, eq.q)
    pts = orbit.points()
    gvals = np.empty(pts.shape, dtype=complex)
    dev = 0.0
    for idx, z in np.ndenumerate(pts):
        gz, fz, sz = g(z), fe(z), s.evaluate(z)
        gvals[idx] = np.nan if is_marker(gz) else gz
        if is_marker(gz) or is_marker(fz) or is_marker(sz):
            continue
        den = 1 - (eq.q.num - 1) * z * fz
        if den == 0:
            continue
        rhs = (fz + sz) * (fz - sz) / den
        dev = max(dev, abs(gz - rhs) / max(1.0, abs(gz), abs(rhs)))
    mags = np.where(np.isnan(gvals.real), np.inf, np.abs(gvals))
    zeros: list[ZeroRecord] = []
    lo, hi = np.abs(pts).min(), np.abs(pts).max()
    for i, k in _grid_minima(mags, orbit.cyclic):
        z = _newton(g, complex(pts[i, k]))
        if z is None or not lo <= abs(z) <= hi:
            continue
        gz = g(z)
        if is_marker(gz) or abs(gz) > 1e-9 * max(1.0, abs(fe(z)) if not is_marker(fe(z)) else 1.0):
            continue
        if any(abs(z - r.z) <= 1e-8 * max(1.0, abs(z)) for r in zeros):
            continue
        branch, dist = _match(fe(z), s.evaluate(z), tol)
        zeros.append(ZeroRecord(z, branch, dist))
    return ZeroFactorizationReport(False, None, dev, tuple(zeros), _status(zeros))


def _status(zeros) -> str:
    if not zeros:
        return "no zeros in window"
    if all(r.branch is not None for r in zeros):
        return "zeros matched"
    return "unmatched zeros"


# ---------------------------------------------------------------------------
# Numeric pole census


@dataclass(frozen=True)
class PoleCensus:
    poles: tuple[complex, ...]
    annuli: tuple[tuple[float, float], ...]
    per_annulus: tuple[int, ...]
    record: GrowthRecord | None


def _abs_or_inf(v) -> float:
    return math.inf if is_marker(v) else abs(v)


def find_poles(
    f,
    r_min: float,
    r_max: float,
    *,
    n_angles: int = 128,
    per_decade: int = 32,
    seeds: Sequence[complex] = (),
    req: EvalRequest = DEFAULT_REQUEST,
) -> list[complex]:
    """Poles of ``f`` in ``r_min <= |z| <= r_max``.

    Candidates are local maxima of ``|f|`` on a polar grid (a meromorphic
    function has no others) plus ``seeds``; each is refined by Newton on
    ``1/f`` and kept if ``|f| > 1/pole_guard`` there.
    """
    fe = as_evaluator(f)
    decades = max(math.log10(r_max / r_min), 0.1)
    nr = max(8, int(math.ceil(decades * per_decade)))
    # pad the grid so poles on the window edge still show up as maxima
    pad = 10 ** (1.5 / per_decade)
    radii = np.geomspace(r_min / pad, r_max * pad, nr + 2)
    angles = 2 * math.pi * (np.arange(n_angles) + 0.5) / n_angles
    pts = radii[None, :] * np.exp(1j * angles)[:, None]
    mags = np.empty(pts.shape)
    for idx, z in np.ndenumerate(pts):
        mags[idx] = _abs_or_inf(fe(z))
    cands = [complex(pts[i, k]) for i, k in _grid_minima(-mags, cyclic=True)]
    cands += [complex(s) for s in seeds]

    def inv(z):
        v = fe(z)
        if is_marker(v):
            return 0j
        return 1 / v if v != 0 else POLE

    out: list[complex] = []
    for z0 in cands:
        z = _newton(inv, z0)
        if z is None:
            continue
        if _abs_or_inf(inv(z)) > req.pole_guard:
            continue
        if not r_min * (1 - 1e-12) <= abs(z) <= r_max * (1 + 1e-12):
            continue
        if any(abs(z - p) <= 1e-6 * max(1.0, abs(z)) for p in out):
            continue
        out.append(z)
    out.sort(key=lambda p: (abs(p), p.real, p.imag))
    return out


def numeric_pole_census(
    f,
    edges: Sequence[float],
    *,
    n_angles: int = 128,
    per_decade: int = 32,
    seeds: Sequence[complex] = (),
    req: EvalRequest = DEFAULT_REQUEST,
) -> PoleCensus:
    """Pole counts of ``f`` in the annuli ``edges[i] < |z| <= edges[i+1]``.

    ``record`` holds the cumulative counts when the edges span three decades.
    """
    e = [float(x) for x in edges]
    if len(e) < 2 or any(b <= a for a, b in zip(e, e[1:])) or e[0] <= 0:
        raise ValueError("annulus edges must be ascending positive numbers")
    poles = find_poles(f, e[0], e[-1], n_angles=n_angles, per_decade=per_decade, seeds=seeds, req=req)
    annuli = tuple(zip(e, e[1:]))
    per = tuple(sum(1 for p in poles if a < abs(p) <= b) for a, b in annuli)
    record = None
    if e[-1] / e[0] >= 1e3 and len(e) >= 3:
        inside = sum(1 for p in poles if abs(p) <= e[0])
        cum = np.cumsum((inside,) + per)
        record = growth_curve(lambda r, _m=dict(zip(e, cum)): _m[r], e)
    return PoleCensus(tuple(poles), annuli, per, record)
