"""Polynomial roots with multiplicities.

Multiplicities come from an exact square-free decomposition, so the
floating-point stage only ever sees simple roots; each square-free factor is
solved by Aberth-Ehrlich simultaneous iteration.  Roots that are Gaussian
rationals are recognised and returned exactly as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import CQ, Polynomial, QRiccatiError, squarefree_decomposition

DEFAULT_TOL = 1e-8
MAX_ITER = 500


class RootFindingError(QRiccatiError, ArithmeticError):
    def __init__(self, message: str, residuals):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    exact: CQ | None = None


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    # c: ascending coefficients, c[-1] != 0
    n = len(c) - 1
    centre = -c[-2] / (n * c[-1])
    # Fujiwara bound on the root moduli.
    ratios = np.abs(c[:-1] / c[-1]) ** (1.0 / np.arange(n, 0, -1))
    radius = max(2.0 * ratios.max(), 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return centre + radius * np.exp(1j * angles)


def aberth(coeffs, *, max_iter: int = MAX_ITER) -> np.ndarray:
    """Simple roots of a polynomial given ascending complex coefficients."""
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.empty(0, dtype=complex)
    if n == 1:
        return np.array([-c[0] / c[1]])
    desc = c[::-1]
    ddesc = np.polyder(desc)
    absdesc = np.abs(desc)
    z = _initial_guesses(c)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        p = np.polyval(desc, z)
        dp = np.polyval(ddesc, z)
        bound = np.polyval(absdesc, np.abs(z)) * eps * 4 * n
        done = np.abs(p) <= bound
        if done.all():
            break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            w = ratio / (1.0 - ratio * s)
        w = np.where(done | ~np.isfinite(w), 0.0, w)
        z = z - w
        if np.all(np.abs(w) <= eps * np.maximum(1.0, np.abs(z))):
            break
    else:
        p = np.polyval(desc, z)
        bound = np.polyval(absdesc, np.abs(z)) * 1e-10
        if np.any(np.abs(p) > bound):
            raise RootFindingError("Aberth iteration did not converge", np.abs(p))
    # Two Newton polishing steps.
    for _ in range(2):
        dp = np.polyval(ddesc, z)
        step = np.where(dp != 0, np.polyval(desc, z) / np.where(dp != 0, dp, 1), 0)
        z = z - step
    return z


def _rationalize(x: float, max_den: int = 10**6) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def _exact_root(p: Polynomial, r: complex) -> CQ | None:
    cand = CQ(_rationalize(r.real), _rationalize(r.imag))
    if abs(complex(cand) - r) > 1e-6 * max(1.0, abs(r)):
        return None
    return cand if not p(cand) else None


def roots(p: Polynomial, tol: float = DEFAULT_TOL) -> list[Root]:
    """All roots of ``p`` with multiplicity (counted total equals the degree).

    Roots closer than ``tol * max(1, |root|)`` are merged into one cluster
    whose multiplicity is the sum; clusters are never split.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no finite root set")
    found: list[Root] = []
    for factor, mult in squarefree_decomposition(p):
        vals = aberth(factor.complex_coeffs)
        for v in vals:
            v = complex(v)
            ex = _exact_root(factor, v)
            if ex is not None:
                v = complex(ex)
            found.append(Root(v, mult, ex))
    return _cluster(found, tol)


def _cluster(found: list[Root], tol: float) -> list[Root]:
    clusters: list[list[Root]] = []
    for r in found:
        hits = [
            cl for cl in clusters
            if any(abs(r.value - s.value) <= tol * max(1.0, abs(r.value), abs(s.value)) for s in cl)
        ]
        merged = [r]
        for cl in hits:
            merged.extend(cl)
            clusters.remove(cl)
        clusters.append(merged)
    out = []
    for cl in clusters:
        mult = sum(r.multiplicity for r in cl)
        if len(cl) == 1:
            out.append(cl[0])
            continue
        centre = sum(r.value * r.multiplicity for r in cl) / mult
        exacts = {r.exact for r in cl}
        exact = exacts.pop() if len(exacts) == 1 else None
        out.append(Root(complex(exact) if exact is not None else centre, mult, exact))
    out.sort(key=lambda r: (abs(r.value), r.value.real, r.value.imag))
    return out
