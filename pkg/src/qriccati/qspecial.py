"""Numerical q-Pochhammer product, q-gamma and the scaled q-gamma ``gamma_q``.

``gamma_q(z) = (q; q)_inf / (z; q)_inf`` is the zero-free solution of
``h(qz) = (1 - z) h(z)`` with ``gamma_q(0) = (q; q)_inf``.  It is evaluated
from this product form only, never through ``Gamma_q`` and a complex
logarithm, so it is single-valued in ``z``.

Pole location.  The poles of ``gamma_q`` are the zeros of ``(z; q)_inf``,
i.e. the points ``z = q**(-k)`` for ``k >= 0`` (``1, 1/q, 1/q**2, ...``,
moving *outward* when ``|q| < 1``).  The statement "poles at ``{q**k}``"
that circulates with this definition disagrees with the product; this
module follows the product and :func:`gamma_q_pole_set` returns
``q**(-k)``.

Complex powers (``q**x`` and ``(1 - q)**(1 - x)`` in :func:`qgamma`) use the
principal branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .exact import CQ, POLE, MathDomainError


@dataclass(frozen=True)
class QBase:
    """The base ``q``; ``exact`` is kept when ``q`` is a Gaussian rational."""

    num: complex
    exact: CQ | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.num == 0:
            raise MathDomainError("q must be nonzero")
        if math.isclose(abs(self.num), 1.0, rel_tol=0, abs_tol=1e-15):
            raise MathDomainError("|q| = 1 is excluded")

    @classmethod
    def of(cls, q) -> "QBase":
        if isinstance(q, QBase):
            return q
        if isinstance(q, complex | float):
            return cls(complex(q))
        if isinstance(q, str):
            from .parsing import parse_scalar

            exact = parse_scalar(q)
        else:
            exact = CQ.of(q)
        if not exact:
            raise MathDomainError("q must be nonzero")
        return cls(complex(exact), exact)

    @property
    def modulus(self) -> float:
        return abs(self.num)

    def require_exact(self) -> CQ:
        if self.exact is None:
            raise MathDomainError("this operation needs an exact (Gaussian rational) q")
        return self.exact

    def require_convergent(self) -> None:
        if self.modulus >= 1:
            raise MathDomainError("base outside convergence region (|q| >= 1)")


@dataclass(frozen=True)
class EvalRequest:
    eps: float = 1e-12
    pole_guard: float = 1e-9

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.pole_guard <= 0:
            raise ValueError("pole_guard must be positive")


DEFAULT_REQUEST = EvalRequest()


def truncation_index(a: complex, q: QBase, eps: float) -> int:
    """Smallest N with ``|a| |q|^N / (1 - |q|) <= eps/4`` and ``|a q^N| < 1/2``."""
    r = q.modulus
    aa = abs(a)
    if aa == 0:
        return 0
    n = 0
    need = min(eps / 4 * (1 - r), 0.5)
    if aa > need:
        n = math.ceil(math.log(need / aa) / math.log(r))
    while aa * r**n > need:
        n += 1
    return max(n, 0)


def qpochhammer_inf(a, q, req: EvalRequest = DEFAULT_REQUEST) -> complex:
    """``(a; q)_inf = prod_{k>=0} (1 - a q^k)`` for ``|q| < 1``.

    The product is truncated after N factors and the tail is replaced by
    ``exp(-a q^N / (1 - q))``, the first-order term of its logarithm.
    """
    q = QBase.of(q)
    q.require_convergent()
    a = complex(a)
    n = truncation_index(a, q, req.eps)
    prod = 1 + 0j
    t = a
    qn = q.num
    for _ in range(n):
        prod *= 1 - t
        t *= qn
    # t == a q^N here
    return prod * cmath.exp(-t / (1 - qn))


def direct_product(a, q, n_terms: int) -> complex:
    """Plain truncated product with ``n_terms`` factors (reference only)."""
    a, qn = complex(a), complex(QBase.of(q).num)
    prod = 1 + 0j
    for k in range(n_terms):
        prod *= 1 - a * qn**k
    return prod


def _near_pole_index(z: complex, q: QBase, guard: float) -> int | None:
    """Return k if ``z`` is within ``guard`` of ``q**(-k)`` (k >= 0)."""
    if z == 0:
        return None
    r = q.modulus
    # |q^-k| = r^-k ~ |z|  =>  k ~ -log|z| / log r
    k0 = -math.log(abs(z)) / math.log(r)
    for k in range(max(0, math.floor(k0) - 1), max(0, math.ceil(k0) + 2)):
        if abs(z - q.num ** (-k)) <= guard:
            return k
    return None


def pole_distance_guard(z: complex, req: EvalRequest) -> float:
    return req.pole_guard * max(1.0, abs(z))


def gamma_q_z(z, q, req: EvalRequest = DEFAULT_REQUEST):
    """``gamma_q(z) = (q;q)_inf / (z;q)_inf``, or :data:`POLE`."""
    q = QBase.of(q)
    q.require_convergent()
    z = complex(z)
    if _near_pole_index(z, q, pole_distance_guard(z, req)) is not None:
        return POLE
    return qpochhammer_inf(q.num, q, req) / qpochhammer_inf(z, q, req)


def qgamma(x, q, req: EvalRequest = DEFAULT_REQUEST):
    """``Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^(1-x)`` (principal branch)."""
    q = QBase.of(q)
    q.require_convergent()
    x = complex(x)
    zx = cmath.exp(x * cmath.log(q.num))
    g = gamma_q_z(zx, q, req)
    if g is POLE:
        return POLE
    return g * cmath.exp((1 - x) * cmath.log(1 - q.num))


def gamma_q_pole_set(q, radius: float) -> list[complex]:
    """Poles ``q**(-k)`` of ``gamma_q`` with modulus at most ``radius``."""
    q = QBase.of(q)
    q.require_convergent()
    out = []
    k = 0
    inv = (1 / q.exact) if q.exact is not None else None
    while q.modulus ** (-k) <= radius * (1 + 1e-12):
        out.append(complex(inv**k) if inv is not None else q.num ** (-k))
        k += 1
    return out
