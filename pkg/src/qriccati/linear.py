"""First-order linear q-difference equations.

Homogeneous equations ``h(qz) = a(z) h(z)`` with rational ``a`` are solved in
closed form: writing

    a(z) = c * prod(1 - z/alpha_i) / prod(1 - z/beta_j)

one solution is ``z**log_q(c) * prod gamma_q(z/alpha_i) / prod gamma_q(z/beta_j)``,
meromorphic exactly when ``q**n = c`` for some integer ``n``.

Rational solutions of ``A1(z) u(qz) + A0(z) u(z) + C(z) = 0`` are found by
an Abramov-style denominator bound followed by exact linear algebra.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .exact import (
    CQ,
    ONE,
    POLE,
    ZERO,
    MathDomainError,
    Polynomial,
    QRiccatiError,
    RationalFunction,
    Z,
    as_rational_function,
    format_polynomial,
    poly_gcd,
    solve_exact_linear_system,
)
from .qspecial import DEFAULT_REQUEST, EvalRequest, QBase, gamma_q_z, pole_distance_guard
from .roots import DEFAULT_TOL, Root, roots

LOG_TOL = 1e-8


class FactorizationError(QRiccatiError, ValueError):
    pass


@dataclass(frozen=True)
class LinearHomogeneousEq:
    """``h(qz) = a(z) h(z)``."""

    q: QBase
    a: RationalFunction

    def __post_init__(self):
        if self.a.is_zero:
            raise MathDomainError("coefficient a(z) must not vanish identically")


@dataclass(frozen=True)
class LinearFirstOrderEq:
    """``A1(z) u(qz) + A0(z) u(z) + C(z) = 0`` with polynomial coefficients."""

    q: QBase
    A1: Polynomial
    A0: Polynomial
    C: Polynomial = field(default_factory=Polynomial)

    def __post_init__(self):
        if self.A1.is_zero and self.A0.is_zero:
            raise MathDomainError("A1 and A0 are both zero")

    @property
    def homogeneous(self) -> bool:
        return self.C.is_zero

    def residual(self, u) -> RationalFunction:
        """Exact left-hand side after substituting ``u``."""
        u = as_rational_function(u)
        q = self.q.require_exact()
        return self.A1 * u.dilate(q) + self.A0 * u + self.C


# ---------------------------------------------------------------------------
# Integer logarithms


def integer_log(a, q, tol: float = LOG_TOL) -> int | None:
    """Integer ``m`` with ``q**m == a`` (within ``tol`` relative), else None.

    Matching moduli fixes the only candidate ``m``, so the search does not
    depend on a choice of logarithm branch.  When both ``a`` and ``q`` are
    exact the match is decided exactly.
    """
    qb = QBase.of(q)
    a_num = complex(a)
    if a_num == 0:
        raise MathDomainError("log_q(0) is undefined")
    m_real = math.log(abs(a_num)) / math.log(qb.modulus)
    m = round(m_real)
    if abs(m_real - m) > max(tol, 1e-12) * max(1.0, abs(m_real)):
        return None
    if isinstance(a, CQ) and qb.exact is not None:
        return m if qb.exact**m == a else None
    return m if abs(qb.num**m - a_num) <= tol * abs(a_num) else None


def principal_logq(a, q) -> complex:
    qb = QBase.of(q)
    return cmath.log(complex(a)) / cmath.log(qb.num)


@dataclass(frozen=True)
class ConstantCaseResult:
    solvable_in_rationals: bool
    exponent: int | None
    logq_principal: complex

    @property
    def witness(self) -> RationalFunction | None:
        if self.exponent is None:
            return None
        return RationalFunction(Z) ** self.exponent


def solve_constant_case(a, q, tol: float = LOG_TOL) -> ConstantCaseResult:
    """Decide whether ``h(qz) = a h(z)`` has a rational solution (``a`` constant)."""
    if isinstance(a, RationalFunction):
        a = a.constant_value()
    if complex(a) == 0:
        raise MathDomainError("a must be nonzero")
    m = integer_log(a, q, tol)
    return ConstantCaseResult(m is not None, m, principal_logq(a, q))


# ---------------------------------------------------------------------------
# Closed forms


@dataclass(frozen=True)
class Factorization:
    c: CQ
    alphas: tuple[Root, ...]
    betas: tuple[Root, ...]

    def expanded(self, which: str) -> tuple[complex, ...]:
        rs = self.alphas if which == "alphas" else self.betas
        return tuple(r.value for r in rs for _ in range(r.multiplicity))

    def reconstruct(self, z: complex) -> complex:
        val = complex(self.c)
        for r in self.alphas:
            val *= (1 - z / r.value) ** r.multiplicity
        for r in self.betas:
            val /= (1 - z / r.value) ** r.multiplicity
        return val


def factor_coefficient(a, tol: float = DEFAULT_TOL, *, seed: int = 0) -> Factorization:
    """Write ``a = c prod(1 - z/alpha) / prod(1 - z/beta)``.

    ``c = a(0)``; zeros/poles come from :func:`~qriccati.roots.roots`.  The
    factorization is checked against ``a`` at 20 random points.
    """
    a = as_rational_function(a)
    if a.is_constant:
        raise FactorizationError("constant coefficient: use solve_constant_case")
    if not a.num.coeff(0) or not a.den.coeff(0):
        raise FactorizationError("origin zero/pole: form (1.2) factorization undefined")
    c = a.num.coeff(0) / a.den.coeff(0)
    fac = Factorization(c, tuple(roots(a.num, tol)), tuple(roots(a.den, tol)))
    rng = random.Random(seed)
    scale = 1.0 + max((abs(r.value) for r in fac.alphas + fac.betas), default=1.0)
    checked = 0
    while checked < 20:
        z = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        exact = a.evaluate(z)
        if exact is POLE or abs(exact) == 0 or any(
            abs(z - r.value) < 1e-3 * scale for r in fac.alphas + fac.betas
        ):
            continue
        if abs(fac.reconstruct(z) - exact) > 1e-8 * abs(exact):
            raise FactorizationError("factorization failed its reconstruction check")
        checked += 1
    return fac


@dataclass(frozen=True)
class ClosedFormSolution:
    """``z**logq_c * prod gamma_q(z/alpha) / prod gamma_q(z/beta)``.

    ``alphas``/``betas`` list each root once per multiplicity.  ``exact_alphas``
    and ``exact_betas`` hold the Gaussian-rational value when there is one.
    """

    q: QBase
    c: complex
    logq_c: complex
    logq_c_is_integer: bool
    n0: int | None
    alphas: tuple[complex, ...]
    betas: tuple[complex, ...]
    exact_c: CQ | None = None
    exact_alphas: tuple[CQ | None, ...] = ()
    exact_betas: tuple[CQ | None, ...] = ()

    @property
    def meromorphic(self) -> bool:
        return self.logq_c_is_integer

    @property
    def branch_note(self) -> str:
        if self.meromorphic:
            return "meromorphic"
        return "not meromorphic (branch-dependent)"


def solve_homogeneous(eq: LinearHomogeneousEq, tol: float = LOG_TOL) -> ClosedFormSolution:
    if eq.a.is_constant:
        # h = z**log_q(a): no gamma_q factors at all
        fac = Factorization(eq.a.constant_value(), (), ())
    else:
        fac = factor_coefficient(eq.a)
    m = integer_log(fac.c, eq.q, tol)
    logq = complex(m) if m is not None else principal_logq(fac.c, eq.q)

    def expand(rs):
        vals = tuple(r.value for r in rs for _ in range(r.multiplicity))
        exact = tuple(r.exact for r in rs for _ in range(r.multiplicity))
        return vals, exact

    al, al_ex = expand(fac.alphas)
    be, be_ex = expand(fac.betas)
    return ClosedFormSolution(
        q=eq.q,
        c=complex(fac.c),
        logq_c=logq,
        logq_c_is_integer=m is not None,
        n0=m,
        alphas=al,
        betas=be,
        exact_c=fac.c,
        exact_alphas=al_ex,
        exact_betas=be_ex,
    )


def describe_closed_form(cf: ClosedFormSolution) -> str:
    """Readable form such as ``z^2*gamma_q(-5/2*z)/gamma_q(2*z)``."""

    def arg(value, exact):
        if exact is not None:
            return format_polynomial(Polynomial.monomial(1, ONE / exact))
        return f"z/({value:.12g})"

    top = [f"gamma_q({arg(v, e)})" for v, e in zip(cf.alphas, cf.exact_alphas or (None,) * len(cf.alphas))]
    bottom = [f"gamma_q({arg(v, e)})" for v, e in zip(cf.betas, cf.exact_betas or (None,) * len(cf.betas))]
    if cf.logq_c_is_integer:
        if cf.n0:
            top.insert(0, "z" if cf.n0 == 1 else f"z^{cf.n0}")
    else:
        top.insert(0, f"z^({cf.logq_c:.12g})")
    text = "*".join(top) or "1"
    if bottom:
        text += "/" + (bottom[0] if len(bottom) == 1 else "(" + "*".join(bottom) + ")")
    return text


def _lattice_hits(z: complex, centres, q: QBase, req: EvalRequest) -> int:
    """How many of ``centres`` put ``z`` within the guard of ``centre * q**(-k)``."""
    count = 0
    guard = pole_distance_guard(z, req)
    r = q.modulus
    for c in centres:
        w = z / c
        if w == 0:
            continue
        k0 = -math.log(abs(w)) / math.log(r)
        for k in range(max(0, math.floor(k0) - 1), max(0, math.ceil(k0) + 2)):
            if abs(z - c * q.num ** (-k)) <= guard:
                count += 1
                break
    return count


def _closed_form_raw(cf: ClosedFormSolution, z: complex, req: EvalRequest) -> complex:
    if cf.logq_c_is_integer:
        power = z ** cf.n0 if cf.n0 else 1.0
    else:
        power = cmath.exp(cf.logq_c * cmath.log(z)) if z != 0 else 0.0
    val = complex(power)
    for al in cf.alphas:
        val *= gamma_q_z(z / al, cf.q, _NO_GUARD)
    for be in cf.betas:
        val /= gamma_q_z(z / be, cf.q, _NO_GUARD)
    return val


_NO_GUARD = EvalRequest(eps=DEFAULT_REQUEST.eps, pole_guard=1e-300)


def eval_closed_form(cf: ClosedFormSolution, z, req: EvalRequest = DEFAULT_REQUEST):
    """Evaluate the closed form at ``z`` (principal branch when not meromorphic).

    Near a lattice point where numerator poles outnumber denominator poles
    the result is :data:`POLE`; where they balance, the removable value is
    taken as the average of two symmetric nearby evaluations.
    """
    cf.q.require_convergent()
    z = complex(z)
    req_eval = EvalRequest(eps=req.eps, pole_guard=1e-300)
    if z == 0:
        if cf.logq_c_is_integer and cf.n0 < 0:
            return POLE
        if cf.logq_c_is_integer and cf.n0 > 0:
            return 0j
        if not cf.logq_c_is_integer and cf.logq_c.real > 0:
            return 0j
        if not cf.logq_c_is_integer:
            return POLE
    net = _lattice_hits(z, cf.alphas, cf.q, req) - _lattice_hits(z, cf.betas, cf.q, req)
    hits_any = net != 0 or _lattice_hits(z, cf.alphas + cf.betas, cf.q, req) > 0
    if net > 0:
        return POLE
    if net < 0:
        return 0j
    if hits_any:
        d = 1e-6 * max(1.0, abs(z))
        return 0.5 * (
            _closed_form_raw(cf, z + d, req_eval) + _closed_form_raw(cf, z - d, req_eval)
        )
    return _closed_form_raw(cf, z, req_eval)


# ---------------------------------------------------------------------------
# Rational solutions


@dataclass(frozen=True)
class RationalSolutionSet:
    """Result of :func:`find_rational_solutions`.

    For a homogeneous equation ``homogeneous_basis`` spans the rational
    solutions (it has at most one element) and ``particular`` is None.  For
    an inhomogeneous one, every rational solution within the search bounds
    is ``particular + c * b`` for ``b`` in the basis.
    """

    particular: RationalFunction | None
    homogeneous_basis: tuple[RationalFunction, ...]
    denominator: Polynomial
    numerator_degree_bound: int
    completeness: str

    @property
    def solutions(self) -> list[RationalFunction]:
        if self.particular is None:
            return list(self.homogeneous_basis)
        return [self.particular]

    @property
    def has_homogeneous_basis(self) -> bool:
        return bool(self.homogeneous_basis)

    def member(self, c) -> RationalFunction:
        if self.particular is None and not self.homogeneous_basis:
            raise ValueError("no rational solution")
        out = self.particular if self.particular is not None else RationalFunction()
        if self.homogeneous_basis:
            out = out + self.homogeneous_basis[0] * CQ.of(c)
        return out


COMPLETENESS_NOTE = (
    "complete for denominators built from q-orbit shifts up to the stated depth "
    "and a power of z; numerator degree bounded by leading/trailing balance"
)


def _strip_z(p: Polynomial) -> Polynomial:
    v = p.valuation
    return p.shift_power(-v) if v > 0 else p


def universal_denominator(A1: Polynomial, A0: Polynomial, q: CQ, max_depth: int) -> Polynomial:
    """Denominator bound for rational solutions, ignoring the factor at z = 0.

    A nonzero pole orbit ``p, qp, ..., q**j p`` starts at a root of
    ``A1(z/q)`` and ends at a root of ``A0(z)``; collecting these chains for
    ``j <= max_depth`` gives a multiple of every admissible denominator.
    """
    P = _strip_z(A1.dilate(ONE / q))
    Q = _strip_z(A0)
    D = Polynomial((1,))
    if P.degree < 1 or Q.degree < 1:
        return D
    for j in range(max_depth, -1, -1):
        while True:
            g = poly_gcd(P, Q.dilate(q**j))
            if g.degree < 1:
                break
            P = P.exact_div(g)
            Q = Q.exact_div(g.dilate(q ** (-j)))
            for i in range(j + 1):
                D = D * g.dilate(q ** (-i))
    return D.monic()


def _balance_exponents(lead1: CQ, lead0: CQ, q: CQ) -> int | None:
    """Integer ``e`` with ``lead1 * q**e + lead0 == 0``."""
    if not lead1 or not lead0:
        return None
    return integer_log(-lead0 / lead1, q)


def _valuation_bound(A1, A0, C, q) -> int | None:
    """Lower bound on ord_0(u); None when no nonzero solution can exist."""
    v1, v0 = A1.valuation, A0.valuation
    cands = []
    if not C.is_zero:
        cands.append(C.valuation - min(v1, v0))
    if v1 == v0:
        # Lowest-order terms of A1 u(qz) and A0 u(z) may cancel each other.
        e = _balance_exponents(A1.coeff(v1), A0.coeff(v0), q)
        if e is not None:
            cands.append(e)
    return min(cands) if cands else None


def _infinity_bound(A1, A0, C, q) -> int | None:
    """Upper bound on deg(u) = deg num - deg den; None when impossible."""
    d1, d0 = A1.degree, A0.degree
    cands = []
    if not C.is_zero:
        cands.append(C.degree - max(d1, d0))
    if d1 == d0:
        e = _balance_exponents(A1.leading, A0.leading, q)
        if e is not None:
            cands.append(e)
    return max(cands) if cands else None


def find_rational_solutions(eq: LinearFirstOrderEq, max_extra_degree: int = 8) -> RationalSolutionSet:
    """Rational solutions of ``A1 u(qz) + A0 u(z) + C = 0``.

    Every returned function is re-verified by exact substitution.
    """
    q = eq.q.require_exact()
    A1, A0, C = eq.A1, eq.A0, eq.C
    empty = RationalSolutionSet(None, (), Polynomial((1,)), -1, COMPLETENESS_NOTE)

    # One coefficient identically zero: u is forced (or impossible).
    if A1.is_zero or A0.is_zero:
        return _degenerate(eq, empty)

    D = universal_denominator(A1, A0, q, max_extra_degree)
    vlow = _valuation_bound(A1, A0, C, q)
    dhigh = _infinity_bound(A1, A0, C, q)
    if vlow is None or dhigh is None:
        return empty
    k = max(0, -vlow)
    den = D.shift_power(k)
    nbound = dhigh + den.degree
    nlow = max(0, vlow + k)
    if nbound < nlow:
        return empty

    # A1 N(qz) D(z) + q^k A0 N(z) D(qz) + q^k z^k D(z) D(qz) C = 0, with
    # den = z^k D and u = N / den.
    Dq = den.dilate(q)
    t1 = A1 * den
    t0 = A0 * Dq
    unknown_powers = list(range(nlow, nbound + 1))
    columns = []
    for j in unknown_powers:
        col = (t1 * Polynomial.monomial(j, q**j)) + (t0 * Polynomial.monomial(j))
        columns.append(col)
    rhs_poly = -(C * den * Dq)
    n_eq = max([c.degree for c in columns] + [rhs_poly.degree, 0]) + 1
    rows = [[col.coeff(i) for col in columns] for i in range(n_eq)]
    rhs = [rhs_poly.coeff(i) for i in range(n_eq)]
    particular, basis = solve_exact_linear_system(rows, rhs)

    def build(vec) -> RationalFunction:
        num = Polynomial([ZERO] * nlow + list(vec))
        return RationalFunction(num, den)

    part = None
    if not C.is_zero and particular is not None:
        part = build(particular)
        if not eq.residual(part).is_zero:
            raise QRiccatiError("internal: particular solution failed verification")
    hom = []
    if C.is_zero or particular is not None:
        for vec in basis:
            u = build(vec)
            if u.is_zero:
                continue
            if not LinearFirstOrderEq(eq.q, A1, A0).residual(u).is_zero:
                raise QRiccatiError("internal: homogeneous solution failed verification")
            hom.append(_scale_canonical(u))
    return RationalSolutionSet(part, tuple(hom), den, nbound, COMPLETENESS_NOTE)


def _scale_canonical(u: RationalFunction) -> RationalFunction:
    lc = u.num.leading
    return u * (ONE / lc) if lc != ONE else u


def _degenerate(eq: LinearFirstOrderEq, empty: RationalSolutionSet) -> RationalSolutionSet:
    q = eq.q.require_exact()
    if eq.A1.is_zero:
        u = RationalFunction(-eq.C, eq.A0)
    else:
        u = RationalFunction(-eq.C, eq.A1).dilate(ONE / q)
    if eq.C.is_zero:
        # Only u = 0 satisfies A u = 0.
        return empty
    if not eq.residual(u).is_zero:
        return empty
    return RationalSolutionSet(u, (), u.den, u.num.degree, "exact: solution is forced")
