"""Exact polynomials and rational functions over the Gaussian rationals.

Coefficients are :class:`CQ` values (complex numbers whose real and imaginary
parts are :class:`fractions.Fraction`).  Every :class:`RationalFunction` is
kept in lowest terms with a monic denominator, so equality of functions is
plain structural equality.

The q-dilation ``f(z) -> f(qz)`` and the q-difference operator

    Delta_q f(z) = (f(qz) - f(z)) / ((q - 1) z)

are provided here because everything else in the package is built on them.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union


class Marker:
    """Sentinel for non-numeric evaluation outcomes."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name.upper()

    def __reduce__(self):
        return (_marker, (self.name,))


def _marker(name):
    return {"pole": POLE, "indeterminate": INDETERMINATE}[name]


POLE = Marker("pole")
INDETERMINATE = Marker("indeterminate")


def is_marker(value) -> bool:
    return isinstance(value, Marker)


class QRiccatiError(Exception):
    """Base class for errors raised by this package."""


class MathDomainError(QRiccatiError, ValueError):
    """Input outside the mathematical domain of an operation."""


# ---------------------------------------------------------------------------
# Gaussian rationals


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


class CQ:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("CQ is immutable")

    @classmethod
    def of(cls, x) -> "CQ":
        if isinstance(x, CQ):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, (numbers.Rational, float)):
            return cls(x, 0)
        if isinstance(x, str):
            return cls(Fraction(x), 0)
        raise TypeError(f"cannot convert {x!r} to CQ")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return CQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return CQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return CQ(self.re * o.re, 0)
        return CQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero")
        if not o.im:
            return CQ(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return CQ(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return CQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CQ":
        return CQ(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison / conversion -------------------------------------------
    def __eq__(self, other):
        o = _coerce_scalar(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"CQ({self})"

    def __str__(self):
        return format_scalar(self)


def _coerce_scalar(x):
    if isinstance(x, CQ):
        return x
    if isinstance(x, numbers.Rational):
        return CQ(x, 0)
    return NotImplemented


ZERO = CQ(0)
ONE = CQ(1)
I = CQ(0, 1)

Scalar = Union[CQ, int, Fraction]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(c: CQ) -> str:
    """Canonical text for an exact scalar, parseable by the expression grammar."""
    if not c.im:
        return _frac_str(c.re)
    if c.im == 1:
        im = "i"
    elif c.im == -1:
        im = "-i"
    else:
        im = f"{_frac_str(c.im)}*i"
    if not c.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{_frac_str(c.re)}{sign}{im}"


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Univariate polynomial in ``z``; coefficients in ascending powers.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable = ()):
        cs = [CQ.of(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([ZERO] * k + [CQ.of(c)])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-CQ.of(r), 1))
        return p

    # -- basic properties --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> CQ:
        return self.coeffs[-1] if self.coeffs else ZERO

    @property
    def valuation(self) -> int:
        """Order of vanishing at ``z = 0`` (``-1`` for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def coeff(self, k: int) -> CQ:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading
        if lc == ONE:
            return self
        return Polynomial(c / lc for c in self.coeffs)

    def scale(self, c) -> "Polynomial":
        c = CQ.of(c)
        return Polynomial(a * c for a in self.coeffs)

    def shift_power(self, k: int) -> "Polynomial":
        """Multiply by ``z**k`` (``k >= 0``) or divide exactly (``k < 0``)."""
        if k >= 0:
            return Polynomial([ZERO] * k + list(self.coeffs))
        if any(self.coeffs[: -k]):
            raise ValueError("polynomial not divisible by the requested power of z")
        return Polynomial(self.coeffs[-k:])

    def derivative(self) -> "Polynomial":
        return Polynomial(c * k for k, c in enumerate(self.coeffs) if k)

    def dilate(self, q) -> "Polynomial":
        """Return ``p(q z)``."""
        q = CQ.of(q)
        out, qk = [], ONE
        for c in self.coeffs:
            out.append(c * qk)
            qk = qk * q
        return Polynomial(out)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Polynomial((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = o.degree
        lc = o.leading
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            t = c / lc
            quot[k - dq] = t
            for j, b in enumerate(o.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - t * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    # -- evaluation --------------------------------------------------------
    def __call__(self, x):
        """Exact Horner evaluation at a scalar."""
        x = CQ.of(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @cached_property
    def complex_coeffs(self) -> tuple:
        return tuple(complex(c) for c in self.coeffs)

    def evaluate(self, z: complex) -> complex:
        """Floating-point Horner evaluation."""
        acc = 0j
        for c in reversed(self.complex_coeffs):
            acc = acc * z + c
        return acc

    # -- comparison / text -------------------------------------------------
    def __eq__(self, other):
        o = _coerce_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def _coerce_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (CQ, numbers.Rational)):
        return Polynomial((x,))
    return NotImplemented


Z = Polynomial((0, 1))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean remainder sequence (``gcd(0, 0) = 0``)."""
    a, b = a.monic(), b.monic()
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero or b.is_zero:
        return Polynomial()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic square-free factors with their multiplicities."""
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g.monic(), k))
        k += 1
    return out


def _term(c: CQ, k: int) -> str:
    """One signed term ``c*z^k``; the leading sign is always explicit."""
    if k == 0:
        mono = ""
    elif k == 1:
        mono = "z"
    else:
        mono = f"z^{k}"
    if c.im and c.re:
        body = f"({format_scalar(c)})"
        text = body if not mono else f"{body}*{mono}"
        return "+" + text
    neg = (c.re < 0) if not c.im else (c.im < 0)
    mag = -c if neg else c
    sign = "-" if neg else "+"
    if mono and mag == ONE:
        return sign + mono
    s = format_scalar(mag)
    return sign + (s if not mono else f"{s}*{mono}")


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    text = "".join(_term(c, k) for k, c in enumerate(p.coeffs) if c)
    return text[1:] if text.startswith("+") else text


# ---------------------------------------------------------------------------
# Rational functions


class RationalFunction:
    """Reduced quotient ``num/den`` with monic denominator.

    The zero function is ``0/1``.  Instances are immutable; construct them
    through :func:`normalize` or the arithmetic operators.
    """

    __slots__ = ("num", "den", "__dict__")

    def __init__(self, num=0, den=1):
        n, d = _coerce_poly(num), _coerce_poly(den)
        if n is NotImplemented or d is NotImplemented:
            raise TypeError("RationalFunction needs polynomial or scalar parts")
        if d.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if n.is_zero:
            n, d = Polynomial(), Polynomial((1,))
        elif d.degree > 0:
            g = poly_gcd(n, d)
            if g.degree > 0:
                n, d = n.exact_div(g), d.exact_div(g)
        lc = d.leading
        if lc != ONE:
            n = n.scale(ONE / lc)
            d = d.monic()
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def _coprime(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        # Skips the gcd; caller guarantees num and den are already coprime.
        self = object.__new__(cls)
        lc = den.leading
        if lc != ONE:
            num, den = num.scale(ONE / lc), den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(Polynomial((c,)))

    # -- properties --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def degree(self) -> int:
        """Degree as a map of the sphere: ``max(deg num, deg den)``."""
        return max(self.num.degree, self.den.degree, 0)

    @property
    def order_at_infinity(self) -> int:
        """``deg den - deg num``; positive when ``f -> 0`` as ``z -> oo``."""
        if self.is_zero:
            raise ValueError("zero function has no finite order at infinity")
        return self.den.degree - self.num.degree

    def constant_value(self) -> CQ:
        if not self.is_constant:
            raise ValueError("not a constant function")
        return self.num.coeff(0)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._coprime(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_constant:
            c = o.num.coeff(0)
            if not c:
                return RationalFunction()
            return RationalFunction._coprime(self.num.scale(c), self.den)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        return self * RationalFunction._coprime(o.den, o.num)

    def __rtruediv__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("division by zero polynomial")
            return RationalFunction._coprime(self.den ** (-n), self.num ** (-n))
        return RationalFunction._coprime(self.num ** n, self.den ** n)

    def dilate(self, q) -> "RationalFunction":
        return RationalFunction._coprime(self.num.dilate(q), self.den.dilate(q))

    # -- evaluation --------------------------------------------------------
    def __call__(self, x):
        """Exact value at a scalar, or :data:`POLE`."""
        d = self.den(x)
        if not d:
            return POLE
        return self.num(x) / d

    def evaluate(self, z: complex):
        d = self.den.evaluate(z)
        if d == 0:
            return POLE
        return self.num.evaluate(z) / d

    # -- comparison / text -------------------------------------------------
    def __eq__(self, other):
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rational_function(self)


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction._coprime(x, Polynomial((1,))) if not x.is_zero else RationalFunction()
    if isinstance(x, (CQ, numbers.Rational)):
        return RationalFunction(Polynomial((x,)))
    return NotImplemented


def as_rational_function(x) -> RationalFunction:
    r = _coerce_rf(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


def format_rational_function(f: RationalFunction) -> str:
    """Canonical printer.

    The denominator is rescaled to constant term 1 when it does not vanish at
    the origin (the ``c*(1 - z/alpha)...`` reading); otherwise it stays monic.
    """
    num, den = f.num, f.den
    if den.degree == 0:
        return format_polynomial(num)
    c0 = den.coeff(0)
    if c0:
        num, den = num.scale(ONE / c0), den.scale(ONE / c0)
    ns = format_polynomial(num)
    if len([c for c in num.coeffs if c]) > 1 or "/" in ns:
        ns = f"({ns})"
    return f"{ns}/({format_polynomial(den)})"


# ---------------------------------------------------------------------------
# Operations


def normalize(num, den) -> RationalFunction:
    """Reduce ``num/den`` to lowest terms with a monic denominator."""
    d = _coerce_poly(den)
    if d is NotImplemented:
        raise TypeError("denominator must be a polynomial or scalar")
    if d.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    return RationalFunction(num, d)


def q_dilate(f, q) -> RationalFunction:
    """``f(qz)`` as a reduced rational function."""
    q = CQ.of(q)
    if not q:
        raise MathDomainError("degenerate dilation")
    return as_rational_function(f).dilate(q)


def delta_q(f, q) -> RationalFunction:
    """Jackson q-difference ``(f(qz) - f(z)) / ((q - 1) z)``."""
    q = CQ.of(q)
    if q == ZERO or q == ONE:
        raise MathDomainError("Δ_q undefined for q in {0, 1}")
    f = as_rational_function(f)
    diff = f.dilate(q) - f
    return diff / RationalFunction(Z.scale(q - 1))


def delta_q_iter(f, q, n: int) -> RationalFunction:
    if n < 1:
        raise ValueError("n must be a positive integer")
    out = as_rational_function(f)
    for _ in range(n):
        out = delta_q(out, q)
    return out


def evaluate(f, z: complex):
    """Floating-point value of ``f`` at ``z``; :data:`POLE` where the
    denominator vanishes."""
    return as_rational_function(f).evaluate(complex(z))


def z_rf() -> RationalFunction:
    return RationalFunction(Z)


def solve_exact_linear_system(
    rows: Sequence[Sequence[CQ]], rhs: Sequence[CQ] | None = None
) -> tuple[list[CQ] | None, list[list[CQ]]]:
    """Gauss-Jordan elimination over the Gaussian rationals.

    Returns ``(particular, nullspace_basis)``.  ``particular`` is ``None``
    when the system is inconsistent; for a homogeneous system it is the zero
    vector.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rhs = [ZERO] * n_rows if rhs is None else [CQ.of(b) for b in rhs]
    m = [[CQ.of(x) for x in row] + [b] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][n_cols]:
            particular = None
            break
    else:
        particular = [ZERO] * n_cols
        for i, c in enumerate(pivots):
            particular[c] = m[i][n_cols]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n_cols
        v[fc] = ONE
        for i, c in enumerate(pivots):
            v[c] = -m[i][fc]
        basis.append(v)
    return particular, basis
