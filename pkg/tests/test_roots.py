import numpy as np
import pytest

from qriccati.exact import CQ, Polynomial, Z
from qriccati.roots import aberth, roots


def as_set(rs):
    return {(r.exact, r.multiplicity) for r in rs}


def test_simple_roots():
    assert as_set(roots(Z**2 - 1)) == {(CQ(1), 1), (CQ(-1), 1)}


def test_double_root_is_clustered():
    assert as_set(roots((Z + 1) ** 2)) == {(CQ(-1), 2)}


def test_cubic_from_polynomial_example():
    assert as_set(roots(Z**3 + 6 * Z**2 + 9 * Z + 4)) == {(CQ(-1), 2), (CQ(-4), 1)}


def test_gaussian_rational_root_is_exact():
    rs = roots(Z**2 + 1)
    assert {r.exact for r in rs} == {CQ(0, 1), CQ(0, -1)}


def test_irrational_roots_have_no_exact_value():
    rs = roots(Z**2 - 2)
    assert all(r.exact is None for r in rs)
    assert sorted(r.value.real for r in rs) == pytest.approx([-2**0.5, 2**0.5])


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        roots(Polynomial())


def test_random_polynomials_against_numpy():
    rng = np.random.default_rng(7)
    for _ in range(50):
        deg = int(rng.integers(1, 13))
        # well separated roots on jittered circles
        base = np.exp(2j * np.pi * (np.arange(deg) + rng.uniform(0, 0.3, deg)) / deg)
        true = base * rng.uniform(0.5, 3.0, deg)
        coeffs = np.poly(true)[::-1]
        p = Polynomial(CQ.of(complex(c)) for c in coeffs)
        rs = roots(p)
        assert sum(r.multiplicity for r in rs) == deg
        vals = np.array([r.value for r in rs for _ in range(r.multiplicity)])
        lead = abs(complex(p.leading))
        assert max(abs(p.evaluate(v)) for v in vals) / lead <= 1e-8
        rebuilt = np.poly(vals)[::-1]
        monic = np.array(p.complex_coeffs) / complex(p.leading)
        assert np.max(np.abs(rebuilt - monic)) <= 1e-6 * np.max(np.abs(monic))
        assert np.allclose(np.sort_complex(vals), np.sort_complex(np.roots(coeffs[::-1])), atol=1e-8)


def test_aberth_linear_and_constant():
    assert aberth([2, 1]) == pytest.approx([-2])
    assert len(aberth([5])) == 0
