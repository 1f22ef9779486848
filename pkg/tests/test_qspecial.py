import cmath
import random

import pytest

from qriccati.exact import POLE, MathDomainError
from qriccati.qspecial import (
    EvalRequest,
    QBase,
    direct_product,
    gamma_q_pole_set,
    gamma_q_z,
    qgamma,
    qpochhammer_inf,
    truncation_index,
)

PANEL = ["1/2", "-1/2", "3/10", 0.2 + 0.3j]


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_qbase_validation():
    with pytest.raises(MathDomainError):
        QBase.of(0)
    with pytest.raises(MathDomainError):
        QBase.of(1)
    with pytest.raises(MathDomainError):
        QBase.of(1j)
    with pytest.raises(MathDomainError, match="convergence"):
        QBase.of(2).require_convergent()


def test_pochhammer_special_values():
    assert qpochhammer_inf(0, "1/2") == 1
    assert qpochhammer_inf(1, "1/2") == 0
    assert rel(qpochhammer_inf(0.5, "1/2"), direct_product(0.5, "1/2", 200)) <= 1e-12


def test_truncation_index_satisfies_its_bounds():
    q = QBase.of("7/10")
    for a in (0.01, 1, 2, 1.9 + 0.5j):
        n = truncation_index(a, q, 1e-12)
        assert abs(a) * 0.7**n / 0.3 <= 0.25e-12
        assert abs(a) * 0.7**n < 0.5


@pytest.mark.parametrize("q", PANEL)
def test_pochhammer_recursion(q):
    qb = QBase.of(q)
    rng = random.Random(1)
    for _ in range(50):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lhs = qpochhammer_inf(a, qb)
        rhs = (1 - a) * qpochhammer_inf(a * qb.num, qb)
        assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), 1e-300)


def test_tighter_eps_changes_little():
    rng = random.Random(2)
    for _ in range(40):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        q = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.3, 0.3))
        v12 = qpochhammer_inf(a, q, EvalRequest(eps=1e-12))
        v15 = qpochhammer_inf(a, q, EvalRequest(eps=1e-15))
        assert rel(v12, v15) <= 1e-11


def test_gamma_q_at_zero_and_pole():
    q = QBase.of("1/2")
    assert gamma_q_z(0, q) == pytest.approx(qpochhammer_inf(0.5, q))
    assert gamma_q_z(2, q) is POLE
    assert gamma_q_z(4 + 1e-12, q) is POLE


def test_gamma_q_functional_identity_sample():
    q = QBase.of("1/2")
    z = 0.3
    assert rel(gamma_q_z(0.15, q), (1 - z) * gamma_q_z(z, q)) <= 1e-12


@pytest.mark.parametrize("q", PANEL)
def test_gamma_q_functional_equation_panel(q):
    qb = QBase.of(q)
    rng = random.Random(3)
    poles = gamma_q_pole_set(qb, 10)
    worst, n = 0.0, 0
    while n < 1000:
        z = cmath.rect(2 * rng.random() ** 0.5, rng.uniform(-cmath.pi, cmath.pi))
        if any(abs(z - p) < 1e-6 for p in poles):
            continue
        g = gamma_q_z(z, qb)
        worst = max(worst, abs(gamma_q_z(qb.num * z, qb) - (1 - z) * g) / abs(g))
        n += 1
    assert worst <= 10 * 1e-12


def test_qgamma_values():
    q = QBase.of("1/2")
    assert abs(qgamma(1, q) - 1) <= 1e-12
    x = 2.5
    lhs = qgamma(x + 1, q)
    rhs = (1 - 0.5**x) / (1 - 0.5) * qgamma(x, q)
    assert rel(lhs, rhs) <= 1e-12
    assert qgamma(-1, q) is POLE


def test_pole_sets():
    assert gamma_q_pole_set("1/2", 5) == [1, 2, 4]
    assert gamma_q_pole_set("1/2", 0.5) == []
    assert gamma_q_pole_set("-1/2", 2) == [1, -2]
    for p in gamma_q_pole_set("-1/2", 20):
        assert gamma_q_z(p, "-1/2") is POLE
