"""Module descriptors, exp/log recursions, factorials, entire evaluation."""

import random

import pytest

from drinfeldtwist import errors
from drinfeldtwist.base import APoly, FieldSpec, KDomain, KElem
from drinfeldtwist.drinfeld import (
    AndersonModule,
    DrinfeldModule,
    EntireSeries,
    carlitz,
    carlitz_factorials,
    eval_entire,
    exp_coefficients,
    image_of,
    log_coefficients,
)
from drinfeldtwist.laurent import INF_VAL, LaurentNumber, agreement_valuation, embed_rational
from drinfeldtwist.ore import OrePolynomial

F2 = FieldSpec(2)
F3 = FieldSpec(3)
K2 = KDomain(F2)
K3 = KDomain(F3)


def test_carlitz_descriptor():
    C = carlitz(F2)
    assert C.rank == 1
    assert C.ore_t.scalar_coeff(0) == K2.theta
    assert C.ore_t.scalar_coeff(1) == K2.one
    assert C.ore_t.coeff(0) == ((K2.theta,),)


def test_image_of_carlitz_t2_plus_1():
    # C_{t²+1} over q=2: (θ²+1) + (θ²+θ)τ + τ²
    C = carlitz(F2)
    a = APoly(F2, (1, 0, 1))
    img = image_of(a, C)
    assert img.scalar_coeff(0) == K2.theta ** 2 + 1
    assert img.scalar_coeff(1) == K2.theta ** 2 + K2.theta
    assert img.scalar_coeff(2) == K2.one


def test_image_of_trivial():
    C = carlitz(F3)
    assert image_of(APoly.gen(F3), C) == C.ore_t
    assert image_of(APoly.one(F3), C) == OrePolynomial.identity(K3)


def test_image_of_is_ring_hom():
    rng = random.Random(3)
    C = carlitz(F3)
    M2 = DrinfeldModule(K3, (K3.theta, K3.one))  # a rank-2 module
    for M in (C, M2):
        for _ in range(4):
            a = APoly(F3, [rng.randrange(3) for _ in range(4)])
            b = APoly(F3, [rng.randrange(3) for _ in range(4)])
            assert image_of(a * b, M) == image_of(a, M) * image_of(b, M)
            assert image_of(a + b, M) == image_of(a, M) + image_of(b, M)


def test_anderson_nilpotency_check():
    # constant part θI + strictly upper triangular is fine
    t = K3.theta
    E = OrePolynomial(K3, 2, 2, [((t, K3.one), (K3.zero, t)),
                                 ((K3.one, K3.zero), (K3.zero, K3.one))])
    M = AndersonModule(K3, E)
    assert M.dim == 2
    # constant part with a non-theta diagonal entry must be rejected
    bad = OrePolynomial(K3, 2, 2, [((t, K3.zero), (K3.zero, t + 1)),
                                   ((K3.one, K3.zero), (K3.zero, K3.one))])
    with pytest.raises(ValueError):
        AndersonModule(K3, bad)


def test_carlitz_factorials_q2():
    br, d1, l1 = carlitz_factorials(F2, 1)
    t = APoly.gen(F2)
    assert br == t ** 2 + t
    assert d1 == t ** 2 + t
    assert l1 == t ** 2 + t


def test_carlitz_factorials_q3():
    t = APoly.gen(F3)
    br, d2, l2 = carlitz_factorials(F3, 2)
    assert br == t ** 9 - t
    assert l2 == (t ** 9 - t) * (t ** 3 - t)
    assert d2 == (t ** 9 - t) * (t ** 3 - t) ** 3


def test_carlitz_factorials_k0():
    br, d0, l0 = carlitz_factorials(F3, 0)
    assert br is None
    assert d0 == APoly.one(F3)
    assert l0 == APoly.one(F3)


def test_exp_coefficients_carlitz():
    C = carlitz(F2)
    es = exp_coefficients(C, 3)
    _, d1, _ = carlitz_factorials(F2, 1)
    _, d2, _ = carlitz_factorials(F2, 2)
    _, d3, _ = carlitz_factorials(F2, 3)
    assert es.coeff(0) == K2.one
    assert es.coeff(1) == KElem(APoly.one(F2), d1)
    assert es.coeff(2) == KElem(APoly.one(F2), d2)
    assert es.coeff(3) == KElem(APoly.one(F2), d3)


def test_log_coefficients_carlitz():
    C = carlitz(F3)
    ls = log_coefficients(C, 3)
    for k in range(4):
        _, _, lk = carlitz_factorials(F3, k)
        want = KElem(APoly.one(F3), lk)
        if k % 2:
            want = -want
        assert ls.coeff(k) == want


def _compose(a_coeffs, b_coeffs, dom, k_max):
    """(a∘b)_k = Σ a_i · b_j^{(i)} truncated: twisted series composition."""
    out = [dom.zero] * (k_max + 1)
    for i, ai in enumerate(a_coeffs[:k_max + 1]):
        for j, bj in enumerate(b_coeffs[:k_max + 1 - i]):
            out[i + j] = dom.add(out[i + j], dom.mul(ai, dom.twist(bj, i)))
    return out


def test_exp_log_formal_inverse():
    for spec in (F2, F3):
        dom = KDomain(spec)
        C = carlitz(spec)
        es = exp_coefficients(C, 6).coeffs
        ls = log_coefficients(C, 6).coeffs
        for comp in (_compose(es, ls, dom, 6), _compose(ls, es, dom, 6)):
            assert comp[0] == dom.one
            assert all(c == dom.zero for c in comp[1:])


def test_functional_equation_random_rank2():
    # φ_t ∘ exp = exp ∘ θ through τ-degree k_max as twisted series
    rng = random.Random(29)
    k_max = 4
    for _ in range(3):
        coeffs = []
        for i in range(2):
            c = KElem(APoly(F3, [rng.randrange(3) for _ in range(2)]))
            coeffs.append(c)
        if coeffs[-1].is_zero:
            coeffs[-1] = K3.one
        M = DrinfeldModule(K3, coeffs)
        es = exp_coefficients(M, k_max).coeffs
        phi = [K3.theta] + list(M.coeffs)
        lhs = _compose(phi, es, K3, k_max)
        rhs = _compose(es, [K3.theta], K3, k_max)
        assert lhs == rhs


def test_exp_characteristic_error():
    from drinfeldtwist.base import PrimeIdeal, ResidueField
    wp = PrimeIdeal(APoly(F2, (1, 1, 1)))
    F = ResidueField(wp)
    # theta-bar is algebraic: [k] vanishes once q^k ≡ 1 action repeats
    M = DrinfeldModule(F, (F.one,))
    with pytest.raises(errors.CharacteristicError):
        exp_coefficients(M, 4)


def test_eval_entire_identity_series():
    s = EntireSeries(K3, (K3.one,))
    x = embed_rational(KElem.theta(F3), 8)
    res = eval_entire(s, (x,), 0)
    assert res.values[0] == x


def test_eval_entire_carlitz_log_at_one():
    # 1 + 1/(θ²+θ) + 1/((θ⁴+θ)(θ²+θ)) over q=2
    C = carlitz(F2)
    ls = log_coefficients(C, 2)
    one = LaurentNumber.one(F2, 32)
    res = eval_entire(ls, (one,), 2)
    t = APoly.gen(F2)
    want = (KElem.one(F2) + KElem(APoly.one(F2), t ** 2 + t)
            + KElem(APoly.one(F2), (t ** 4 + t) * (t ** 2 + t)))
    assert agreement_valuation(res.values[0], embed_rational(want, 32)) > 24
    # the last added term has degree -(deg L_2) = -6
    assert res.tail_valuation == 6


def test_eval_entire_at_zero():
    C = carlitz(F3)
    ls = log_coefficients(C, 3)
    z = LaurentNumber.exact_zero(F3)
    res = eval_entire(ls, (z,), 3)
    assert res.values[0].is_exact_zero
    assert res.tail_valuation == INF_VAL


def test_eval_entire_divergence():
    # series with growing coefficients: c_k = θ^{4^k} against x = 1
    t = KElem.theta(F3)
    s = EntireSeries(K3, (K3.one, t ** 4, t ** 16))
    one = LaurentNumber.one(F3, 8)
    with pytest.raises(errors.DivergenceError):
        eval_entire(s, (one,), 2)
