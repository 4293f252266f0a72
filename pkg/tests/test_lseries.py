"""Reduction at primes, Frobenius characteristic polynomials, local factors,
Goss and character L-series, and the brute-force structure oracle."""

import pytest

from drinfeldtwist import (
    APoly,
    DrinfeldModule,
    FieldSpec,
    KDomain,
    KElem,
    LaurentNumber,
    PrimeIdeal,
    agreement_valuation,
    carlitz,
    embed_rational,
    power_residue_symbol,
)
from drinfeldtwist.errors import (
    BadPrimeError,
    ConvergenceError,
    DescentError,
    ReducibleError,
)
from drinfeldtwist.examples import s3_configuration, torsion_character_configuration
from drinfeldtwist.lseries import (
    BadPrimeSet,
    CyclotomicCharacter,
    PowerResidueCharacter,
    character_L,
    character_values,
    constant_eigenvalue_data,
    detect_bad_primes,
    dual_eigenvalue,
    frobenius_charpoly,
    goss_L,
    local_factor,
    module_structure_oracle,
    norm_factored_L,
    prime_factors,
    reduce_module,
)
from drinfeldtwist.base import ExtConstField, enumerate_monic_irreducibles
from drinfeldtwist.twist import (
    average_solution,
    clear_denominators,
    companion_matrices,
    f_vector,
    twist_model,
)


SPEC2 = FieldSpec(2)
SPEC3 = FieldSpec(3)
SPEC5 = FieldSpec(5)


def theta(spec):
    return APoly.gen(spec)


def power_twist(spec=SPEC3):
    # E_t = theta + theta*tau: the n=2, f=theta twist of the base module
    return DrinfeldModule(KDomain(spec), (KElem.theta(spec),))


def integral_twist(sol, spec):
    fv = f_vector(sol)
    _, psi = companion_matrices(fv)
    cleared, _ = clear_denominators(twist_model(carlitz(spec), psi))
    return cleared, fv


@pytest.fixture(scope="module")
def s3_integral():
    cfg = s3_configuration()
    sol = average_solution(cfg.rho, cfg.act, cfg.y)
    return integral_twist(sol, SPEC5)


@pytest.fixture(scope="module")
def torsion_integral():
    cfg = torsion_character_configuration()
    return integral_twist(cfg.solution, SPEC2)


def direct_zeta_sum(spec, deg_max, prec):
    """Sum of 1/a over monic a of degree <= deg_max, the term-side oracle."""
    q = spec.size
    total = LaurentNumber.one(spec, prec)
    for d in range(1, deg_max + 1):
        for code in range(q ** d, 2 * q ** d):
            total = total + embed_rational(
                KElem.one(spec) / KElem(APoly.from_code(spec, code)), prec)
    return total


class TestPrimeFactors:
    def test_square(self):
        th = theta(SPEC2)
        assert prime_factors(th * th + 1) == [PrimeIdeal(th + 1)]

    def test_three_factors(self):
        th = theta(SPEC2)
        a = th * (th + 1) * (th * th + th + 1)
        assert prime_factors(a) == [
            PrimeIdeal(th), PrimeIdeal(th + 1), PrimeIdeal(th * th + th + 1)]

    def test_irreducible_survives(self):
        th = theta(SPEC3)
        a = th ** 4 + th + 2
        got = prime_factors(a)
        assert got == [PrimeIdeal(a)]

    def test_constant(self):
        assert prime_factors(APoly.const(SPEC5, 3)) == []

    def test_zero(self):
        with pytest.raises(ValueError):
            prime_factors(APoly.zero(SPEC2))


class TestDetectBadPrimes:
    def test_carlitz_clean(self):
        assert len(detect_bad_primes(carlitz(SPEC2))) == 0

    def test_power_twist_leading(self):
        bad = detect_bad_primes(power_twist())
        wp = PrimeIdeal(theta(SPEC3))
        assert bad.primes() == [wp]
        assert bad.reason(wp) == "leading-singular"

    def test_s3_leading_divisors(self, s3_integral):
        module, fv = s3_integral
        bad = detect_bad_primes(module)
        assert bad.primes() == prime_factors(fv.f0.num)
        assert all(bad.reason(wp) == "leading-singular" for wp in bad)

    def test_k_model_denominators(self, s3_integral):
        _, fv = s3_integral
        _, psi = companion_matrices(fv)
        kmodel = twist_model(carlitz(SPEC5), psi)
        bad = detect_bad_primes(kmodel)
        assert bad.primes() == prime_factors(fv.f0.num)
        assert all(bad.reason(wp) == "denominator" for wp in bad)

    def test_ramified_passthrough(self):
        wp = PrimeIdeal(theta(SPEC2) + 1)
        bad = detect_bad_primes(carlitz(SPEC2), ramified=[wp])
        assert wp in bad and bad.reason(wp) == "ramified"

    def test_union(self):
        a = BadPrimeSet([(PrimeIdeal(theta(SPEC2)), "denominator")])
        b = BadPrimeSet([(PrimeIdeal(theta(SPEC2) + 1), "ramified")])
        assert len(a.union(b)) == 2


class TestReduceModule:
    def test_carlitz_reduction(self):
        wp = PrimeIdeal(theta(SPEC2) ** 2 + theta(SPEC2) + 1)
        red = reduce_module(carlitz(SPEC2), wp)
        F = red.field
        assert red.ore_t.coeff(0)[0][0] == F.theta_raw
        assert red.ore_t.coeff(1)[0][0] == F.one
        assert (red.rank, red.dim) == (1, 1)

    def test_power_twist_reduction(self):
        wp = PrimeIdeal(theta(SPEC3) + 1)
        red = reduce_module(power_twist(), wp)
        F = red.field
        assert red.ore_t.coeff(1)[0][0] == F.reduce_apoly(theta(SPEC3))
        assert F.in_base(red.ore_t.coeff(1)[0][0]) == 2

    def test_bad_leading(self):
        with pytest.raises(BadPrimeError):
            reduce_module(power_twist(), PrimeIdeal(theta(SPEC3)))

    def test_bad_denominator(self, s3_integral):
        _, fv = s3_integral
        _, psi = companion_matrices(fv)
        kmodel = twist_model(carlitz(SPEC5), psi)
        wp = prime_factors(fv.f0.num)[0]
        with pytest.raises(BadPrimeError):
            reduce_module(kmodel, wp)

    def test_shape_preserved(self, s3_integral):
        module, _ = s3_integral
        red = reduce_module(module, PrimeIdeal(theta(SPEC5)))
        assert (red.dim, red.rank) == (2, 1)


class TestFrobeniusCharpoly:
    @pytest.mark.parametrize("spec", [SPEC2, SPEC3])
    def test_carlitz_law(self, spec):
        module = carlitz(spec)
        for wp in enumerate_monic_irreducibles(spec, 4):
            cp = frobenius_charpoly(reduce_module(module, wp))
            assert cp.coefficients == (-wp.generator, APoly.one(spec))
            assert cp.unit == spec.neg(spec.one)

    def test_power_twist_value(self):
        wp = PrimeIdeal(theta(SPEC3) + 1)
        cp = frobenius_charpoly(reduce_module(power_twist(), wp))
        assert cp.coefficients == (wp.generator, APoly.one(SPEC3))
        assert cp.unit == SPEC3.one

    def test_power_twist_symbol_law(self):
        module = power_twist()
        f = theta(SPEC3)
        for wp in enumerate_monic_irreducibles(SPEC3, 3):
            if (f % wp.generator).is_zero:
                continue
            chi = power_residue_symbol(f, wp, 2)
            cp = frobenius_charpoly(reduce_module(module, wp))
            expected = wp.generator.scale(SPEC3.neg(SPEC3.inv(chi)))
            assert cp.coefficients == (expected, APoly.one(SPEC3))

    def test_rank_two_base(self):
        one = KElem.one(SPEC2)
        module = DrinfeldModule(KDomain(SPEC2), (one, one))
        cp = frobenius_charpoly(reduce_module(module, PrimeIdeal(theta(SPEC2))))
        # hand computation: T = [[0, t], [1, 1]], P = X^2 + X + t
        assert cp.coefficients == (
            theta(SPEC2), APoly.one(SPEC2), APoly.one(SPEC2))
        assert cp.unit == SPEC2.one

    def test_dim_two_descent(self, s3_integral):
        module, _ = s3_integral
        bad = detect_bad_primes(module)
        for wp in enumerate_monic_irreducibles(SPEC5, 2):
            if wp in bad:
                continue
            cp = frobenius_charpoly(reduce_module(module, wp))
            assert cp.x_degree == 2
            assert cp.p_zero().monic() == wp.generator ** 2

    def test_reciprocal_readout(self):
        wp = PrimeIdeal(theta(SPEC2))
        cp = frobenius_charpoly(reduce_module(carlitz(SPEC2), wp))
        assert cp.reciprocal_coefficients == tuple(reversed(cp.coefficients))


class TestLocalFactor:
    def test_carlitz_theta_zeta_tail(self):
        cp = frobenius_charpoly(
            reduce_module(carlitz(SPEC2), PrimeIdeal(theta(SPEC2))))
        lf = local_factor(cp, 0, prec=16)
        for k in range(6):
            assert lf.coeff_at(-k) == 1

    @pytest.mark.parametrize("s", [0, 1, 2])
    def test_carlitz_closed_form(self, s):
        for wp in enumerate_monic_irreducibles(SPEC3, 2):
            cp = frobenius_charpoly(reduce_module(carlitz(SPEC3), wp))
            g = KElem(wp.generator) ** (s + 1)
            expected = embed_rational(g / (g - KElem.one(SPEC3)), 64)
            assert local_factor(cp, s) == expected

    def test_power_twist_value(self):
        wp = PrimeIdeal(theta(SPEC3) + 1)
        cp = frobenius_charpoly(reduce_module(power_twist(), wp))
        num = KElem(theta(SPEC3) + 1)
        den = KElem(theta(SPEC3) + 2)
        assert local_factor(cp, 0) == embed_rational(num / den, 64)

    def test_one_unit_property(self):
        for wp in enumerate_monic_irreducibles(SPEC2, 3):
            cp = frobenius_charpoly(reduce_module(carlitz(SPEC2), wp))
            sgn, top, _ = local_factor(cp, 0).sign_decompose()
            assert (sgn, top) == (SPEC2.one, 0)

    def test_divergent_exponent(self):
        cp = frobenius_charpoly(
            reduce_module(carlitz(SPEC2), PrimeIdeal(theta(SPEC2))))
        with pytest.raises(ConvergenceError):
            local_factor(cp, -1)


class TestGossL:
    @pytest.mark.parametrize("spec,deg_max", [(SPEC2, 5), (SPEC3, 4)])
    def test_carlitz_vs_direct_sum(self, spec, deg_max):
        value, bad = goss_L(carlitz(spec), 0, deg_max, prec=32)
        assert len(bad) == 0
        oracle = direct_zeta_sum(spec, deg_max, 32)
        assert agreement_valuation(value, oracle) >= deg_max + 1

    def test_empty_product(self):
        value, bad = goss_L(carlitz(SPEC2), 0, 0)
        assert value == LaurentNumber.one(SPEC2) and len(bad) == 0

    def test_power_twist_is_character_product(self):
        value, bad = goss_L(power_twist(), 0, 5, prec=48)
        assert bad.primes() == [PrimeIdeal(theta(SPEC3))]
        chi = PowerResidueCharacter(theta(SPEC3), 2)
        assert value == character_L(chi, 1, 5, method="euler", prec=48)

    def test_collect_hook(self):
        rows = []
        goss_L(carlitz(SPEC2), 0, 2, prec=16, collect=rows)
        assert [wp.generator.degree for wp, _, _ in rows] == [1, 1, 2]


class TestCharacterL:
    def test_trivial_character_is_zeta(self):
        chi = PowerResidueCharacter(APoly.one(SPEC2), 1)
        value = character_L(chi, 1, 4, method="dirichlet", prec=32)
        assert agreement_valuation(value, direct_zeta_sum(SPEC2, 4, 32)) >= 32

    def test_quadratic_symbol_values(self):
        chi = PowerResidueCharacter(theta(SPEC3), 2)
        assert chi.value_at_prime(PrimeIdeal(theta(SPEC3) + 1)) == 2
        assert chi.value_at_prime(PrimeIdeal(theta(SPEC3))) is None

    def test_euler_dirichlet_agreement_quadratic(self):
        chi = PowerResidueCharacter(theta(SPEC3), 2)
        e = character_L(chi, 1, 5, method="euler", prec=32)
        d = character_L(chi, 1, 5, method="dirichlet", prec=32)
        assert agreement_valuation(e, d) >= 5

    def test_cyclotomic_values(self):
        f = theta(SPEC2) ** 2 + theta(SPEC2) + 1
        chi = CyclotomicCharacter(f)
        assert chi.field.d == 2
        assert chi.value_at_prime(PrimeIdeal(theta(SPEC2))) == 2
        assert chi.value_at_prime(PrimeIdeal(theta(SPEC2) + 1)) == 3
        assert chi.value_at_prime(PrimeIdeal(f)) is None

    def test_euler_dirichlet_agreement_cyclotomic(self):
        chi = CyclotomicCharacter(theta(SPEC2) ** 2 + theta(SPEC2) + 1)
        e = character_L(chi, 1, 5, method="euler", prec=32)
        d = character_L(chi, 1, 5, method="dirichlet", prec=32)
        assert agreement_valuation(e, d) >= 5

    def test_reducible_conductor_refused(self):
        with pytest.raises(ReducibleError):
            CyclotomicCharacter(theta(SPEC2) ** 2 + 1)

    def test_degree_one_cyclotomic(self):
        chi = CyclotomicCharacter(theta(SPEC3) + 1)
        # xi = -1; chi(a) = a(-1)
        assert chi.value(theta(SPEC3) ** 2) == 1
        assert chi.value(theta(SPEC3) + 1) is None

    def test_values_multiplicative(self):
        chi = PowerResidueCharacter(theta(SPEC3), 2)
        vals = character_values(chi, 4)
        for acode in range(3, 9):
            for bcode in range(3, 9):
                a, b = APoly.from_code(SPEC3, acode), APoly.from_code(SPEC3, bcode)
                if not (a.is_monic and b.is_monic):
                    continue
                ab = (a * b).code
                if acode in vals and bcode in vals:
                    assert vals[ab] == SPEC3.mul(vals[acode], vals[bcode])
                else:
                    assert ab not in vals

    def test_conductor_multiples_skipped(self):
        chi = PowerResidueCharacter(theta(SPEC3), 2)
        vals = character_values(chi, 3)
        assert theta(SPEC3).code not in vals
        assert (theta(SPEC3) * (theta(SPEC3) + 1)).code not in vals

    def test_bad_method(self):
        chi = PowerResidueCharacter(APoly.one(SPEC2), 1)
        with pytest.raises(ValueError):
            character_L(chi, 1, 2, method="mellin")

    def test_trivial_character_euler_pole_at_zero(self):
        chi = PowerResidueCharacter(APoly.one(SPEC2), 1)
        with pytest.raises(ConvergenceError):
            character_L(chi, 0, 2, method="euler")


class TestModuleOracle:
    def test_carlitz_q2(self):
        wp = PrimeIdeal(theta(SPEC2) ** 2 + theta(SPEC2) + 1)
        lie, point = module_structure_oracle(reduce_module(carlitz(SPEC2), wp))
        assert lie == wp.generator
        assert point == wp.generator + 1

    def test_carlitz_q3_degree_one(self):
        wp = PrimeIdeal(theta(SPEC3))
        lie, point = module_structure_oracle(reduce_module(carlitz(SPEC3), wp))
        assert lie == wp.generator
        assert point == wp.generator - 1

    def test_power_twist_point_bracket(self):
        wp = PrimeIdeal(theta(SPEC3) + 1)
        _, point = module_structure_oracle(reduce_module(power_twist(), wp))
        assert point == theta(SPEC3) + 2

    def test_lie_is_prime_power(self, s3_integral):
        module, _ = s3_integral
        bad = detect_bad_primes(module)
        for wp in enumerate_monic_irreducibles(SPEC5, 1):
            if wp in bad:
                continue
            lie, _ = module_structure_oracle(reduce_module(module, wp))
            assert lie == wp.generator ** 2

    def test_rank_two_oracle(self):
        one = KElem.one(SPEC2)
        module = DrinfeldModule(KDomain(SPEC2), (one, one))
        wp = PrimeIdeal(theta(SPEC2))
        red = reduce_module(module, wp)
        cp = frobenius_charpoly(red)
        lie, point = module_structure_oracle(red)
        assert cp.p_zero().monic() == lie
        assert cp.p_one().monic() == point

    def test_charpoly_matches_oracle(self, s3_integral, torsion_integral):
        cases = [
            (carlitz(SPEC2), SPEC2),
            (carlitz(SPEC3), SPEC3),
            (power_twist(), SPEC3),
            (s3_integral[0], SPEC5),
            (torsion_integral[0], SPEC2),
        ]
        for module, spec in cases:
            bad = detect_bad_primes(module)
            for wp in enumerate_monic_irreducibles(spec, 2):
                if wp in bad:
                    continue
                red = reduce_module(module, wp)
                cp = frobenius_charpoly(red)
                lie, point = module_structure_oracle(red)
                assert cp.p_zero().monic() == lie
                assert cp.p_one().monic() == point


class TestNormFactoredL:
    def test_unipotent_prime(self, torsion_integral):
        module, _ = torsion_integral
        cp = frobenius_charpoly(reduce_module(module, PrimeIdeal(theta(SPEC2))))
        assert constant_eigenvalue_data(cp) == (0, 1)
        assert dual_eigenvalue(cp, ExtConstField(SPEC2, 2)) == 1

    def test_eigenvalues_constant_everywhere(self, torsion_integral):
        module, _ = torsion_integral
        bad = detect_bad_primes(module)
        ext = ExtConstField(SPEC2, 2)
        seen = set()
        for wp in enumerate_monic_irreducibles(SPEC2, 4):
            if wp in bad:
                continue
            cp = frobenius_charpoly(reduce_module(module, wp))
            beta = dual_eigenvalue(cp, ext)
            tr, det = constant_eigenvalue_data(cp)
            assert ext.add(ext.mul(beta, ext.sub(beta, ext.embed(tr))),
                           ext.embed(det)) == ext.zero
            seen.add(beta)
        assert 1 in seen

    def test_factorization_matches_goss(self, torsion_integral):
        module, _ = torsion_integral
        lhs, bad = goss_L(module, 0, 6, prec=32)
        rhs, bad2 = norm_factored_L(module, 0, 6, prec=32)
        assert bad.primes() == bad2.primes()
        assert bad.primes() == [PrimeIdeal(theta(SPEC2) + 1)]
        assert agreement_valuation(lhs, rhs) >= 7

    def test_shape_guard(self):
        cp = frobenius_charpoly(
            reduce_module(carlitz(SPEC2), PrimeIdeal(theta(SPEC2))))
        with pytest.raises(DescentError):
            constant_eigenvalue_data(cp)
