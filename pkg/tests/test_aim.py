import math

import numpy as np
import pytest
from scipy.optimize import brentq

from drsbound.aim import (
    AimError,
    AimProblem,
    Jet,
    aim_delta,
    aim_exact_angular,
    aim_exact_kratzer,
    aim_series,
    angular_problem,
    find_eigenvalue,
    general_eigenfunction,
    kratzer_radial_problem,
    normal_form_sigma_rho,
    oscillator_radial_problem,
)
from drsbound.specfun import PoleError, pochhammer


def poly_to_jet(coeffs_low, x0, order):
    """Taylor jet of a polynomial (coefficients lowest first) at x0."""
    p = np.polynomial.Polynomial(coeffs_low)
    c = []
    for i in range(order + 1):
        c.append(p(x0) / math.factorial(i))
        p = p.deriv()
    return Jet(np.array(c, dtype=complex), x0)


class TestJetArithmetic:
    def test_ring_laws_against_polynomials(self):
        rng = np.random.default_rng(17)
        x0, order = 0.7, 8
        for _ in range(10):
            pu = rng.uniform(-2, 2, size=4)
            pv = rng.uniform(-2, 2, size=4)
            u = poly_to_jet(pu, x0, order)
            v = poly_to_jet(pv, x0, order)
            p_sum = np.polynomial.Polynomial(pu) + np.polynomial.Polynomial(pv)
            p_prod = np.polynomial.Polynomial(pu) * np.polynomial.Polynomial(pv)
            np.testing.assert_allclose(
                (u + v).coeffs, poly_to_jet(p_sum.coef, x0, order).coeffs, atol=1e-12
            )
            np.testing.assert_allclose(
                (u * v).coeffs, poly_to_jet(p_prod.coef, x0, order).coeffs, atol=1e-12
            )
            np.testing.assert_allclose(
                u.deriv().coeffs[:-1],
                poly_to_jet(np.polynomial.Polynomial(pu).deriv().coef, x0, order).coeffs[:-1],
                atol=1e-12,
            )

    def test_division_inverts_multiplication(self):
        x = Jet.variable(0.5, 10)
        expr = (1.0 + x * x) / (2.0 - x)
        back = expr * (2.0 - x)
        np.testing.assert_allclose(back.coeffs, (1.0 + x * x).coeffs, atol=1e-13)

    def test_division_by_vanishing_jet_rejected(self):
        x = Jet.variable(0.0, 5)
        with pytest.raises(ZeroDivisionError):
            (1.0 + x) / x


class TestRecurrenceIdentity:
    def test_jets_match_symbolic_differentiation(self):
        # oracle: the recurrence carried out in exact polynomial arithmetic
        rng = np.random.default_rng(19)
        x0, order = 0.9, 12
        for _ in range(5):
            pl = rng.uniform(-1, 1, size=4)
            ps = rng.uniform(-1, 1, size=4)
            problem = AimProblem(
                lambda e, x, pl=pl: poly_to_jet(pl, x.x0, x.order),
                lambda e, x, ps=ps: poly_to_jet(ps, x.x0, x.order),
                x0,
                k_max=4,
                order=order,
            )
            series = aim_series(problem, 0.0, rescale=False)
            lam_p = np.polynomial.Polynomial(pl)
            s_p = np.polynomial.Polynomial(ps)
            lam0_p, s0_p = lam_p, s_p
            for k in range(4):
                lam_next = lam_p.deriv() + s_p + lam0_p * lam_p
                s_next = s_p.deriv() + s0_p * lam_p
                jet_lam, jet_s = series.pairs[k]
                assert abs(jet_lam.value - lam_next(x0)) < 1e-9 * (1 + abs(lam_next(x0)))
                assert abs(jet_s.value - s_next(x0)) < 1e-9 * (1 + abs(s_next(x0)))
                lam_p, s_p = lam_next, s_next


class TestHarmonicOscillator:
    def test_ground_state_converges(self):
        problem = oscillator_radial_problem(0, k_max=40)
        root = find_eigenvalue(problem, (1.0, 2.0))
        assert root == pytest.approx(1.5, abs=1e-8)

    @pytest.mark.parametrize("ell", [0, 1])
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_spectrum_exact(self, ell, n):
        target = 2 * n + ell + 1.5
        problem = oscillator_radial_problem(ell, k_max=40)
        k = 2 * n + 6
        fn = lambda e: aim_delta(problem, e, k).real
        root = brentq(fn, target - 0.5, target + 0.5, xtol=1e-12)
        assert root == pytest.approx(target, abs=1e-8)

    def test_delta_scale_invariance(self):
        base = oscillator_radial_problem(0, k_max=30)
        for c in (2.7, -0.6):
            scaled = AimProblem(
                lambda e, x, c=c: base.lambda0(e, x) * c,
                lambda e, x, c=c: base.s0(e, x) * c,
                base.x0,
                k_max=30,
            )
            assert find_eigenvalue(scaled, (1.0, 2.0)) == pytest.approx(1.5, abs=1e-9)


class TestKratzerSeries:
    def test_first_line(self):
        problem = kratzer_radial_problem(3.0, -6.0)
        fn = lambda u: aim_delta(problem, u, 1).real
        root = brentq(fn, 1.8, 2.2, xtol=1e-13)
        assert root == pytest.approx(2.0, abs=1e-10)

    def test_exact_values(self):
        assert aim_exact_kratzer(3.0, -6.0, 0) == pytest.approx(2.0)
        assert aim_exact_kratzer(3.0, -6.0, 1) == pytest.approx(1.5)

    def test_degenerate_line_rejected(self):
        with pytest.raises(AimError):
            aim_exact_kratzer(-2.0, 1.0, 2)
        with pytest.raises(ValueError):
            aim_exact_kratzer(2.0, 1.0, -1)

    def test_exact_matches_numeric_for_table_parameters(self):
        # ground-state parameters of the bundled pseudospin Kratzer table
        zeta, g_d_r = 1.6755386, -2.1702702
        exact = aim_exact_kratzer(zeta, g_d_r, 0).real
        problem = kratzer_radial_problem(zeta, g_d_r)
        fn = lambda u: aim_delta(problem, u, 1).real
        root = brentq(fn, exact - 0.05, exact + 0.05, xtol=1e-13)
        assert root == pytest.approx(exact, abs=1e-8)

    def test_exact_matches_numeric_random(self):
        # the series line n terminates delta_k exactly at k = n + 1
        rng = np.random.default_rng(41)
        for _ in range(20):
            zeta = rng.uniform(1.5, 4.0)
            g_d_r = rng.uniform(-8.0, -2.0)
            n = int(rng.integers(0, 4))
            exact = aim_exact_kratzer(zeta, g_d_r, n).real
            gap = abs(exact - (-g_d_r) / (zeta + n + 1))
            problem = kratzer_radial_problem(zeta, g_d_r, k_max=n + 4)
            fn = lambda u: aim_delta(problem, u, n + 1).real
            half = 0.35 * gap
            root = brentq(fn, exact - half, exact + half, xtol=1e-13)
            assert root == pytest.approx(exact, abs=1e-8)


class TestAngularSeries:
    def test_first_line_numeric(self):
        problem = angular_problem(eta=0.25, ell_eff=1.5)
        fn = lambda q: aim_delta(problem, q, 1).real
        root = brentq(fn, 0.6, 0.9, xtol=1e-13)
        assert root == pytest.approx(0.75, abs=1e-10)

    def test_exact_residual(self):
        assert aim_exact_angular(0.25, 0.5, 1.5, 0) == 0
        assert aim_exact_angular(0.25, 0.5, 1.5, 1) == pytest.approx(1.0)

    def test_closed_forms_satisfy_quantization(self):
        # gamma = 0, a = b = 0, m = 0: eta = 1/4, p = 1/2, ell_eff = 2n' + 3/2
        for n_prime in range(4):
            residual = aim_exact_angular(0.25, 0.5, 2 * n_prime + 1.5, n_prime)
            assert abs(residual) < 1e-14


class TestGeneralEigenfunction:
    def test_degree_zero_is_one(self):
        for sigma, rho, b in ((2.0, 3.0, 1.0), (1.3, 0.4, 0.2)):
            v = general_eigenfunction(0, 0.5, big_n=0, b=b, sigma=sigma, rho=rho)
            assert v == pytest.approx(1.0)

    def test_first_degree_value(self):
        # term-by-term oracle: (-1) * (N+2) * (sigma)_1 * [1 - (rho+1) b x^2 / sigma]
        sigma, rho, b, x = 2.0, 3.0, 1.0, 0.5
        oracle = -1.0 * 2.0 * sigma * (1.0 - (rho + 1.0) * b * x**2 / sigma)
        v = general_eigenfunction(1, x, big_n=0, b=b, sigma=sigma, rho=rho)
        assert v == pytest.approx(oracle, rel=1e-13)
        assert v == pytest.approx(-2.0, rel=1e-13)

    def test_sigma_pole_rejected(self):
        with pytest.raises(PoleError):
            general_eigenfunction(2, 0.5, big_n=0, b=1.0, sigma=-1.0, rho=3.0)

    def test_normal_form_parameters(self):
        sigma, rho = normal_form_sigma_rho(a=1.0, b=2.0, m=0.5, big_n=0)
        assert sigma == pytest.approx((2 * 0.5 + 3) / 2.0)
        assert rho == pytest.approx(((2 * 0.5 + 1) * 2.0 + 2 * 1.0) / (2 * 2.0))

    def test_matches_angular_polynomial(self):
        # the angular 2F1 with sigma = 2 eta + 1/2, rho = 2 (eta + p)
        from drsbound.specfun import hyp2f1_terminating

        eta, p = 0.9697548, 1.0119364
        sigma, rho = 2 * eta + 0.5, 2 * (eta + p)
        for n_prime in (0, 1, 2, 3):
            for x_ang in np.linspace(0.05, 0.95, 20):
                mine = general_eigenfunction(
                    n_prime, math.sqrt(x_ang), big_n=0, b=1.0, sigma=sigma, rho=rho
                )
                poly = hyp2f1_terminating(n_prime, rho + n_prime, sigma, x_ang).value
                expected = (-1.0) ** n_prime * 2.0**n_prime * pochhammer(sigma, n_prime) * poly
                assert mine == pytest.approx(expected, rel=1e-11)
