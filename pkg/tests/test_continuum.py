"""Wedge eigenfunctions, heat kernel, exact polynomial identities, and the
Laplace-transform functional equations."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conewalks import continuum as ct
from conewalks.polynomials import Poly1, Poly2
from conewalks.polyparse import parse_poly2 as P2

QUAD = ct.QUADRANT


class TestEigenfunctions:
    def test_normalized_value(self):
        assert math.isclose(
            ct.m_j_eval(QUAD, 1, math.pi / 4), 2.0 / math.sqrt(math.pi), rel_tol=1e-14
        )

    def test_dirichlet_zeros(self):
        for j in (1, 2, 5):
            assert ct.m_j_eval(QUAD, j, 0.0) == 0.0
            assert abs(ct.m_j_eval(QUAD, j, QUAD.xi)) < 1e-12

    def test_domain_error(self):
        with pytest.raises(ValueError):
            ct.m_j_eval(QUAD, 1, -0.1)

    def test_orthonormality_by_quadrature(self):
        xs, ws = np.polynomial.legendre.leggauss(80)
        th = (xs + 1.0) * (QUAD.xi / 2.0)
        w = ws * (QUAD.xi / 2.0)
        for j in range(1, 6):
            for k in range(1, 6):
                vals = [
                    ct.m_j_eval(QUAD, j, t) * ct.m_j_eval(QUAD, k, t) for t in th
                ]
                integral = float(np.dot(vals, w))
                target = 1.0 if j == k else 0.0
                assert abs(integral - target) < 1e-10

    def test_eigenvalues_increase(self):
        wedge = ct.Wedge(1.1)
        betas = [wedge.eigen(j).lambda_j for j in range(1, 6)]
        assert betas == sorted(betas)
        assert betas[0] > 0


class TestRadialFamily:
    def test_harmonic_member(self):
        assert ct.laplacian_check_fmuj(QUAD, 2.0, 1, h=1e-4) <= 1e-6

    def test_shifted_member(self):
        assert ct.laplacian_check_fmuj(QUAD, 4.0, 1, h=1e-4) <= 1e-6

    def test_wider_wedge(self):
        wedge = ct.Wedge(3 * math.pi / 4)
        mu = wedge.eigen(2).b_j
        assert ct.laplacian_check_fmuj(wedge, mu, 2, h=1e-4) <= 1e-6


class TestCartesianPolynomials:
    def test_first_member(self):
        assert ct.f2jj_cartesian(1) == P2("2*x*y")

    def test_all_harmonic(self):
        for j in range(1, 7):
            assert ct.continuous_laplacian(ct.f2jj_cartesian(j)).is_zero

    def test_radial_shift_coefficient(self):
        r2 = Poly2.x() ** 2 + Poly2.y() ** 2
        for j in range(1, 7):
            f = ct.f2jj_cartesian(j)
            assert ct.continuous_laplacian(r2 * f) == f.scale(4 * (2 * j + 1))


class TestAlmansi:
    def test_pure_product(self):
        r2 = Poly2.x() ** 2 + Poly2.y() ** 2
        xy = P2("x*y")
        assert ct.almansi_decompose(r2 * xy, 2) == [Poly2.zero(), xy]

    def test_harmonic_input(self):
        xy = P2("x*y")
        assert ct.almansi_decompose(xy, 1) == [xy]

    def test_double_shift(self):
        r2 = Poly2.x() ** 2 + Poly2.y() ** 2
        f4 = ct.f2jj_cartesian(2)
        assert ct.almansi_decompose(r2**2 * f4, 3) == [
            Poly2.zero(),
            Poly2.zero(),
            f4,
        ]

    def test_rejects_non_polyharmonic(self):
        with pytest.raises(ValueError, match="polyharmonic"):
            ct.almansi_decompose(P2("x^4"), 1)

    def test_random_round_trips(self):
        rng = random.Random(424242)
        x, y = Poly2.x(), Poly2.y()
        harmonics = [Poly2.const(1), x, y, x * y, x**2 - y**2]
        r2 = x**2 + y**2
        for _ in range(10):
            p = rng.randint(1, 3)
            layers = []
            for _k in range(p):
                h = Poly2.zero()
                for basis in harmonics:
                    h = h + basis.scale(Fraction(rng.randint(-4, 4)))
                layers.append(h)
            f = ct.almansi_recompose(layers)
            parts = ct.almansi_decompose(f, p)
            assert ct.almansi_recompose(parts) == f
            assert parts == layers


class TestBessel:
    def test_at_zero(self):
        assert ct.bessel_i(0.0, 0.0) == 1.0
        assert ct.bessel_i(2.5, 0.0) == 0.0

    def test_half_order_closed_form(self):
        got = ct.bessel_i(0.5, 1.0)
        expected = math.sqrt(2.0 / math.pi) * math.sinh(1.0)
        assert abs(got - expected) < 1e-10

    def test_monotone_in_z(self):
        vals = [ct.bessel_i(2.0, z) for z in (0.5, 1.0, 2.0, 4.0)]
        assert vals == sorted(vals)

    def test_overflow_error(self):
        with pytest.raises(OverflowError, match="rescale"):
            ct.bessel_i(5.0, 1e130)

    def test_grid_matches_scalar(self):
        z = np.array([0.0, 0.3, 1.7, 9.2])
        grid = ct._bessel_i_grid(1.5, z, 1e-15)
        for zi, gi in zip(z, grid):
            assert abs(gi - ct.bessel_i(1.5, float(zi), 1e-15)) < 1e-12 * max(gi, 1.0)


class TestHeatKernel:
    def test_symmetry(self):
        a = (1.3, 0.4)
        b = (0.8, 1.1)
        p1 = ct.heat_kernel(QUAD, a, b, 2.0)
        p2 = ct.heat_kernel(QUAD, b, a, 2.0)
        assert abs(p1 - p2) <= 1e-13 * max(abs(p1), 1e-300)
        assert p1 >= 0.0

    def test_boundary_limit_vanishes(self):
        vals = [
            ct.heat_kernel(QUAD, (1.0, th), (1.0, 0.6), 1.0) for th in (0.1, 0.01, 0.001)
        ]
        assert vals[0] > vals[1] > vals[2]
        assert vals[2] < 1e-2

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            ct.heat_kernel(QUAD, (1.0, 0.5), (1.0, 0.5), -1.0)
        with pytest.raises(ValueError):
            ct.heat_kernel(QUAD, (1.0, 0.0), (1.0, 0.5), 1.0)

    def test_expansion_leading_term(self):
        x = (1.0, math.pi / 4)
        t = 50.0
        beta1 = QUAD.eigen(1).beta_j
        lead = (
            t ** (-(1.0 + beta1))
            / (2.0**beta1 * math.gamma(beta1 + 1.0))
            * ct.m_j_eval(QUAD, 1, x[1]) ** 2
        )
        got = ct.heat_kernel_expansion(QUAD, x, x, t, cutoff=1.0 + beta1)
        assert math.isclose(got, lead, rel_tol=1e-14)

    def test_expansion_approximates_kernel(self):
        params = ct.HeatKernelParams(eps=1e-18)
        x = (1.0, math.pi / 4)
        for t in (8.0, 16.0):
            hk = ct.heat_kernel(QUAD, x, x, t, params)
            ex = ct.heat_kernel_expansion(QUAD, x, x, t, cutoff=3.0)
            assert abs(hk - ex) / hk < 2.0 / t

    def test_quadrant_kernel_equals_product_of_reflections(self):
        # in the right angle the axes decouple: the spectral series must
        # reproduce the product of two one-dimensional absorbed kernels
        def k1d(a, b, t):
            phi = lambda u: math.exp(-u * u / (2 * t)) / math.sqrt(2 * math.pi * t)
            return phi(b - a) - phi(b + a)

        params = ct.HeatKernelParams(eps=1e-16)
        cases = [
            (1.0, 0.6, 1.3, 0.9, 0.5),
            (math.sqrt(2.0), math.pi / 4, 2.0, 0.3, 1.0),
            (0.7, 1.2, 0.5, 0.4, 2.0),
        ]
        for (rho, th, r, eta, t) in cases:
            x1, y1 = rho * math.cos(th), rho * math.sin(th)
            x2, y2 = r * math.cos(eta), r * math.sin(eta)
            oracle = k1d(x1, x2, t) * k1d(y1, y2, t)
            got = ct.heat_kernel(QUAD, (rho, th), (r, eta), t, params)
            assert abs(got - oracle) <= 1e-13 * abs(oracle)

    def test_half_plane_survival_quadrature_matches_erf(self):
        got = ct.survival_quadrature(ct.Wedge(math.pi), (1.0, math.pi / 2), 1.0)
        assert abs(got - math.erf(1.0 / math.sqrt(2.0))) < 1e-12


class TestExponentSet:
    def test_quadrant_ladder(self):
        entries = ct.exponent_set(QUAD, 6.0)
        as_dict = {round(v, 9): m for v, m in entries}
        assert as_dict == {3.0: 1, 4.0: 1, 5.0: 2, 6.0: 2}

    def test_incommensurable_wedge_has_no_collisions(self):
        wedge = ct.Wedge(math.sqrt(2.0))  # pi/xi irrational
        entries = ct.exponent_set(wedge, 10.0)
        assert all(m == 1 for _, m in entries)

    def test_minimum(self):
        wedge = ct.Wedge(1.0)
        entries = ct.exponent_set(wedge, 20.0)
        assert math.isclose(entries[0][0], wedge.eigen(1).beta_j + 1.0)


class TestBrownianKernel:
    def test_identity_covariance_roots(self):
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        cp, cm, c, theta = ct.bm_roots(cov)
        assert cp == 1j and cm == -1j
        assert c == 1.0
        assert math.isclose(theta, math.pi / 2)

    def test_tilted_covariance_angle(self):
        cov = ct.CovMatrix(1.0, -0.5, 1.0)
        assert math.isclose(cov.theta, math.pi / 3)

    def test_root_product(self):
        for cov in (ct.CovMatrix(1.0, 0.0, 1.0), ct.CovMatrix(2.0, 0.3, 0.7)):
            assert abs(cov.c_plus * cov.c_minus - cov.s11 / cov.s22) < 1e-14

    def test_gamma_vanishes_on_rays(self):
        cov = ct.CovMatrix(1.4, -0.2, 0.9)
        for x in (0.5, 1.0, 2.3):
            assert abs(ct.bm_kernel_gamma(cov, x, cov.c_plus * x)) < 1e-14
            assert abs(ct.bm_kernel_gamma(cov, x, cov.c_minus * x)) < 1e-14

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            ct.CovMatrix(1.0, 1.0, 1.0)


class TestLaplaceTransforms:
    def test_product_harmonic(self):
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        got = ct.laplace_h(cov, Poly1([0, 1]), 2.0 + 0j, 3.0 + 0j)
        assert abs(got - 1.0 / (4.0 * 9.0)) < 1e-14

    def test_display_family(self):
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        for j in (1, 2):
            pj = Poly1([0] * j + [-math.factorial(2 * j) * (-1) ** j])
            for (x, y) in ((1.0 + 0j, 1.0 + 0j), (2.0 + 0j, 3.0 + 0j)):
                got = ct.laplace_h(cov, pj, x, y)
                expected = (
                    math.factorial(2 * j)
                    * ((1.0 / x**2) ** j - (-1.0 / y**2) ** j)
                    / (x**2 + y**2)
                )
                assert abs(got - expected) < 1e-12

    def test_quadrature_cross_check(self):
        got = ct.laplace_numeric(lambda u, v: u * v, 1.0, 1.0, tol=1e-8)
        assert abs(got - 1.0) < 1e-6

    def test_biharmonic_display(self):
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        for (x, y) in ((1.0 + 0j, 2.0 + 0j), (1.5 + 0j, 0.8 + 0j)):
            got = ct.laplace_v(cov, Poly1([0, 1]), Poly1(), x, y)
            assert abs(got - (x**2 + y**2) / (x**4 * y**4)) < 1e-12

    def test_biharmonic_radial_family(self):
        # P = 12 t reproduces the transform of (x^2+y^2) * 2xy exactly
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        x, y = 1.3 + 0j, 0.9 + 0j
        got = ct.laplace_v(cov, Poly1([0, 12]), Poly1(), x, y)
        expected = 12.0 * (x**2 + y**2) / (x**4 * y**4)
        assert abs(got - expected) < 1e-12

    def test_laplace_v_matches_quadrature(self):
        # independent oracle: numerically transform (x^2+y^2)xy / 6
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        got = ct.laplace_v(cov, Poly1([0, 1]), Poly1(), 1.0 + 0j, 1.0 + 0j)
        oracle = ct.laplace_numeric(
            lambda u, v: (u**2 + v**2) * u * v / 6.0, 1.0, 1.0, tol=1e-9
        )
        assert abs(got - oracle) < 1e-6


class TestFunctionalEquations:
    SAMPLES = [
        (0.9 + 0.3j, 1.2 - 0.1j),
        (1.5 + 0j, 0.7 + 0.2j),
        (2.0 - 0.4j, 1.0 + 0.5j),
    ]

    def test_identity_covariance(self):
        cov = ct.CovMatrix(1.0, 0.0, 1.0)
        res = ct.verify_functional_eqs(cov, Poly1([0, 1]), Poly1(), self.SAMPLES)
        assert max(res.values()) < 1e-12

    def test_pi_over_three(self):
        cov = ct.CovMatrix(1.0, -0.5, 1.0)
        res = ct.verify_functional_eqs(
            cov, Poly1([0, Fraction(1, 2), 1]), Poly1([0, 1, 1]), self.SAMPLES
        )
        assert max(res.values()) < 1e-10

    def test_degree_one_two_term_form(self):
        # with P(t) = 2*mu1*t the transform takes the two-term display shape
        # with the coupled constant mu2 = mu1 (s11/s22) c^(-pi/theta)
        cov = ct.CovMatrix(1.0, -0.5, 1.0)
        w = math.pi / cov.theta
        mu1 = 0.7
        mu2 = mu1 * (cov.s11 / cov.s22) / cov.c**w
        P = Poly1([0, Fraction(7, 5)])  # 2 * mu1 * t
        worst = 0.0
        for (x, y) in self.SAMPLES:
            display = (cov.s22 * mu2 / x**w + cov.s11 * mu1 / y**w) / (
                ct.bm_kernel_gamma(cov, x, y)
            )
            worst = max(worst, abs(ct.laplace_h(cov, P, x, y) - display))
        assert worst < 1e-10

    def test_perturbed_decoupling_term_is_detected(self):
        cov = ct.CovMatrix(1.0, -0.5, 1.0)
        P = Poly1([0, Fraction(1, 2), 1])
        Q = Poly1([0, 1, 1])
        w = math.pi / cov.theta
        worst = 0.0
        for (x, y) in self.SAMPLES:
            g = ct.bm_kernel_gamma(cov, x, y)
            cpx = cov.c_plus * x
            qpart = ct._poly_at_complex(Q, 1.0 / ct._cpow(y, w)) - ct._poly_at_complex(
                Q, 1.0 / ct._cpow(cpx, w)
            )
            gpart = (
                1.01 * ct.big_f(cov, P, y)
                - ct.big_f(cov, P, cpx)
                - ct.laplace_h_on_root(cov, P, x, +1)
            )
            lv_bad = (qpart + gpart + ct.laplace_h(cov, P, x, y)) / g
            half_l1v = ct._poly_at_complex(Q, 1.0 / ct._cpow(y, w)) + ct.big_f(cov, P, y)
            half_l2v = (
                -ct._poly_at_complex(Q, 1.0 / ct._cpow(cpx, w))
                - ct.big_f(cov, P, cpx)
                - ct.laplace_h_on_root(cov, P, x, +1)
            )
            residual = abs(
                g * lv_bad - (half_l1v + half_l2v + ct.laplace_h(cov, P, x, y))
            )
            worst = max(worst, residual)
        assert worst > 1e-3
