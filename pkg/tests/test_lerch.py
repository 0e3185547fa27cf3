"""Dispatch, recurrences and error reporting of the Phi evaluator."""

import math

import numpy as np
import pytest

from lerchint import (
    ConvergenceError,
    DomainError,
    LerchArgs,
    lerch_kernel_integral,
    alt_lerch,
    gamma,
    phi,
    phi_du_fd,
    phi_shift_u,
)


def geometric_over_shifted(z: float, n: int = 400) -> float:
    """Brute sum of z^k/(k+1) with geometric tail bound folded in."""
    total = math.fsum(z ** k / (k + 1.0) for k in range(n))
    assert abs(z) ** (n + 1) / (1.0 - abs(z)) < 1e-16
    return total


class TestArgsValidation:
    def test_u_must_have_positive_real_part(self):
        with pytest.raises(DomainError):
            LerchArgs(0.5, 1.0, 0.0)
        with pytest.raises(DomainError):
            LerchArgs(0.5, 1.0, -2.0 + 1j)

    def test_ray_rejected(self):
        with pytest.raises(DomainError):
            LerchArgs(1.5, 2.0, 1.0)
        with pytest.raises(DomainError):
            LerchArgs(7.0, 2.0, 1.0)

    def test_z_one_needs_re_s_above_one(self):
        with pytest.raises(DomainError):
            LerchArgs(1.0, 0.5, 1.0)
        LerchArgs(1.0, 1.5, 1.0)  # fine


class TestPhiDispatch:
    def test_z_zero_is_exact_power(self):
        r = phi(LerchArgs(0.0, 2.5, 1.7))
        assert r.value == 1.7 ** (-2.5 + 0j)
        assert r.method == "direct-series"
        assert r.work == 1

    def test_geometric_case(self):
        ref = geometric_over_shifted(0.5)
        assert abs(ref - 2.0 * math.log(2.0)) < 1e-15
        r = phi(LerchArgs(0.5, 1.0, 1.0), tol=1e-12)
        assert abs(r.value - ref) <= 1e-12
        assert r.method == "direct-series"

    def test_delegates_to_hurwitz(self):
        r = phi(LerchArgs(1.0, 2.0, 1.0), tol=1e-12)
        assert abs(r.value - math.pi ** 2 / 6.0) <= 1e-12
        assert r.method == "euler-maclaurin"

    def test_delegates_to_alternating(self):
        r = phi(LerchArgs(-1.0, 1.0, 1.0), tol=1e-12)
        assert abs(r.value - math.log(2.0)) <= 1e-12
        assert r.method == "alternating-accel"

    def test_alternating_domain_error_propagates(self):
        with pytest.raises(DomainError):
            phi(LerchArgs(-1.0, -0.5, 1.0))

    def test_near_disk_edge_converges(self):
        # |z| = 0.99 needs a few thousand terms but stays within budget
        r = phi(LerchArgs(0.99, 2.0, 1.0), tol=1e-11)
        brute = math.fsum(0.99 ** k / (k + 1.0) ** 2 for k in range(20_000))
        assert abs(r.value - brute) <= 1e-10

    def test_unit_circle_off_the_poles_needs_re_s_above_one(self):
        z = complex(math.cos(1.0), math.sin(1.0))
        with pytest.raises(DomainError):
            phi(LerchArgs(z, 0.5, 1.0))

    def test_unit_circle_convergence_error_when_tol_unreachable(self):
        z = complex(math.cos(1.0), math.sin(1.0))
        with pytest.raises(ConvergenceError):
            phi(LerchArgs(z, 1.2, 1.0), tol=1e-10)

    def test_unit_circle_loose_tol_works(self):
        z = complex(math.cos(1.0), math.sin(1.0))
        r = phi(LerchArgs(z, 3.0, 1.0), tol=1e-9)
        brute = sum(z ** k / (k + 1.0) ** 3 for k in range(200_000))
        assert abs(r.value - brute) <= 2e-9

    def test_outside_disk_rejected_without_fallback(self):
        with pytest.raises(DomainError):
            phi(LerchArgs(-3.0, 1.0, 1.0))

    def test_quadrature_fallback_outside_disk(self):
        # sum (-3)^n/(n+1) = ln(4)/3 by the integral representation
        r = phi(LerchArgs(-3.0, 1.0, 1.0), tol=1e-10, allow_quadrature=True)
        assert r.method == "quadrature-fallback"
        assert abs(r.value - math.log(4.0) / 3.0) <= 1e-9

    def test_truncation_bound_dominates_geometric_tail(self):
        # reported abs_err is at least |z|^(N+1) (Re u + N + 1)^(-Re s)/(1-|z|)
        for z, s, u in [(0.5, 1.0, 1.0), (-0.7, 2.0, 0.6), (0.9, 0.5, 2.2)]:
            r = phi(LerchArgs(z, s, u), tol=1e-11)
            assert r.method == "direct-series"
            n_last = r.work - 1
            bound = abs(z) ** (n_last + 1) * (u + n_last + 1.0) ** (-s) / (1.0 - abs(z))
            assert r.abs_err >= bound


class TestRecurrences:
    def test_shift_matches_arithmetic(self):
        r = phi_shift_u(LerchArgs(0.5, 1.0, 1.0), tol=1e-12)
        expected = (2.0 * math.log(2.0) - 1.0) / 0.5
        assert abs(r.value - expected) <= 1e-11

    def test_shift_at_minus_one(self):
        r = phi_shift_u(LerchArgs(-1.0, 1.0, 1.0), tol=1e-12)
        expected = (math.log(2.0) - 1.0) / (-1.0)
        assert abs(r.value - expected) <= 1e-11

    def test_shift_consistent_with_direct_evaluation(self):
        a = phi_shift_u(LerchArgs(0.5, 0.0, 1.0), tol=1e-12)
        b = phi(LerchArgs(0.5, 0.0, 2.0), tol=1e-12)
        assert abs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-14

    def test_shift_needs_nonzero_z(self):
        with pytest.raises(DomainError):
            phi_shift_u(LerchArgs(0.0, 1.0, 1.0))

    def test_shift_residual_on_grid(self):
        zs = [0.3, -0.7, 0.5 + 0.5j]
        ss = [0.5, 2.0, 1.0 + 1.0j]
        us = [0.6, 1.0, 2.2]
        for z in zs:
            for s in ss:
                for u in us:
                    a = phi(LerchArgs(z, s, u), tol=1e-12)
                    b = phi(LerchArgs(z, s, u + 1.0), tol=1e-12)
                    residual = abs(z * b.value - a.value + u ** (-s))
                    budget = 4.0 * (abs(z) * b.abs_err + a.abs_err) + 1e-13
                    assert residual <= budget, f"z={z}, s={s}, u={u}"

    def test_fd_derivative_z_zero(self):
        d = phi_du_fd(LerchArgs(0.0, 2.0, 1.0), h=1e-5, tol=1e-13)
        assert abs(d - (-2.0)) <= 1e-6

    def test_fd_matches_s_plus_one_series(self):
        d = phi_du_fd(LerchArgs(0.5, 2.0, 1.0), h=1e-5, tol=1e-13)
        rhs = -2.0 * phi(LerchArgs(0.5, 3.0, 1.0), tol=1e-13).value
        assert abs(d - rhs) <= 1e-6 * abs(rhs)

    def test_fd_matches_alternating_route(self):
        d = phi_du_fd(LerchArgs(-1.0, 2.0, 1.5), h=1e-5, tol=1e-13)
        rhs = -2.0 * alt_lerch(3.0, 1.5, tol=1e-13).value
        assert abs(d - rhs) <= 1e-6 * abs(rhs)

    def test_derivative_recurrence_on_real_subgrid(self):
        for z in (0.3, -0.7):
            for s in (0.5, 2.0):
                for u in (0.6, 1.0, 2.2):
                    lhs = phi(LerchArgs(z, s + 1.0, u), tol=1e-13).value
                    fd = phi_du_fd(LerchArgs(z, s, u), h=1e-5, tol=1e-13)
                    assert abs(lhs + fd / s) <= 1e-6 * abs(lhs), f"z={z}, s={s}, u={u}"

    def test_fd_step_validation(self):
        with pytest.raises(DomainError):
            phi_du_fd(LerchArgs(0.5, 1.0, 1.0), h=1e-7)
        with pytest.raises(DomainError):
            phi_du_fd(LerchArgs(0.5, 1.0, 1.0), h=1e-2)
        with pytest.raises(DomainError):
            phi_du_fd(LerchArgs(0.5, 1.0, 1e-4), h=1e-3)


class TestPathIndependence:
    @pytest.mark.parametrize("s", [1.5, 2.5])
    @pytest.mark.parametrize("u", [0.7, 1.3])
    def test_alternating_vs_kernel_quadrature(self, s, u):
        k = lerch_kernel_integral(-1.0, u, s, tol=1e-12)
        quad_phi = k.value / gamma(s + 1.0)
        alt = alt_lerch(s + 1.0, u, tol=1e-13)
        assert abs(alt.value - quad_phi) <= 1e-8


def test_error_honesty_against_brute_series():
    rng = np.random.default_rng(5)
    for _ in range(20):
        z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
        if abs(z) < 1e-3:
            continue
        s = complex(rng.uniform(0.3, 3.0), rng.uniform(-1.0, 1.0))
        u = complex(rng.uniform(0.5, 2.5), rng.uniform(-0.5, 0.5))
        r = phi(LerchArgs(z, s, u), tol=1e-12)
        brute = sum(z ** k * (u + k) ** (-s) for k in range(3000))
        assert abs(r.value - brute) <= 2.0 * r.abs_err + 1e-13
