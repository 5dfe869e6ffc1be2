"""Critical-line evaluators against independent high-precision oracles."""

import math

import mpmath as mp
import numpy as np
import pytest

from zetaladder import (DomainError, euler_maclaurin_zeta_sq, find_zero_pair,
                        hardy_z, rs_theta, scan_zeros, zero_count_estimate,
                        zeta_sq)
from zetaladder.critical_line import RS_MIN_T, _z_em, _z_rs

# first three zero ordinates, frozen from mpmath.zetazero at 30 digits
GAMMA_1 = 14.13472514173469379
GAMMA_2 = 21.022039638771554993
GAMMA_3 = 25.010857580145688763

# Im log Gamma(1/4 + it/2) - (t/2) ln pi, frozen from mpmath at 30 digits
THETA_ORACLE = {100.0: 87.972165231787219625, 1000.0: 2034.5464280380316087}


def z_oracle(t, dps=30):
    """Signed Z(t) in mpmath (EM zeta + exact theta); test-only oracle."""
    with mp.workdps(dps):
        z = mp.zeta(mp.mpf("0.5") + 1j * mp.mpf(t))
        return float(mp.re(mp.expj(mp.siegeltheta(t)) * z))


class TestTheta:
    def test_domain(self):
        with pytest.raises(DomainError):
            rs_theta(1.5)

    @pytest.mark.parametrize("t", [100.0, 1000.0])
    def test_against_loggamma_oracle(self, t):
        assert abs(rs_theta(t) - THETA_ORACLE[t]) <= 1e-10

    def test_near_minimum_region(self):
        t = 2.0 * math.pi * math.e
        val = rs_theta(t)
        assert np.isfinite(val)
        # centred difference approximates theta' ~ 0.5 ln(t/2pi) > 0 here
        d = (rs_theta(t + 1e-4) - rs_theta(t - 1e-4)) / 2e-4
        assert d > 0.0
        assert abs(d - 0.5 * math.log(t / (2 * math.pi))) < 1e-2

    def test_monotone_above_18(self):
        grid = np.linspace(18.0, 5000.0, 4000)
        vals = rs_theta(grid)
        assert np.all(np.diff(vals) > 0)


class TestHardyZ:
    def test_domain(self):
        with pytest.raises(DomainError):
            hardy_z(1.0)

    def test_first_zero_small(self):
        assert abs(hardy_z(GAMMA_1)) <= 1e-6

    def test_zeta_sq_nonnegative_and_squared(self):
        t = 55.5
        assert zeta_sq(t) == hardy_z(t) ** 2
        assert zeta_sq(t) >= 0.0

    def test_random_points_match_oracle(self):
        rng = np.random.default_rng(42)
        ts = rng.uniform(10.0, 1000.0, 20)
        for t in ts:
            ref = z_oracle(t)
            assert abs(hardy_z(float(t)) - ref) <= 1e-8 * max(abs(ref), 1e-3)

    def test_rs_em_cross_backend(self):
        # both backends evaluated on the same points across the switch
        ts = np.linspace(RS_MIN_T + 1.0, RS_MIN_T + 400.0, 60)
        em = _z_em(ts)
        rs = _z_rs(ts)
        assert np.max(np.abs(em - rs)) < 1e-9

    def test_rs_error_scaling(self):
        # remainder after C4 decays like (t/2pi)^(-11/4); verify at two heights
        for t, cap in [(4000.0, 2e-11), (40000.0, 5e-12)]:
            ref = z_oracle(t)
            assert abs(float(_z_rs(np.array([t]))[0]) - ref) < cap * 1e3


class TestEulerMaclaurinOracle:
    def test_domain(self):
        with pytest.raises(DomainError):
            euler_maclaurin_zeta_sq(1.0)

    def test_small_t_positive(self):
        assert euler_maclaurin_zeta_sq(2.0) > 0.0
        # frozen |zeta(1/2+2i)|^2 from mpmath.zeta at 30 digits
        assert abs(euler_maclaurin_zeta_sq(2.0) - 0.29120391029462797841) < 1e-12

    def test_zero_of_zeta(self):
        assert euler_maclaurin_zeta_sq(GAMMA_1) <= 1e-10

    def test_agrees_with_mpmath_zeta(self):
        # third-party referee: mpmath's own zeta implementation
        for t in (17.3, 100.0, 517.25):
            with mp.workdps(30):
                ref = float(abs(mp.zeta(mp.mpf("0.5") + 1j * t)) ** 2)
            assert abs(euler_maclaurin_zeta_sq(t) - ref) <= 1e-12 * max(ref, 1e-6)

    def test_cross_backend_at_100(self):
        assert abs(hardy_z(100.0) ** 2 - euler_maclaurin_zeta_sq(100.0)) \
            <= 1e-8 * euler_maclaurin_zeta_sq(100.0)


class TestZeroScanning:
    def test_first_pair(self):
        pair = find_zero_pair(14.0)
        assert abs(pair.gamma - GAMMA_1) < 1e-8
        assert abs(pair.gamma_prime - GAMMA_2) < 1e-8
        assert pair.refinement_residual <= 1e-9

    def test_at_or_after_semantics(self):
        pair = find_zero_pair(GAMMA_1 + 1e-9)
        assert abs(pair.gamma - GAMMA_2) < 1e-8
        assert abs(pair.gamma_prime - GAMMA_3) < 1e-8

    def test_ordering_invariant(self):
        pair = find_zero_pair(1000.0)
        assert pair.gamma_prime > pair.gamma

    def test_domain(self):
        with pytest.raises(DomainError):
            find_zero_pair(5.0)

    def test_zero_count_riemann_von_mangoldt(self):
        zeros = scan_zeros(2.0, 3000.0, residual_tol=1e-6)
        est = zero_count_estimate(3000.0)
        assert abs(len(zeros) - est) <= 2.0

    def test_gap_statistics_near_1e4(self):
        pair = find_zero_pair(1e4)
        avg = 2.0 * math.pi / math.log(1e4 / (2 * math.pi))
        gap = pair.gamma_prime - pair.gamma
        assert 0.1 * avg <= gap <= 10.0 * avg
