"""Prime counting: segmented sieve vs plain sieve, cache format, approximation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaladder import DomainError, PrimeCounter, pi_approx, pi_exact
from zetaladder.primes import sieve_plain

COUNTER = PrimeCounter(limit=1_000_000)

# reference values of pi(10^k)
PI_POWERS = {10: 4, 100: 25, 1000: 168, 10_000: 1229, 100_000: 9592,
             1_000_000: 78_498}


class TestExactCounting:
    def test_tiny_values(self):
        assert pi_exact(1, COUNTER) == 0
        assert pi_exact(2, COUNTER) == 1
        assert pi_exact(2.5, COUNTER) == 1
        assert pi_exact(3, COUNTER) == 2

    @pytest.mark.parametrize("x,expected", sorted(PI_POWERS.items()))
    def test_powers_of_ten(self, x, expected):
        assert pi_exact(x, COUNTER) == expected

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            pi_exact(COUNTER.limit + 1, COUNTER)

    def test_segmented_matches_plain_sieve(self):
        # independent cross-check of the two sieve implementations
        plain = sieve_plain(1_000_000)
        assert len(plain) == PI_POWERS[1_000_000]
        assert np.array_equal(COUNTER.primes, plain)

    @given(st.integers(min_value=0, max_value=3000))
    @settings(max_examples=60, deadline=None)
    def test_monotone_steps(self, x):
        a = pi_exact(x, COUNTER)
        b = pi_exact(x + 1, COUNTER)
        assert b - a in (0, 1)

    def test_density_bound(self):
        for x in (10, 100, 10_000, 999_983):
            assert pi_exact(x, COUNTER) <= x / 2 + 1

    def test_pnt_trend(self):
        # pi(x) ln x / x creeps toward 1 (sanity, not acceptance)
        vals = [pi_exact(10 ** k, COUNTER) * np.log(10 ** k) / 10 ** k
                for k in (3, 4, 5, 6)]
        assert all(v > 1.0 for v in vals)
        assert vals[-1] < vals[0]


class TestCacheFile:
    def test_roundtrip(self, tmp_path):
        small = PrimeCounter(limit=10_000)
        path = tmp_path / "pi.bin"
        small.save_cache(path)
        loaded = PrimeCounter.load_cache(path)
        assert loaded.limit == 10_000
        assert np.array_equal(loaded.primes, small.primes)

    def test_header_layout(self, tmp_path):
        small = PrimeCounter(limit=100)
        path = tmp_path / "pi.bin"
        small.save_cache(path)
        blob = path.read_bytes()
        assert blob[:4] == b"ZLPI"
        version = int.from_bytes(blob[4:8], "little")
        limit = int.from_bytes(blob[8:16], "little")
        assert version == 1 and limit == 100

    def test_reject_garbage(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b"NOPE" + b"\x00" * 16)
        with pytest.raises(ValueError):
            PrimeCounter.load_cache(path)


class TestApproximation:
    def test_within_five_bp_at_1e6(self):
        exact = pi_exact(1_000_000, COUNTER)
        assert abs(pi_approx(1_000_000) - exact) / exact < 5e-4

    def test_small_argument_convention(self):
        # Gram-series value at 2 sits within one prime of pi(2) = 1; the plain
        # li convention (li(2) = 1.045) is documented in the docstring but not
        # used because it misses the 1e6 accuracy target by 3x.
        assert 0.9 < pi_approx(2.0) < 1.9

    def test_monotone(self):
        xs = np.geomspace(2.0, 1e7, 200)
        vals = [pi_approx(x) for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            pi_approx(1.5)
