"""Exact prime counting via a segmented sieve, plus a smooth approximation.

A ``PrimeCounter`` is immutable after construction: a sorted array of primes up
to ``limit`` backs exact counting queries through binary search.  The sieve
table can be cached on disk as a little-endian bit array with a 16-byte header
(see ``save_cache``/``load_cache``); bit i of the body encodes primality of the
odd number 2i+1.
"""

from __future__ import annotations

import math
import struct
from pathlib import Path

import numpy as np
import scipy.special as sps

from .errors import DomainError

__all__ = ["PrimeCounter", "pi_exact", "pi_approx", "sieve_plain"]

_CACHE_MAGIC = b"ZLPI"
_CACHE_VERSION = 1
DEFAULT_LIMIT = 10 ** 8


def sieve_plain(limit: int) -> np.ndarray:
    """Plain (non-segmented) sieve of Eratosthenes; independent cross-check."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _sieve_segmented(limit: int, segment: int = 1 << 22) -> np.ndarray:
    """Segmented sieve returning all primes <= limit."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    root = int(math.isqrt(limit))
    base = sieve_plain(root)
    chunks = [base[base <= limit]]
    lo = root + 1
    while lo <= limit:
        hi = min(limit, lo + segment - 1)
        flags = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                continue
            flags[start - lo::p] = False
        chunks.append((np.nonzero(flags)[0] + lo).astype(np.int64))
        lo = hi + 1
    return np.concatenate(chunks)


class PrimeCounter:
    """Monotone step data for pi(x) up to a fixed limit.

    Construction sieves once (segmented); instances are immutable afterwards
    and safe for concurrent reads.
    """

    def __init__(self, limit: int = DEFAULT_LIMIT, _primes: np.ndarray | None = None):
        limit = int(limit)
        if limit < 2:
            raise ValueError("limit must be >= 2")
        self.limit = limit
        self._primes = _sieve_segmented(limit) if _primes is None else _primes
        self._primes.setflags(write=False)

    @property
    def primes(self) -> np.ndarray:
        return self._primes

    def count(self, x) -> int:
        """Exact number of primes <= x for 0 <= x <= limit."""
        x = float(x)
        if x < 0 or x > self.limit:
            raise DomainError(f"pi_exact argument {x} outside [0, {self.limit}]")
        return int(np.searchsorted(self._primes, math.floor(x), side="right"))

    # --- on-disk cache -------------------------------------------------
    # 16-byte header: magic 'ZLPI' (4), version uint32 LE, limit uint64 LE;
    # body: little-endian bit array, bit i = primality of 2i+1, plus a single
    # leading byte for the even prime flag of 2.

    def save_cache(self, path) -> None:
        path = Path(path)
        odd_flags = np.zeros((self.limit // 2) + 1, dtype=bool)
        odds = self._primes[self._primes % 2 == 1]
        odd_flags[(odds - 1) // 2] = True
        packed = np.packbits(odd_flags, bitorder="little")
        with open(path, "wb") as fh:
            fh.write(_CACHE_MAGIC)
            fh.write(struct.pack("<IQ", _CACHE_VERSION, self.limit))
            fh.write(struct.pack("<B", 1 if self.limit >= 2 else 0))
            fh.write(packed.tobytes())

    @classmethod
    def load_cache(cls, path) -> "PrimeCounter":
        path = Path(path)
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _CACHE_MAGIC:
                raise ValueError("not a prime-counter cache file")
            version, limit = struct.unpack("<IQ", fh.read(12))
            if version != _CACHE_VERSION:
                raise ValueError(f"unsupported cache version {version}")
            has_two = struct.unpack("<B", fh.read(1))[0]
            body = np.frombuffer(fh.read(), dtype=np.uint8)
        odd_flags = np.unpackbits(body, bitorder="little")[: (limit // 2) + 1]
        odds = (2 * np.nonzero(odd_flags)[0] + 1).astype(np.int64)
        primes = np.concatenate([[2], odds[odds > 2]]) if has_two else odds
        return cls(limit=limit, _primes=primes.astype(np.int64))


def pi_exact(x, counter: PrimeCounter) -> int:
    """Exact pi(x) from a sieved counter; DomainError above counter.limit."""
    return counter.count(x)


def pi_approx(x) -> float:
    """Smooth approximation to pi(x) for x >= 2 (logarithmic-integral family).

    Uses the Gram-series form of Riemann's R(x) = sum_k (ln x)^k / (k k! zeta(k+1)),
    a mu-weighted combination of li(x^(1/n)); plain li(x) = Ei(ln x) overshoots
    pi(x) by ~0.17% at 1e6 while R(x) stays within a few hundredths of a percent.
    All reports tag values from this function as approximate.
    """
    x = float(x)
    if x < 2.0:
        raise DomainError("pi_approx requires x >= 2")
    lx = math.log(x)
    total = 1.0
    term = 1.0
    for k in range(1, 200):
        term *= lx / k
        add = term / (k * sps.zeta(k + 1))
        total += add
        if add < 1e-16 * abs(total) and k > lx:
            break
    return total
