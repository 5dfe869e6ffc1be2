"""Hardy Z-function and |zeta(1/2+it)|^2 on the critical line, plus zero location.

Two evaluation backends sit behind ``hardy_z``:

* an Euler-Maclaurin summation in double precision, used for ordinates below
  ``RS_MIN_T`` where the Riemann-Siegel main sum is too short to be corrected
  cheaply, and
* the Riemann-Siegel formula with remainder terms C0..C4 (Chebyshev tables in
  ``_rs_coeffs``) above it.

Both accept scalars or numpy arrays; everything here is a pure function of its
inputs (no caches, safe to call from worker threads).  The separate
``euler_maclaurin_zeta_sq`` oracle re-implements the Euler-Maclaurin sum in
mpmath arbitrary precision; it costs O(t) per call and exists for tests and
calibration only.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.special as sps

from ._rs_coeffs import TABLES as _RS_TABLES
from .errors import DomainError, PrecisionLossWarning, SearchExhaustedError

__all__ = [
    "CriticalPoint",
    "ZeroPair",
    "RS_MIN_T",
    "rs_theta",
    "hardy_z",
    "zeta_sq",
    "euler_maclaurin_zeta_sq",
    "find_zero_pair",
    "scan_zeros",
    "zero_count_estimate",
]

LN_2PI = math.log(2.0 * math.pi)

# Backend switch: below this ordinate the Riemann-Siegel main sum has too few
# terms for the C0..C4 remainder to reach ~1e-9 absolute accuracy, so the
# double-precision Euler-Maclaurin path is used instead.
RS_MIN_T = 3000.0

# Remainder magnitude bound c * (t/2pi)^(-11/4) after the C4 term (empirical
# constant with margin; used only for the precision-loss warning).
_RS_REMAINDER_COEFF = 0.05

# B_{2k}/(2k)! for k = 1..12, enough Euler-Maclaurin corrections for N ~ t.
_B2K_OVER_FACT = np.array([
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
])


@dataclass(frozen=True)
class CriticalPoint:
    """One evaluated ordinate: t, Z(t) and Z(t)^2 = |zeta(1/2+it)|^2."""

    t: float
    z: float

    @property
    def zeta_sq(self) -> float:
        return self.z * self.z


@dataclass(frozen=True)
class ZeroPair:
    """Consecutive zeros gamma < gamma_prime of Z with refinement residuals."""

    gamma: float
    gamma_prime: float
    refinement_residual: float

    def __post_init__(self):
        if not self.gamma < self.gamma_prime:
            raise ValueError("zero pair must be ordered")


def _as_array(t):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    return arr, np.isscalar(t) or np.ndim(t) == 0


def rs_theta(t):
    """Riemann-Siegel phase theta(t) for t >= 2 (scalar or array).

    Uses the asymptotic log-Gamma expansion for t >= 10 (absolute error below
    1e-13 there) and scipy's complex log-Gamma below.
    """
    arr, scalar = _as_array(t)
    if np.any(arr < 2.0):
        raise DomainError("rs_theta requires t >= 2")
    out = _theta_raw(arr)
    return float(out[0]) if scalar else out


def _theta_raw(arr):
    # Internal variant without the domain guard; tolerates t >= 0.
    out = np.empty_like(arr)
    lo = arr < 10.0
    if lo.any():
        out[lo] = sps.loggamma(0.25 + 0.5j * arr[lo]).imag - 0.5 * arr[lo] * math.log(math.pi)
    hi = ~lo
    if hi.any():
        th = arr[hi]
        u2 = 1.0 / (th * th)
        corr = (1.0 / 48.0 + u2 * (7.0 / 5760.0 + u2 * (31.0 / 80640.0
                + u2 * (127.0 / 430080.0 + u2 * (511.0 / 1216512.0))))) / th
        out[hi] = 0.5 * th * (np.log(th) - LN_2PI) - 0.5 * th - math.pi / 8.0 + corr
    return out


def _zeta_half_em_block(ts):
    """zeta(1/2 + i t) for a block of ordinates sharing one truncation N."""
    N = int(math.ceil(max(40.0, float(ts.max())))) + 20
    n = np.arange(1, N, dtype=float)
    logn = np.log(n)
    amp = 1.0 / np.sqrt(n)
    ph = np.outer(ts, logn)
    re = (np.cos(ph) * amp).sum(axis=1)
    im = -(np.sin(ph) * amp).sum(axis=1)
    s = 0.5 + 1j * ts
    total = re + 1j * im
    Nf = float(N)
    Nms = np.exp(-s * math.log(Nf))  # N^{-s}
    total = total + Nf * Nms / (s - 1.0) + 0.5 * Nms
    fac = Nms / Nf                   # N^{-s-2k+1}, starting at k=1
    poch = s.copy()                  # prod_{j=0}^{2k-2} (s+j)
    for k in range(1, 13):
        if k > 1:
            poch = poch * (s + (2 * k - 3)) * (s + (2 * k - 2))
            fac = fac / (Nf * Nf)
        total = total + _B2K_OVER_FACT[k - 1] * poch * fac
    return total


def _z_em(arr):
    """Z(t) by double-precision Euler-Maclaurin; valid for any t >= 0."""
    order = np.argsort(arr)
    ts = arr[order]
    res = np.empty_like(ts)
    i = 0
    while i < len(ts):
        # keep N within ~1.3x of the smallest t in the block
        j = int(np.searchsorted(ts, max(40.0, ts[i] * 1.3 + 20.0), side="right"))
        j = max(j, i + 1)
        block = ts[i:j]
        zeta = _zeta_half_em_block(block)
        th = _theta_raw(block)
        res[i:j] = (np.exp(1j * th) * zeta).real
        i = j
    out = np.empty_like(arr)
    out[order] = res
    return out


def _z_rs(arr, warn_tol=None):
    """Z(t) by the Riemann-Siegel formula with C0..C4 remainder terms."""
    a = np.sqrt(arr / (2.0 * math.pi))
    N = np.floor(a).astype(np.int64)
    p = a - N
    th = _theta_raw(arr)
    out = np.zeros_like(arr)
    for Nv in np.unique(N):
        m = N == Nv
        n = np.arange(1, Nv + 1, dtype=float)
        rows = np.nonzero(m)[0]
        # chunk the (rows x Nv) phase matrix to bound memory
        step = max(1, int(4_000_000 // max(Nv, 1)))
        amp = 1.0 / np.sqrt(n)
        logn = np.log(n)
        for i0 in range(0, len(rows), step):
            idx = rows[i0:i0 + step]
            ph = th[idx][:, None] - arr[idx][:, None] * logn[None, :]
            out[idx] = 2.0 * (np.cos(ph) * amp[None, :]).sum(axis=1)
    u = 2.0 * p - 1.0
    corr = np.zeros_like(arr)
    fac = np.ones_like(arr)
    ainv = 1.0 / a
    for table in _RS_TABLES:
        corr += np.polynomial.chebyshev.chebval(u, table) * fac
        fac = fac * ainv
    out += np.where(N % 2 == 1, 1.0, -1.0) * corr / np.sqrt(a)
    if warn_tol is not None:
        bound = _RS_REMAINDER_COEFF * (arr / (2.0 * math.pi)) ** (-11.0 / 4.0)
        if np.any(bound > warn_tol):
            warnings.warn(
                "Riemann-Siegel remainder estimate exceeds the requested tolerance",
                PrecisionLossWarning,
                stacklevel=3,
            )
    return out


def _z_raw(arr, warn_tol=1e-8):
    """Backend dispatch without the public domain guard (tolerates t >= 0)."""
    out = np.empty_like(arr)
    lo = arr < RS_MIN_T
    if lo.any():
        out[lo] = _z_em(arr[lo])
    if (~lo).any():
        out[~lo] = _z_rs(arr[~lo], warn_tol=warn_tol)
    return out


def hardy_z(t, warn_tol=1e-8):
    """Hardy's Z(t) for t >= 2 (scalar or array), relative error ~1e-8 or better.

    Below ``RS_MIN_T`` the Euler-Maclaurin backend is used (errors near the
    double-precision floor); above it the Riemann-Siegel formula with C0..C4
    corrections.  A ``PrecisionLossWarning`` is emitted if the remainder bound
    exceeds ``warn_tol``.
    """
    arr, scalar = _as_array(t)
    if np.any(arr < 2.0):
        raise DomainError("hardy_z requires t >= 2")
    out = _z_raw(arr, warn_tol=warn_tol)
    return float(out[0]) if scalar else out


def zeta_sq(t):
    """|zeta(1/2+it)|^2 = Z(t)^2 for t >= 2 (scalar or array)."""
    z = hardy_z(t)
    return z * z


def critical_point(t: float) -> CriticalPoint:
    return CriticalPoint(t=float(t), z=float(hardy_z(t)))


def euler_maclaurin_zeta_sq(t: float, dps: int = 30) -> float:
    """|zeta(1/2+it)|^2 by Euler-Maclaurin in mpmath arbitrary precision.

    Slow reference oracle (cost O(t)); relative error well below 1e-12.
    Independent of the double-precision production path: same formula family
    but separate arithmetic, truncation and correction order.
    """
    import mpmath as mp

    t = float(t)
    if t < 2.0:
        raise DomainError("euler_maclaurin_zeta_sq requires t >= 2")
    with mp.workdps(dps):
        s = mp.mpc(mp.mpf("0.5"), mp.mpf(t))
        N = int(math.ceil(1.1 * t)) + 50
        total = mp.mpf(0)
        for n in range(1, N):
            total += mp.exp(-s * mp.log(n))
        Nf = mp.mpf(N)
        Nms = mp.exp(-s * mp.log(Nf))
        total += Nf * Nms / (s - 1) + Nms / 2
        fac = Nms / Nf
        poch = s
        for k in range(1, 15):
            if k > 1:
                poch = poch * (s + (2 * k - 3)) * (s + (2 * k - 2))
                fac = fac / (Nf * Nf)
            total += mp.bernoulli(2 * k) / mp.factorial(2 * k) * poch * fac
        return float(total.real ** 2 + total.imag ** 2)


def zero_count_estimate(T: float) -> float:
    """Riemann-von Mangoldt main term N(T) ~ (T/2pi) ln(T/2pi) - T/2pi + 7/8."""
    x = T / (2.0 * math.pi)
    return x * math.log(x) - x + 7.0 / 8.0


def _refine_zero(lo, hi, f, residual_tol=1e-9, max_iter=200):
    """Bisection plus secant polish of a sign change of f on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, 0.0
    if fhi == 0.0:
        return hi, 0.0
    if flo * fhi > 0.0:
        raise ValueError("no sign change inside bracket")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) <= residual_tol or (hi - lo) < 1e-14 * max(1.0, abs(mid)):
            break
        if flo * fmid < 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    # secant polish from the bracket endpoints
    x0, x1, f0, f1 = lo, hi, flo, fhi
    best_x, best_f = (x0, f0) if abs(f0) < abs(f1) else (x1, f1)
    for _ in range(60):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (min(lo, hi) - 1.0 <= x2 <= max(lo, hi) + 1.0):
            break
        f2 = f(x2)
        if abs(f2) < abs(best_f):
            best_x, best_f = x2, f2
        if abs(f2) <= residual_tol * 0.01:
            break
        x0, f0, x1, f1 = x1, f1, x2, f2
    return best_x, abs(best_f)


def _scan_grid(lo: float, hi: float, step: float | None, per_gap: float = 8.0):
    """Scan ordinates with a locally adapted step (a fraction of the mean gap)."""
    if step is not None:
        return np.arange(lo, hi + step, step)
    pieces = []
    a = lo
    while a < hi:
        gap = 2.0 * math.pi / math.log(max(a, 20.0) / (2.0 * math.pi) + 2.0)
        h = gap / per_gap
        # short pieces keep the step tracking the local zero spacing
        b = min(hi, a + 128.0 * h)
        npts = max(1, int(math.ceil((b - a) / h)))
        pieces.append(np.linspace(a, b, npts, endpoint=False))
        a = b
    pieces.append(np.array([hi]))
    return np.concatenate(pieces)


def scan_zeros(t_start: float, t_stop: float, step: float | None = None,
               residual_tol: float = 1e-9):
    """All zeros of Z on [t_start, t_stop], refined to |Z| <= residual_tol.

    The default scan step is an eighth of the local mean zero gap; sign
    changes narrower than the step would still be missed (heuristic; the
    Riemann-von Mangoldt count invariant is the safety net in the tests).
    """
    if t_stop <= t_start:
        return []
    lo = max(2.0, t_start)
    grid = _scan_grid(lo, t_stop, step)
    vals = _z_raw(grid)
    zeros = []
    f = lambda x: float(_z_raw(np.array([x]))[0])
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            zeros.append((float(grid[i]), 0.0))
        elif vals[i] * vals[i + 1] < 0.0:
            root, res = _refine_zero(float(grid[i]), float(grid[i + 1]), f,
                                     residual_tol=residual_tol)
            zeros.append((root, res))
    return [(r, e) for r, e in zeros if t_start <= r <= t_stop]


def find_zero_pair(t_start: float, span: float | None = None,
                   residual_tol: float = 1e-9) -> ZeroPair:
    """First pair of consecutive zeros of Z at or after t_start (t_start >= 10).

    Scans with step pi / (2 ln t_start) and refines each sign change by
    bisection + secant to |Z| <= residual_tol.  Raises SearchExhaustedError if
    fewer than two zeros appear within ``span`` (default: 100 average gaps).
    """
    t_start = float(t_start)
    if t_start < 10.0:
        raise DomainError("find_zero_pair requires t_start >= 10")
    avg_gap = 2.0 * math.pi / math.log(t_start / (2.0 * math.pi))
    if span is None:
        span = 100.0 * avg_gap
    step = math.pi / (2.0 * math.log(t_start))
    t_lo = t_start
    found = []
    while t_lo < t_start + span and len(found) < 2:
        t_hi = min(t_start + span, t_lo + 20.0 * avg_gap)
        for root, res in scan_zeros(t_lo, t_hi, step=step, residual_tol=residual_tol):
            if root >= t_start and (not found or root > found[-1][0] + 1e-10):
                found.append((root, res))
                if len(found) == 2:
                    break
        t_lo = t_hi
    if len(found) < 2:
        raise SearchExhaustedError(
            f"no zero pair within span {span:.1f} after t={t_start}")
    (g1, r1), (g2, r2) = found[0], found[1]
    return ZeroPair(gamma=g1, gamma_prime=g2, refinement_residual=max(r1, r2))
