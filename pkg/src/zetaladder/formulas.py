"""Product integrals over iterate windows and the formula-verification suite.

Every operation takes an immutable LadderModel plus window parameters and
returns value records.  Integrands are products of |zeta(1/2 + i phi1^k(t))|^2
factors (optionally the normalized variant ztilde^2 = dphi1/dt); the iterate
chain is computed once per evaluation wave and shared between factors.

Record of one check: ``RatioRecord`` holds both sides, their ratio and the
propagated quadrature error estimate.  Exact identities must come out at
ratio = 1 within the propagated estimate; asymptotic formulas are judged by
desk-scale tolerance bands and by trends across T sweeps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .critical_line import _z_raw
from .errors import AdmissibilityError, BracketingError, InvalidPartitionError
from .ladder import (EULER_C, F_prime, LadderModel, admissible_u_max,
                     disconnected_set)
from .quadrature import QuadratureConfig, QuadratureResult, integrate_adaptive, panel_cap

__all__ = [
    "RatioRecord",
    "MeanValueWitness",
    "GeoMeanReport",
    "product_integral",
    "product_integral_ztilde",
    "verify_identity_61",
    "conjugate_ratio",
    "zero_gap_experiment",
    "factorization_ratio",
    "external_mean_value",
    "geometric_mean_report",
    "proof_chain_check",
    "rh_gap_table",
    "RhGapRow",
]


@dataclass(frozen=True)
class RatioRecord:
    """One verification datum: lhs, rhs, their ratio and an error estimate."""

    label: str
    T: float
    U: float
    l: int
    n: int
    lhs: float
    rhs: float
    ratio: float
    est_error: float

    @classmethod
    def build(cls, label, T, U, l, n, lhs, rhs, est_error):
        ratio = lhs / rhs if rhs != 0.0 else math.inf
        return cls(label=label, T=float(T), U=float(U), l=int(l), n=int(n),
                   lhs=float(lhs), rhs=float(rhs), ratio=float(ratio),
                   est_error=float(est_error))


@dataclass(frozen=True)
class MeanValueWitness:
    """Sample point t_l with its iterate images tau_k and the replay residual."""

    l: int
    side: str                      # "left-of-3.3" or "right-of-3.4"
    t_witness: float
    taus: tuple                    # (k, tau_k, host_lo, host_hi) rows
    target: float
    attained: float
    residual: float


@dataclass(frozen=True)
class GeoMeanReport:
    """Geometric means of |zeta| blocks and the (l!)^2 ordering inequalities."""

    l: int
    g_low: float                   # G over tau_0..tau_{l-1}
    g_high: float                  # G over tau_l..tau_{2l-1}
    omega: float
    am_gm_margins: tuple           # AM - GM >= 0 for every ordering (exact)
    conditional_margins: tuple     # AM - (1-eps) Omega_l per ordering
    epsilon: float

    @property
    def am_gm_ok(self) -> bool:
        return all(m >= -1e-12 for m in self.am_gm_margins)

    @property
    def conditional_ok(self) -> bool:
        return all(m > 0.0 for m in self.conditional_margins)


# --- core integrand machinery ---------------------------------------------

def _chain(model: LadderModel, pts: np.ndarray, depth: int):
    """Iterate chain [pts, phi1(pts), ..., phi1^depth(pts)] computed once."""
    levels = [pts]
    cur = pts
    for _ in range(depth):
        cur = np.atleast_1d(model.value(cur))
        levels.append(cur)
    return levels


def _product_integrand(model, kcount, base_depth=0, ztilde=False,
                       extra_ztilde_depths=()):
    """Vectorized integrand for prod_{k=base}^{base+kcount-1} of the factors.

    With ``ztilde`` each factor is Z~^2(phi1^k(t)) = Z^2 / F'(phi1^{k+1}-level);
    otherwise plain |zeta|^2 factors.  ``extra_ztilde_depths`` multiplies in
    additional Z~^2(phi1^j(t)) weights (used by substitution-consistency
    checks, where they represent d phi1^l / dt).  Z^2 goes through the model's
    cell interpolants, which are the exact derivative of the cumulative moment
    the iterates are built from; that consistency is what makes the pure
    change-of-variables checks come out at quadrature accuracy.
    """
    max_depth = base_depth + kcount - 1
    need_above = 1 if (ztilde or extra_ztilde_depths) else 0
    top = max(max_depth + need_above,
              (max(extra_ztilde_depths) + 1) if extra_ztilde_depths else 0)
    zsq = model.zsq_cells

    def f(pts):
        levels = _chain(model, pts, top)
        out = np.ones_like(pts)
        for k in range(base_depth, base_depth + kcount):
            if ztilde:
                out = out * zsq(levels[k]) / F_prime(levels[k + 1])
            else:
                out = out * zsq(levels[k])
        for j in extra_ztilde_depths:
            out = out * zsq(levels[j]) / F_prime(levels[j + 1])
        return out

    return f


def _integrate_product(model, a, b, kcare, integrand, quad: QuadratureConfig):
    """Adaptive integral with the initial panel cap set by the fastest factor."""
    width = panel_cap(max(b, kcare), quad.oscillation_density)
    return integrate_adaptive(integrand, a, b, quad, init_width=width)


def product_integral(model: LadderModel, a: float, b: float, k_count: int,
                     quad: QuadratureConfig | None = None,
                     with_error: bool = False):
    """int_a^b prod_{k=0}^{k_count-1} |zeta(1/2 + i phi1^k(t))|^2 dt."""
    if k_count < 1:
        raise ValueError("k_count must be >= 1")
    quad = quad or QuadratureConfig()
    if b <= a:
        return (0.0, 0.0) if with_error else 0.0
    res = _integrate_product(model, a, b, b,
                             _product_integrand(model, k_count), quad)
    return (res.value, res.est_rel_error) if with_error else res.value


def product_integral_ztilde(model: LadderModel, a: float, b: float, k_count: int,
                            quad: QuadratureConfig | None = None,
                            with_error: bool = False):
    """Same as product_integral but with ztilde^2 = dphi1/dt factors."""
    if k_count < 1:
        raise ValueError("k_count must be >= 1")
    quad = quad or QuadratureConfig()
    if b <= a:
        return (0.0, 0.0) if with_error else 0.0
    res = _integrate_product(model, a, b, b,
                             _product_integrand(model, k_count, ztilde=True), quad)
    return (res.value, res.est_rel_error) if with_error else res.value


def _check_admissible(T, U):
    if not 0.0 < U <= admissible_u_max(T):
        raise AdmissibilityError(
            f"U={U} outside (0, T/ln^2 T]={admissible_u_max(T):.4f} at T={T}")


# --- exact identity ---------------------------------------------------------

def verify_identity_61(model: LadderModel, T: float, U: float, n: int, l: int,
                       quad: QuadratureConfig | None = None) -> RatioRecord:
    """Exact change-of-variables identity between conjugate ztilde products.

    int_T^{T+U} prod_{k=0}^{n} Z~^2(phi1^k(t)) dt
        = int_{phi1^l(T)}^{phi1^l(T+U)} prod_{k=0}^{n-l} Z~^2(phi1^k(u)) du,

    so the ratio must equal 1 within the combined quadrature estimate (this is
    a pure substitution, not an asymptotic statement).
    """
    if not 1 <= l <= n:
        raise ValueError("identity requires 1 <= l <= n")
    _check_admissible(T, U)
    quad = quad or QuadratureConfig(rel_tol=1e-7)
    lhs = _integrate_product(model, T, T + U, T + U,
                             _product_integrand(model, n + 1, ztilde=True), quad)
    aL = model.iterate(T, l)
    bL = model.iterate(T + U, l)
    rhs = _integrate_product(model, aL, bL, T + U,
                             _product_integrand(model, n - l + 1, ztilde=True), quad)
    return RatioRecord.build("identity-6.1", T, U, l, n, lhs.value, rhs.value,
                             abs(lhs.value / rhs.value) * (lhs.est_rel_error + rhs.est_rel_error))


# --- asymptotic transformation formula --------------------------------------

def conjugate_ratio(model: LadderModel, T: float, U: float, l: int,
                    quad: QuadratureConfig | None = None,
                    label: str = "thm-2.1") -> RatioRecord:
    """Conjugate-integral transformation: ratio of the two sides, -> 1 as T grows.

    lhs: int over [phi1^l(T), phi1^l(T+U)] of prod_{k=0}^{l-1} |zeta|^2 factors;
    rhs: (phi1^{2l}(T+U) - phi1^{2l}(T)) / (phi1^l(T+U) - phi1^l(T)) times the
    same product integral over [T, T+U].
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    _check_admissible(T, U)
    quad = quad or QuadratureConfig()
    aL = model.iterate(T, l)
    bL = model.iterate(T + U, l)
    a2 = model.iterate(aL, l)
    b2 = model.iterate(bL, l)
    lhs = _integrate_product(model, aL, bL, T + U,
                             _product_integrand(model, l), quad)
    base = _integrate_product(model, T, T + U, T + U,
                              _product_integrand(model, l), quad)
    coeff = (b2 - a2) / (bL - aL)
    rhs_val = coeff * base.value
    return RatioRecord.build(label, T, U, l, 2 * l - 1, lhs.value, rhs_val,
                             abs(lhs.value / rhs_val)
                             * (lhs.est_rel_error + base.est_rel_error))


def zero_gap_experiment(model: LadderModel, gamma: float, gamma_prime: float,
                        l: int = 7, quad: QuadratureConfig | None = None) -> RatioRecord:
    """Conjugate ratio on the window between two consecutive zeros.

    T = gamma, U = gamma' - gamma; the k = 0 integrand factor vanishes at both
    endpoints, which Gauss-Legendre panels (interior nodes) handle directly.
    No reference value exists for this regime; the record is the result.
    """
    if gamma_prime <= gamma:
        raise ValueError("need gamma < gamma_prime")
    return conjugate_ratio(model, gamma, gamma_prime - gamma, l, quad,
                           label=f"zero-gap-2.2-l{l}")


# --- factorization -----------------------------------------------------------

def factorization_ratio(model: LadderModel, T: float, U: float, n: int,
                        partition, quad: QuadratureConfig | None = None) -> RatioRecord:
    """Weighted mean-value factorization across a proper partition of n+1.

    lhs: g_{n+1} (1/U) int prod_{k=0}^{n}; rhs: product over parts a of
    g_a (1/U) int prod_{k=0}^{a-1}, with g_m = U / (phi1^m(T+U) - phi1^m(T)).
    The trivial partition (n+1) itself is excluded.
    """
    parts = list(partition)
    if sorted(parts) == [n + 1] or not parts:
        raise InvalidPartitionError("partition n+1 = n+1 is excluded")
    if sum(parts) != n + 1 or any(not 1 <= a <= n for a in parts):
        raise InvalidPartitionError(
            f"parts {parts} must lie in [1, {n}] and sum to {n + 1}")
    _check_admissible(T, U)
    quad = quad or QuadratureConfig()

    def g(m):
        return U / (model.iterate(T + U, m) - model.iterate(T, m))

    integrals = {}
    errors = {}
    for m in set(parts) | {n + 1}:
        res = _integrate_product(model, T, T + U, T + U,
                                 _product_integrand(model, m), quad)
        integrals[m], errors[m] = res.value, res.est_rel_error
    lhs = g(n + 1) * integrals[n + 1] / U
    rhs = 1.0
    rel = errors[n + 1]
    for a in parts:
        rhs *= g(a) * integrals[a] / U
        rel += errors[a]
    label = "factorization-1.7-" + "+".join(str(a) for a in sorted(parts))
    return RatioRecord.build(label, T, U, 0, n, lhs, rhs,
                             abs(lhs / rhs) * rel)


# --- external mean values -----------------------------------------------------

def _window_mean_target(model, T, U, l, variant, quad):
    """Exact integral mean whose attainment defines the witness."""
    if variant == "cor1":
        aL = model.iterate(T, l)
        bL = model.iterate(T + U, l)
        res = _integrate_product(model, aL, bL, T + U,
                                 _product_integrand(model, l), quad)
        return res.value / (bL - aL), res.est_rel_error
    if variant == "cor2":
        res = _integrate_product(model, T, T + U, T + U,
                                 _product_integrand(model, l), quad)
        return res.value / U, res.est_rel_error
    raise ValueError("variant must be 'cor1' or 'cor2'")


def external_mean_value(model: LadderModel, T: float, U: float, l: int,
                        variant: str = "cor1",
                        quad: QuadratureConfig | None = None,
                        profile_points: int = 512,
                        residual_tol: float = 1e-9) -> MeanValueWitness:
    """Find t_l in (T, T+U) attaining the mean of the conjugate product.

    variant "cor1": the profile is G(t) = prod_{k=l}^{2l-1} |zeta(phi1^k(t))|^2
    and the target is the integral mean of the conjugate integral over
    [phi1^l(T), phi1^l(T+U)] (the mean-value theorem guarantees attainment,
    since the profile is that integrand composed with a monotone map).
    variant "cor2": profile prod_{k=0}^{l-1}, target the mean over [T, T+U].
    Emits tau_k = phi1^k(t_l) for the corresponding depth block.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    _check_admissible(T, U)
    quad = quad or QuadratureConfig()
    target, target_err = _window_mean_target(model, T, U, l, variant, quad)
    base = l if variant == "cor1" else 0
    integrand = _product_integrand(model, l, base_depth=base)

    # dense profile scan, then Brent-style bisection on the bracketing cell
    ts = np.linspace(T, T + U, profile_points)
    prof = integrand(ts) - target
    idx = None
    for i in range(len(ts) - 1):
        if prof[i] == 0.0 or prof[i] * prof[i + 1] < 0.0:
            idx = i
            break
    if idx is None:
        raise BracketingError(
            f"mean target {target:.6g} not bracketed on the {profile_points}-point "
            f"profile (range [{prof.min() + target:.6g}, {prof.max() + target:.6g}])")
    lo, hi = float(ts[idx]), float(ts[idx + 1])
    flo = float(prof[idx])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = float(integrand(np.array([mid]))[0]) - target
        if abs(fmid) <= residual_tol * abs(target):
            lo = hi = mid
            break
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    t_w = 0.5 * (lo + hi)
    attained = float(integrand(np.array([t_w]))[0])
    ks = range(l, 2 * l) if variant == "cor1" else range(0, l)
    taus = []
    for k in ks:
        tau = model.iterate(t_w, k)
        host_lo = model.iterate(T, k)
        host_hi = model.iterate(T + U, k)
        taus.append((k, float(tau), float(host_lo), float(host_hi)))
    side = "left-of-3.3" if variant == "cor1" else "right-of-3.4"
    return MeanValueWitness(l=l, side=side, t_witness=float(t_w), taus=tuple(taus),
                            target=float(target), attained=attained,
                            residual=abs(attained - target) / abs(target))


# --- geometric means and the (l!)^2 inequalities ------------------------------

def omega_factor(model: LadderModel, T: float, U: float, l: int) -> float:
    """Scaling factor {(phi1^l dT) / sqrt((phi1^{2l} dT) U)}^{1/l}."""
    dl = model.iterate(T + U, l) - model.iterate(T, l)
    d2l = model.iterate(T + U, 2 * l) - model.iterate(T, 2 * l)
    return (dl / math.sqrt(d2l * U)) ** (1.0 / l)


def _midpoint_taus(model, T, U, l):
    """tau_k at host-interval midpoints for k = 0..2l-1 (no witness mode)."""
    mid = T + 0.5 * U
    return [model.iterate(mid, k) for k in range(2 * l)]


def geometric_mean_report(model: LadderModel, T: float, U: float, l: int,
                          witnesses=None, epsilon: float = 0.1) -> GeoMeanReport:
    """Geometric means of the two |zeta| blocks and all (l!)^2 inequalities.

    tau values come from a (cor2, cor1) witness pair when given, otherwise
    from host-interval midpoints (documented sampling mode; the underlying
    existence statement is not constructive about tau).  The AM >= GM margins
    are exact inequalities and must be nonnegative for any tau; the
    conditional margins compare each ordering's AM against (1-eps) Omega_l.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if witnesses is not None:
        w_low, w_high = witnesses
        taus_low = [tau for _, tau, _, _ in w_low.taus]
        taus_high = [tau for _, tau, _, _ in w_high.taus]
        if len(taus_low) != l or len(taus_high) != l:
            raise ValueError("witness pair does not match l")
    else:
        taus = _midpoint_taus(model, T, U, l)
        taus_low, taus_high = taus[:l], taus[l:]
    zlow = np.abs(_z_raw(np.asarray(taus_low, dtype=float)))
    zhigh = np.abs(_z_raw(np.asarray(taus_high, dtype=float)))
    if np.any(zhigh == 0.0):
        raise ZeroDivisionError("a tau in the upper block hits a zeta zero")
    g_low = float(np.exp(np.mean(np.log(zlow))))
    g_high = float(np.exp(np.mean(np.log(zhigh))))
    omega = omega_factor(model, T, U, l)
    ratios_gm = float(np.exp(np.mean(np.log(zlow / zhigh))))
    am_margins = []
    cond_margins = []
    for sigma in itertools.permutations(range(l)):
        for pi in itertools.permutations(range(l)):
            am = float(np.mean(zlow[list(sigma)] / zhigh[list(pi)]))
            am_margins.append(am - ratios_gm)
            cond_margins.append(am - (1.0 - epsilon) * omega)
    return GeoMeanReport(l=l, g_low=g_low, g_high=g_high, omega=omega,
                         am_gm_margins=tuple(am_margins),
                         conditional_margins=tuple(cond_margins),
                         epsilon=epsilon)


# --- proof chain ---------------------------------------------------------------

def proof_chain_check(model: LadderModel, T: float, U: float, n: int, l: int,
                      quad: QuadratureConfig | None = None):
    """Numerical ratio for each asymptotic step used to prove the theorem.

    Steps (labels): chain-6.3, chain-6.4, chain-6.5 for general (n, l) and
    chain-6.6 for n = 2l - 1.  Ratios are expected near 1, with tolerance
    widening as factors accumulate.  The degenerate case n = 0 emits only the
    chain-6.4 record (the classical second-moment asymptotic).
    """
    if n < 0 or (n > 0 and not 1 <= l <= n):
        raise ValueError("proof chain requires n = 0 or 1 <= l <= n")
    _check_admissible(T, U)
    quad = quad or QuadratureConfig()
    lnT = math.log(T)
    records = []

    full = _integrate_product(model, T, T + U, T + U,
                              _product_integrand(model, n + 1), quad)

    if n == 0:
        d1 = model.iterate(T + U, 1) - model.iterate(T, 1)
        rhs = d1 * lnT
        return [RatioRecord.build("chain-6.4", T, U, 0, 0, full.value, rhs,
                                  abs(full.value / rhs) * full.est_rel_error)]

    # (6.3): full ~ ln^l T * int over phi1^l window of n-l+1 factors
    aL = model.iterate(T, l)
    bL = model.iterate(T + U, l)
    part = _integrate_product(model, aL, bL, T + U,
                              _product_integrand(model, n - l + 1), quad)
    rhs = lnT ** l * part.value
    records.append(RatioRecord.build("chain-6.3", T, U, l, n, full.value, rhs,
                                     abs(full.value / rhs)
                                     * (full.est_rel_error + part.est_rel_error)))

    # (6.4): full ~ (phi1^{n+1}(T+U) - phi1^{n+1}(T)) ln^{n+1} T
    dnp1 = model.iterate(T + U, n + 1) - model.iterate(T, n + 1)
    rhs = dnp1 * lnT ** (n + 1)
    records.append(RatioRecord.build("chain-6.4", T, U, l, n, full.value, rhs,
                                     abs(full.value / rhs) * full.est_rel_error))

    # (6.5): dnp1 * full ~ (int over phi1^l, n-l+1 factors)
    #                      * (int over phi1^{n+1-l}, l factors)
    aM = model.iterate(T, n + 1 - l)
    bM = model.iterate(T + U, n + 1 - l)
    other = _integrate_product(model, aM, bM, T + U,
                               _product_integrand(model, l), quad)
    lhs = dnp1 * full.value
    rhs = part.value * other.value
    records.append(RatioRecord.build("chain-6.5", T, U, l, n, lhs, rhs,
                                     abs(lhs / rhs)
                                     * (full.est_rel_error + part.est_rel_error
                                        + other.est_rel_error)))

    # (6.6): only for n = 2l-1: conjugate integral ~ (phi1^{2l} dT) ln^l T
    if n == 2 * l - 1:
        conj = _integrate_product(model, aL, bL, T + U,
                                  _product_integrand(model, l), quad)
        d2l = model.iterate(T + U, 2 * l) - model.iterate(T, 2 * l)
        rhs = d2l * lnT ** l
        records.append(RatioRecord.build("chain-6.6", T, U, l, n, conj.value, rhs,
                                         abs(conj.value / rhs) * conj.est_rel_error))
    return records


# --- conditional gap table ------------------------------------------------------

@dataclass(frozen=True)
class RhGapRow:
    """One level of the gap table: measured vs conditional envelopes."""

    k: int
    gap: float
    envelope: float                # U * T^(1 / sqrt(ln ln T))
    per_level: float               # (U / ln^k T) * T^(2 k A / ln ln T)
    gap_ratio_prev: float          # gap_k / gap_{k-1} (observation column)


def rh_gap_table(model: LadderModel, T: float, U: float, L0: int,
                 A: float = 1.0, eps0: float = 1.0 / 12.0):
    """Tabulate phi1^k(T+U) - phi1^k(T) for k = 1..L0 with conditional envelopes.

    Admissible U: (0, T^(1/3 - eps0)].  Report-only: the envelopes are
    asymptotic and A is a free parameter, so no pass/fail verdicts here.
    """
    u_cap = T ** (1.0 / 3.0 - eps0)
    if not 0.0 < U <= u_cap:
        raise AdmissibilityError(f"U={U} outside (0, T^(1/3-eps0)]={u_cap:.4f}")
    lnT = math.log(T)
    lnlnT = math.log(lnT)
    envelope = U * T ** (1.0 / math.sqrt(lnlnT))
    rows = []
    prev_gap = None
    lo, hi = T, T + U
    for k in range(1, L0 + 1):
        lo = model.value(lo)
        hi = model.value(hi)
        gap = hi - lo
        per_level = (U / lnT ** k) * T ** (2.0 * k * A / lnlnT)
        rows.append(RhGapRow(k=k, gap=float(gap), envelope=float(envelope),
                             per_level=float(per_level),
                             gap_ratio_prev=float(gap / prev_gap) if prev_gap else float("nan")))
        prev_gap = gap
    return rows
