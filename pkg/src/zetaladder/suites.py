"""Verification suites: named bundles of checks with hard/soft verdicts.

A suite returns its records plus two failure lists: ``hard`` failures break
exact identities or proven inequalities (nonzero exit, a bug or a genuinely
violated bound), ``soft`` failures are asymptotic trend expectations that a
desk-scale window can legitimately miss (flagged, exit code 1).

Tolerance bands used for the asymptotic single-window checks (desk scale):
30% for single-factor formulas and 50% for multi-factor ones, per-record
quadrature estimates carried separately in est_error.
"""

from __future__ import annotations

import math

import numpy as np

from . import formulas
from .critical_line import find_zero_pair
from .ladder import admissible_u_max, check_set_properties, disconnected_set
from .primes import PrimeCounter
from .quadrature import QuadratureConfig

__all__ = ["SUITES", "run_suite", "u_from_policy", "theorem_band"]

T_SWEEP = (1e4, 1e5, 1e6)


def u_from_policy(T: float, policy: str) -> float:
    """Window length from a named policy: max = T/ln^2 T, sqrt = sqrt(T), unit = 1."""
    if policy == "max":
        return admissible_u_max(T)
    if policy == "sqrt":
        return math.sqrt(T)
    if policy == "unit":
        return 1.0
    raise ValueError(f"unknown U policy {policy!r}")


def theorem_band(l: int):
    """Desk-scale acceptance band for the transformation-formula ratio."""
    bands = {1: (0.7, 1.3), 2: (0.6, 1.6), 3: (0.5, 2.0)}
    return bands.get(l, (0.5, 2.0))


def _trend_ok(ratios):
    """|ratio - 1| non-increasing along the sweep."""
    devs = [abs(r - 1.0) for r in ratios]
    return all(devs[i + 1] <= devs[i] + 1e-15 for i in range(len(devs) - 1))


# --- individual suites ------------------------------------------------------

def suite_identity_61(model, T, U, l=None, n=None, quad=None, tol=1e-5):
    quad = quad or QuadratureConfig(rel_tol=1e-7)
    records, hard, soft = [], [], []
    pairs = ([(n, l)] if (l and n) else
             [(nn, ll) for nn in range(1, 5) for ll in range(1, nn + 1)])
    for nn, ll in pairs:
        rec = formulas.verify_identity_61(model, T, U, nn, ll, quad)
        records.append(rec)
        if abs(rec.ratio - 1.0) > max(tol, 3.0 * rec.est_error):
            hard.append(f"identity-6.1 n={nn} l={ll}: |ratio-1|={abs(rec.ratio-1):.2e}")
    return records, hard, soft


def suite_theorem_21(model, T, U_policy="max", ls=(1, 2, 3), quad=None,
                     T_values=None):
    quad = quad or QuadratureConfig()
    records, hard, soft = [], [], []
    Ts = T_values if T_values is not None else ([T] if T else list(T_SWEEP))
    for l in ls:
        fam = []
        for Tc in Ts:
            rec = formulas.conjugate_ratio(model, Tc, u_from_policy(Tc, U_policy), l, quad)
            records.append(rec)
            fam.append(rec.ratio)
            lo, hi = theorem_band(l)
            if not lo <= rec.ratio <= hi:
                hard.append(f"thm-2.1 l={l} T={Tc:g}: ratio={rec.ratio:.4f} outside [{lo},{hi}]")
        if len(fam) >= 2 and not _trend_ok(fam):
            soft.append(f"thm-2.1 l={l}: |ratio-1| not non-increasing over T sweep")
    return records, hard, soft


def suite_factorization_17(model, T, U, quad=None, cases=None):
    quad = quad or QuadratureConfig()
    records, hard, soft = [], [], []
    cases = cases or [(1, (1, 1)), (2, (1, 2)), (2, (1, 1, 1))]
    for n, parts in cases:
        rec = formulas.factorization_ratio(model, T, U, n, parts, quad)
        records.append(rec)
        if not (np.isfinite(rec.ratio) and rec.ratio > 0.0):
            hard.append(f"{rec.label}: non-finite or non-positive ratio")
        elif not 0.5 <= rec.ratio <= 2.0:
            hard.append(f"{rec.label}: ratio={rec.ratio:.4f} outside [0.5, 2.0]")
    return records, hard, soft


def suite_mean_values(model, T, U, ls=(1, 2), quad=None):
    quad = quad or QuadratureConfig()
    records, hard, soft = [], [], []
    for l in ls:
        for variant in ("cor1", "cor2"):
            w = formulas.external_mean_value(model, T, U, l, variant, quad)
            records.append(w)
            if w.residual > 1e-9:
                hard.append(f"{variant} l={l}: replay residual {w.residual:.2e} > 1e-9")
            for k, tau, lo, hi in w.taus:
                if not lo < tau < hi:
                    hard.append(f"{variant} l={l}: tau_{k} not strictly inside host")
    return records, hard, soft


def suite_geo_means(model, T, U, quad=None, epsilon=0.1, cond_epsilon=0.3,
                    witness_ls=(1, 2), midpoint_ls=(3, 4)):
    quad = quad or QuadratureConfig()
    records, hard, soft = [], [], []
    for l in witness_ls:
        w2 = formulas.external_mean_value(model, T, U, l, "cor2", quad)
        w1 = formulas.external_mean_value(model, T, U, l, "cor1", quad)
        rep = formulas.geometric_mean_report(model, T, U, l, witnesses=(w2, w1),
                                             epsilon=cond_epsilon)
        records.append(rep)
        if not rep.am_gm_ok:
            hard.append(f"geo-means l={l}: AM >= GM margin below -1e-12")
        if not rep.conditional_ok:
            hard.append(f"geo-means l={l}: conditional inequality fails at eps={cond_epsilon}")
    for l in midpoint_ls:
        rep = formulas.geometric_mean_report(model, T, U, l, epsilon=epsilon)
        records.append(rep)
        if not rep.am_gm_ok:
            hard.append(f"geo-means l={l} (midpoint taus): AM >= GM margin below -1e-12")
    return records, hard, soft


def suite_proof_chain(model, T, U_policy="max", n=3, l=2, quad=None,
                      T_values=None, second_moment_band=(0.9, 1.1)):
    quad = quad or QuadratureConfig()
    records, hard, soft = [], [], []
    Ts = T_values if T_values is not None else ([T] if T else list(T_SWEEP))
    families = {}
    for Tc in Ts:
        U = u_from_policy(Tc, U_policy)
        recs = formulas.proof_chain_check(model, Tc, U, 0, 0, quad)
        if Tc == 1e5 or len(Ts) == 1:
            r = recs[0]
            lo, hi = second_moment_band
            if not lo <= r.ratio <= hi:
                hard.append(f"chain-6.4 n=0 T={Tc:g}: ratio={r.ratio:.4f} outside [{lo},{hi}]")
        records.extend(recs)
        recs = formulas.proof_chain_check(model, Tc, U, n, l, quad)
        records.extend(recs)
        for r in recs:
            families.setdefault(r.label, []).append(r.ratio)
    for label, fam in families.items():
        if len(fam) >= 2 and not _trend_ok(fam):
            soft.append(f"{label}: |ratio-1| not non-increasing over T sweep")
    return records, hard, soft


def suite_set_properties(model, T, U, n=3, counter=None, macro_check=None):
    records, hard, soft = [], [], []
    counter = counter or PrimeCounter(limit=int(T) + 1)
    dset = disconnected_set(model, T, U, n)
    rep = check_set_properties(dset, counter)
    records.append(rep)
    if not rep.lengths_ok:
        hard.append(f"set-properties T={T:g} n={n}: component length bound fails")
    if not rep.gaps_ok:
        hard.append(f"set-properties T={T:g} n={n}: gap bound fails")
    if not rep.distances_ok:
        hard.append(f"set-properties T={T:g} n={n}: pi(T)-distance bound fails")
    if macro_check:
        Tm, Um, nm = macro_check
        dm = disconnected_set(model, Tm, Um, nm)
        rm = check_set_properties(dm, counter if counter.limit >= Tm else
                                  PrimeCounter(limit=int(Tm) + 1))
        records.append(rm)
        for r in rm.length_over_u:
            if not 0.9 <= r <= 1.1:
                hard.append(f"macroscopic T={Tm:g} U={Um:g}: length/U={r:.3f} outside [0.9,1.1]")
    return records, hard, soft


def suite_rh_table(model, T, L0=5, A=1.0, U_values=None):
    records, hard, soft = [], [], []
    U_values = U_values if U_values is not None else [1.0, T ** 0.25]
    for U in U_values:
        records.extend(formulas.rh_gap_table(model, T, U, L0, A=A))
    return records, hard, soft   # report-only: bounds asymptotic, A free


def suite_zero_gap(model, T, ls=(1, 2, 3), quad=None, identity_tol=1e-5):
    quad = quad or QuadratureConfig(rel_tol=1e-7)
    records, hard, soft = [], [], []
    pair = find_zero_pair(T)
    gamma, gamma_p = pair.gamma, pair.gamma_prime
    for l in ls:
        rec = formulas.zero_gap_experiment(model, gamma, gamma_p, l, quad)
        records.append(rec)
        if not (np.isfinite(rec.ratio) and rec.lhs > 0.0 and rec.rhs > 0.0):
            hard.append(f"zero-gap l={l}: non-finite or non-positive sides")
    n_id = max(ls)
    rec = formulas.verify_identity_61(model, gamma, gamma_p - gamma,
                                      n_id, max(1, n_id // 2), quad)
    records.append(rec)
    if abs(rec.ratio - 1.0) > max(identity_tol, 3.0 * rec.est_error):
        hard.append(f"zero-gap identity n={n_id}: |ratio-1|={abs(rec.ratio-1):.2e}")
    return records, hard, soft


SUITES = {
    "identity-6.1": suite_identity_61,
    "theorem-2.1": suite_theorem_21,
    "factorization-1.7": suite_factorization_17,
    "mean-values": suite_mean_values,
    "geo-means": suite_geo_means,
    "proof-chain": suite_proof_chain,
    "set-properties": suite_set_properties,
    "rh-table": suite_rh_table,
    "zero-gap": suite_zero_gap,
}


def run_suite(name, model, *, T=None, U=None, U_policy="max", l=None, n=None,
              quad=None):
    """Dispatch a named suite with the common CLI-level parameters."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    if name == "identity-6.1":
        T = T or 1e4
        return suite_identity_61(model, T, U or u_from_policy(T, U_policy), l, n, quad)
    if name == "theorem-2.1":
        ls = (l,) if l else (1, 2, 3)
        return suite_theorem_21(model, T, U_policy, ls, quad)
    if name == "factorization-1.7":
        T = T or 1e5
        return suite_factorization_17(model, T, U or u_from_policy(T, U_policy), quad)
    if name == "mean-values":
        T = T or 1e5
        ls = (l,) if l else (1, 2)
        return suite_mean_values(model, T, U or u_from_policy(T, U_policy), ls, quad)
    if name == "geo-means":
        T = T or 1e5
        return suite_geo_means(model, T, U or u_from_policy(T, U_policy), quad)
    if name == "proof-chain":
        return suite_proof_chain(model, T, U_policy, n or 3, l or 2, quad)
    if name == "set-properties":
        T = T or 1e5
        return suite_set_properties(model, T, U or u_from_policy(T, U_policy),
                                    n if n is not None else 3)
    if name == "rh-table":
        T = T or 1e6
        return suite_rh_table(model, T, L0=l or 5)
    if name == "zero-gap":
        T = T or 1e4
        ls = (l,) if l else (1, 2, 3)
        return suite_zero_gap(model, T, ls, quad)
    raise AssertionError("unreachable")
