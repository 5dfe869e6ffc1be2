"""Construction and iteration of the slowly-deviating ladder function phi1.

The ladder is defined implicitly through the cumulative second moment of the
Hardy Z-function,

    F(phi1(T)) = H(T),  F(y) = y ln y + (c - ln 2pi) y,  H(T) = int_0^T Z(u)^2 du,

with c the Euler constant.  F is strictly increasing for y >= 2, so phi1 is
recovered by safeguarded Newton inversion.  H is accumulated once over the
working range as Gauss-Legendre panels ("cells") whose boundaries and running
sums are kept; a query H(t) then adds the exactly-integrated piece of the
cell's degree-14 Legendre interpolant of Z^2.  Within a cell the interpolant
matches Z^2 to ~1e-9 relative, H is exactly continuous across cells, and
dH/dt is the interpolant itself, so the change-of-variables identities in the
formulas module hold to interpolation accuracy.  ``ladder_value`` always
solves the defining equation on demand; the stored grid only seeds Newton.

Cell interpolants are materialized lazily (most of the sweep range is never
queried pointwise) in a lock-guarded cache; everything else on the model is
immutable, so concurrent reads are safe.

Asymptotics inherited from the defining equation (used all over the tests):
t - phi1(t) ~ (1-c) t / ln t, and dphi1/dt = Z(t)^2 / (ln phi1(t) + 1 + c - ln 2pi).
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .critical_line import _z_raw
from .errors import AdmissibilityError, DomainError, RangeEscapeError

__all__ = [
    "EULER_C",
    "LadderConfig",
    "LadderModel",
    "Segment",
    "DisconnectedSet",
    "AsymptoticConstants",
    "SetPropertyReport",
    "build_ladder",
    "ladder_value",
    "ladder_iterate",
    "ladder_derivative",
    "hl_integral",
    "disconnected_set",
    "check_set_properties",
    "macroscopic_lower",
    "admissible_u_max",
]

EULER_C = float(np.euler_gamma)
LN_2PI = math.log(2.0 * math.pi)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(15)

# Cell interpolation nodes: the GL15 points plus both endpoints, so that
# neighbouring cells share their boundary value and the piecewise interpolant
# of Z^2 is globally continuous (jumps would defeat the adaptive quadrature).
_CELL_X = np.concatenate([[-1.0], _GL_X, [1.0]])
_V17 = np.polynomial.legendre.legvander(_CELL_X, 16)      # V[i, j] = P_j(x_i)
_NODE_TO_LEG = np.linalg.inv(_V17)                        # coeffs = inv(V) @ values


def _legendre_basis(x, deg=15):
    """P_0..P_deg evaluated on an array via the three-term recurrence."""
    P = np.empty((deg + 1,) + x.shape)
    P[0] = 1.0
    if deg >= 1:
        P[1] = x
    for k in range(1, deg):
        P[k + 1] = ((2 * k + 1) * x * P[k] - k * P[k - 1]) / (k + 1)
    return P


@dataclass(frozen=True)
class AsymptoticConstants:
    """Constants of the set-geometry bounds at desk scale."""

    one_minus_c: float = 1.0 - EULER_C
    gap_lower: float = 0.18      # coefficient of T/ln T in the gap bound
    dist_lower: float = 0.17     # coefficient of pi(T) in the distance bound

    @staticmethod
    def len_upper_coeff(n: int) -> float:
        return 1.0 / (2 * n + 5)


@dataclass(frozen=True)
class LadderConfig:
    """Grid and tolerance policy for ladder construction."""

    grid_points: int = 2000
    newton_tol: float = 1e-12          # relative defining-equation residual
    checkpoint_density: float = 3.0    # cells per zero spacing in the H sweep
    hl_rel_tol: float = 1e-8
    refine_windows: tuple = ()         # (lo, hi) pairs given extra grid nodes

    def cache_key(self, t_min: float, t_max: float) -> str:
        payload = json.dumps({
            "t_min": t_min, "t_max": t_max, "grid_points": self.grid_points,
            "newton_tol": self.newton_tol,
            "checkpoint_density": self.checkpoint_density,
            "hl_rel_tol": self.hl_rel_tol,
            "refine_windows": list(map(list, self.refine_windows)),
            "format": 2,
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _zsq_raw(t):
    z = _z_raw(np.asarray(t, dtype=float))
    return z * z


def F_defining(y):
    return y * np.log(y) + (EULER_C - LN_2PI) * y


def F_prime(y):
    return np.log(y) + 1.0 + EULER_C - LN_2PI


def admissible_u_max(T: float) -> float:
    """Upper end T/ln^2 T of the admissible window-length range."""
    return T / math.log(T) ** 2


def macroscopic_lower(T: float, eps: float = 0.05) -> float:
    """Lower end T^(1/3+eps) of the macroscopic window-length domain."""
    return T ** (1.0 / 3.0 + eps)


class LadderModel:
    """Tabulated ladder over [t_min, t_max] with exact on-demand inversion."""

    def __init__(self, t_min, t_max, grid, phi1, hl_checkpoints, cp_bounds,
                 cp_cum, config, calibration_residual):
        self.t_min = float(t_min)
        self.t_max = float(t_max)
        self.grid = grid
        self.phi1 = phi1
        self.hl_checkpoints = hl_checkpoints   # H at the grid nodes
        self.euler_c = EULER_C
        self.calibration_residual = float(calibration_residual)
        self.config = config
        self._cp_bounds = cp_bounds            # cell boundaries of the H sweep
        self._cp_cum = cp_cum                  # running H at those boundaries
        self._seed = PchipInterpolator(grid, phi1, extrapolate=True)
        self._cells = {}                       # cell index -> Legendre coeffs
        self._cells_lock = threading.Lock()
        for arr in (self.grid, self.phi1, self.hl_checkpoints,
                    self._cp_bounds, self._cp_cum):
            arr.setflags(write=False)

    # --- lazy cell interpolants ------------------------------------------
    def _cell_coeffs(self, cells):
        """Legendre coefficient rows for the requested cell indices."""
        missing = [c for c in cells if c not in self._cells]
        if missing:
            with self._cells_lock:
                missing = [c for c in missing if c not in self._cells]
                if missing:
                    ms = np.asarray(missing, dtype=np.int64)
                    a = self._cp_bounds[ms]
                    b = self._cp_bounds[ms + 1]
                    mid = 0.5 * (a + b)
                    half = 0.5 * (b - a)
                    pts = (mid[:, None] + half[:, None] * _CELL_X[None, :]).ravel()
                    vals = _zsq_raw(pts).reshape(-1, 17)
                    coefs = vals @ _NODE_TO_LEG.T
                    for c, row in zip(missing, coefs):
                        self._cells[c] = row
        return np.array([self._cells[c] for c in cells])

    def _locate(self, arr):
        if arr.size and (arr.min() < -1e-9 or arr.max() > self._cp_bounds[-1] + 1e-9):
            raise RangeEscapeError(
                f"query outside checkpoint range [0, {self._cp_bounds[-1]:.1f}]")
        idx = np.clip(np.searchsorted(self._cp_bounds, arr, side="right") - 1,
                      0, len(self._cp_bounds) - 2)
        return idx

    def hl(self, t):
        """H(t) = int_0^t Z(u)^2 du from the cell sweep (exactly continuous)."""
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        idx = self._locate(arr)
        uniq, inv = np.unique(idx, return_inverse=True)
        rows = self._cell_coeffs(uniq)[inv]
        a = self._cp_bounds[idx]
        b = self._cp_bounds[idx + 1]
        x = 2.0 * (arr - a) / (b - a) - 1.0
        # antiderivative of the Legendre series: int P_k = (P_{k+1}-P_{k-1})/(2k+1)
        deg = rows.shape[1] - 1
        D = np.zeros((rows.shape[0], deg + 2))
        for k in range(deg + 1):
            D[:, k + 1] += rows[:, k] / (2 * k + 1)
            if k >= 1:
                D[:, k - 1] -= rows[:, k] / (2 * k + 1)
        P = _legendre_basis(x, deg + 1)
        val_x = np.einsum("mk,km->m", D, P)
        signs = np.where(np.arange(deg + 2) % 2 == 0, 1.0, -1.0)
        val_m1 = D @ signs
        partial = 0.5 * (b - a) * (val_x - val_m1)
        out = self._cp_cum[idx] + partial
        return float(out[0]) if np.ndim(t) == 0 else out

    def zsq_cells(self, t):
        """Z(t)^2 through the cell interpolants (the integrand evaluator).

        Matches the raw evaluator to ~1e-9 relative and is the exact
        derivative of ``hl``, which is what keeps the substitution identities
        exact at quadrature level.
        """
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        idx = self._locate(arr)
        uniq, inv = np.unique(idx, return_inverse=True)
        rows = self._cell_coeffs(uniq)[inv]
        a = self._cp_bounds[idx]
        b = self._cp_bounds[idx + 1]
        x = 2.0 * (arr - a) / (b - a) - 1.0
        P = _legendre_basis(x, rows.shape[1] - 1)
        out = np.einsum("mk,km->m", rows, P)
        return float(out[0]) if np.ndim(t) == 0 else out

    # --- defining-equation inversion -----------------------------------
    def _invert(self, h, seed):
        y = np.array(seed, dtype=float, copy=True)
        tol = self.config.newton_tol
        for _ in range(12):
            resid = F_defining(y) - h
            y = np.clip(y - resid / F_prime(y), 2.0, None)
            if np.all(np.abs(resid) <= tol * np.maximum(np.abs(h), 1.0)):
                break
        bad = np.abs(F_defining(y) - h) > 10 * tol * np.maximum(np.abs(h), 1.0)
        if np.any(bad):
            for i in np.nonzero(bad)[0]:
                y[i] = self._bisect(float(np.atleast_1d(h)[i]))
        return y

    def _bisect(self, h):
        lo, hi = 2.0, max(4.0, self.t_max * 1.5)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if F_defining(mid) < h:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-12 * max(1.0, mid):
                break
        return 0.5 * (lo + hi)

    def value(self, t):
        """phi1(t): on-demand Newton solve of F(y) = H(t) (PCHIP-seeded)."""
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        if arr.size and (arr.min() < self.t_min - 1e-9 or arr.max() > self.t_max + 1e-9):
            raise RangeEscapeError(
                f"ladder_value outside working range [{self.t_min}, {self.t_max}]")
        h = np.atleast_1d(self.hl(arr))
        y = self._invert(h, np.clip(self._seed(arr), 2.0, arr))
        return float(y[0]) if np.ndim(t) == 0 else y

    def iterate(self, t, k: int):
        """k-fold composition phi1^k(t); k = 0 returns t unchanged."""
        if k < 0:
            raise ValueError("iteration depth must be >= 0")
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        cur = arr.astype(float, copy=True)
        for depth in range(1, k + 1):
            if cur.min() < self.t_min - 1e-9:
                raise RangeEscapeError(
                    f"iterate escaped below t_min={self.t_min} at depth {depth}",
                    depth=depth)
            cur = np.atleast_1d(self.value(cur))
        return float(cur[0]) if np.ndim(t) == 0 else cur

    def derivative(self, t):
        """dphi1/dt = Z(t)^2 / (ln phi1(t) + 1 + c - ln 2pi)."""
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        phi = np.atleast_1d(self.value(arr))
        out = _zsq_raw(arr) / F_prime(phi)
        return float(out[0]) if np.ndim(t) == 0 else out

    # --- persistence ----------------------------------------------------
    # npz layout (documented format, version 2): 'meta' JSON scalars, then
    # the grid rows t, phi1(t), H(t) ('grid', 'phi1', 'hl_checkpoints') and
    # the sweep arrays 'cp_bounds', 'cp_cum'.

    def save(self, path) -> None:
        meta = json.dumps({
            "version": 2,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "newton_tol": self.config.newton_tol,
            "hl_rel_tol": self.config.hl_rel_tol,
            "checkpoint_density": self.config.checkpoint_density,
            "grid_points": self.config.grid_points,
            "refine_windows": list(map(list, self.config.refine_windows)),
            "calibration_residual": self.calibration_residual,
        })
        np.savez_compressed(
            path, meta=np.frombuffer(meta.encode(), dtype=np.uint8),
            grid=self.grid, phi1=self.phi1, hl_checkpoints=self.hl_checkpoints,
            cp_bounds=self._cp_bounds, cp_cum=self._cp_cum)

    @classmethod
    def load(cls, path) -> "LadderModel":
        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"]).decode())
            if meta.get("version") != 2:
                raise ValueError("unsupported ladder cache version")
            config = LadderConfig(
                grid_points=meta["grid_points"],
                newton_tol=meta["newton_tol"],
                checkpoint_density=meta["checkpoint_density"],
                hl_rel_tol=meta["hl_rel_tol"],
                refine_windows=tuple(map(tuple, meta["refine_windows"])))
            return cls(meta["t_min"], meta["t_max"], data["grid"].copy(),
                       data["phi1"].copy(), data["hl_checkpoints"].copy(),
                       data["cp_bounds"].copy(), data["cp_cum"].copy(),
                       config, meta["calibration_residual"])


def _sweep_checkpoints(t_max: float, density: float):
    """Cell boundaries and running H over [0, t_max].

    Cell widths follow the local zero spacing 2pi/ln(t/2pi); below t=20 the
    integrand has no oscillation and a fixed cap applies.  GL15 on a cell of
    a third of a zero spacing integrates (and interpolates) Z^2 far inside
    the 1e-8 contract.
    """
    bounds = [0.0]
    a = 0.0
    while a < t_max:
        if a < 20.0:
            w = 1.0
        else:
            w = 2.0 * math.pi / math.log(a / (2.0 * math.pi)) / density
        a = min(t_max, a + w)
        bounds.append(a)
    bounds = np.array(bounds)
    mid = 0.5 * (bounds[:-1] + bounds[1:])
    half = 0.5 * (bounds[1:] - bounds[:-1])
    panel = np.empty(len(mid))
    # Each cell integrates its own 17-node interpolant (integral = 2 half c0),
    # the same object served later by the lazy cell cache, so the running sums
    # and the pointwise interpolants are mutually exact.
    w0 = _NODE_TO_LEG[0]             # c0 = w0 . values
    chunk = 65536
    for i in range(0, len(mid), chunk):
        m = mid[i:i + chunk]
        hh = half[i:i + chunk]
        pts = (m[:, None] + hh[:, None] * _CELL_X[None, :]).ravel()
        vals = _zsq_raw(pts).reshape(-1, 17)
        panel[i:i + chunk] = 2.0 * (vals @ w0) * hh
    cum = np.concatenate([[0.0], np.cumsum(panel)])
    return bounds, cum


def build_ladder(t_min: float, t_max: float, config: LadderConfig | None = None,
                 cache_dir=None, progress=None) -> LadderModel:
    """Construct (or load from cache) the ladder model over [t_min, t_max].

    The grid is a geometric progression with optional refinement windows; at
    every node the defining equation is solved to the configured Newton
    residual.  Persisted under ``cache_dir`` keyed by the construction inputs.
    """
    config = config or LadderConfig()
    t_min = float(t_min)
    t_max = float(t_max)
    if not (100.0 <= t_min < t_max):
        raise DomainError("build_ladder requires 100 <= t_min < t_max")
    cache_path = None
    if cache_dir is not None:
        from pathlib import Path
        cache_dir = Path(cache_dir)
        cache_dir.mkdir(parents=True, exist_ok=True)
        cache_path = cache_dir / f"ladder-{config.cache_key(t_min, t_max)}.npz"
        if cache_path.exists():
            return LadderModel.load(cache_path)

    if progress:
        progress("sweeping cumulative |zeta|^2 checkpoints")
    bounds, cum = _sweep_checkpoints(t_max, config.checkpoint_density)

    grid = np.geomspace(t_min, t_max, config.grid_points)
    for lo, hi in config.refine_windows:
        lo = max(lo, t_min)
        hi = min(hi, t_max)
        if hi > lo:
            grid = np.concatenate([grid, np.linspace(lo, hi, 257)])
    grid = np.unique(grid)

    if progress:
        progress(f"solving defining equation on {len(grid)} nodes")
    model = LadderModel(t_min, t_max, grid, grid.copy(), np.zeros_like(grid),
                        bounds, cum, config, 0.0)
    h_grid = model.hl(grid)
    seed = grid - (1.0 - EULER_C) * grid / (np.log(grid) - 0.26)
    y = seed.copy()
    for _ in range(14):
        y = np.clip(y - (F_defining(y) - h_grid) / F_prime(y), 2.0, None)
    resid = np.abs(F_defining(y) - h_grid) / np.maximum(np.abs(h_grid), 1.0)

    model = LadderModel(t_min, t_max, grid, y, h_grid, bounds, cum,
                        config, float(resid.max()))
    if cache_path is not None:
        model.save(cache_path)
    return model


# --- functional wrappers ----------------------------------------------------

def hl_integral(model: LadderModel, T: float) -> float:
    """int_0^T Z(u)^2 du from the model's checkpoints (T >= 2)."""
    if T < 2.0:
        raise DomainError("hl_integral requires T >= 2")
    return float(model.hl(float(T)))


def ladder_value(model: LadderModel, t):
    return model.value(t)


def ladder_iterate(model: LadderModel, t, k: int):
    return model.iterate(t, k)


def ladder_derivative(model: LadderModel, t):
    return model.derivative(t)


# --- disconnected sets --------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """Closed interval [phi1^k(T), phi1^k(T+U)] at iteration depth k."""

    lo: float
    hi: float
    k: int

    def __post_init__(self):
        if not (self.lo < self.hi and self.k >= 0):
            raise ValueError("segment requires lo < hi and k >= 0")

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class DisconnectedSet:
    """Union of the iterate segments for k = 0..n+1, ordered right to left."""

    T: float
    U: float
    segments: tuple

    @property
    def n(self) -> int:
        return len(self.segments) - 2

    def gaps(self):
        """Distances phi1^k(T) - phi1^(k+1)(T+U) between neighbours."""
        return [self.segments[k].lo - self.segments[k + 1].hi
                for k in range(len(self.segments) - 1)]


def disconnected_set(model: LadderModel, T: float, U: float, n: int) -> DisconnectedSet:
    """Segments [phi1^k(T), phi1^k(T+U)], k = 0..n+1, for admissible U."""
    T = float(T)
    U = float(U)
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0.0 < U <= admissible_u_max(T):
        raise AdmissibilityError(
            f"U={U} outside (0, T/ln^2 T]={admissible_u_max(T):.4f} at T={T}")
    segs = []
    lo, hi = T, T + U
    for k in range(n + 2):
        segs.append(Segment(lo=float(lo), hi=float(hi), k=k))
        if k < n + 1:
            lo = model.value(lo)
            hi = model.value(hi)
    return DisconnectedSet(T=T, U=U, segments=tuple(segs))


@dataclass(frozen=True)
class SetPropertyReport:
    """Margins and verdicts for the geometric properties of one set."""

    T: float
    U: float
    n: int
    lengths: tuple
    gaps: tuple
    length_bound: float          # T / ((2n+5) ln T), applies for k >= 1
    gap_bound: float             # 0.18 T / ln T
    dist_bound: float            # 0.17 pi(T)
    lengths_ok: bool
    gaps_ok: bool
    distances_ok: bool
    macroscopic: bool
    length_over_u: tuple = field(default=())
    gap_over_asym: tuple = field(default=())

    @property
    def all_bounds_ok(self) -> bool:
        return self.lengths_ok and self.gaps_ok and self.distances_ok


def check_set_properties(dset: DisconnectedSet, counter) -> SetPropertyReport:
    """Evaluate the component-length, gap and distance bounds for one set."""
    T, U, n = dset.T, dset.U, dset.n
    lnT = math.log(T)
    consts = AsymptoticConstants()
    lengths = tuple(s.length for s in dset.segments)
    gaps = tuple(dset.gaps())
    length_bound = consts.len_upper_coeff(n) * T / lnT
    gap_bound = consts.gap_lower * T / lnT
    dist_bound = consts.dist_lower * counter.count(T)
    lengths_ok = all(L < length_bound for L in lengths[1:])
    gaps_ok = all(g > gap_bound for g in gaps)
    distances_ok = all(g > dist_bound for g in gaps)
    macro = macroscopic_lower(T) <= U <= admissible_u_max(T)
    length_over_u = tuple(L / U for L in lengths[1:]) if macro else ()
    gap_over_asym = tuple(g / (consts.one_minus_c * T / lnT) for g in gaps) if macro else ()
    return SetPropertyReport(
        T=T, U=U, n=n, lengths=lengths, gaps=gaps,
        length_bound=length_bound, gap_bound=gap_bound, dist_bound=dist_bound,
        lengths_ok=lengths_ok, gaps_ok=gaps_ok, distances_ok=distances_ok,
        macroscopic=macro, length_over_u=length_over_u, gap_over_asym=gap_over_asym)
