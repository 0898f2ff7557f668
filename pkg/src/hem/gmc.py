"""Desk-scale simulation of log-correlated fields and their chaos measures.

The bulk field on the unit disc is ``X = X_D + P phi`` with ``X_D`` the
Dirichlet free field and ``P phi(z) = 2 Re sum_n phi_n z^n`` the harmonic
extension of the boundary modes, ``phi_n`` complex Gaussians of variance
``1/(2n)``.  Together they have covariance ``-log|z - w|``.

Points live on a log-polar grid: the origin plus concentric rings at radii
``exp(-k * step)``.  This resolves every scale between the outer rings and
the origin with a fixed point budget, which is what fusion at the origin
needs, and it places circles at radii ``exp(-t)`` for the radial check.

Each grid value is the field averaged over its cell, modelled by a Gaussian
average with the cell's per-axis second moment ``h^2/12``.  For that smoothing
the covariance of the whole-plane logarithm is ``-log r - E1(r^2 / (2 s)) / 2``
with ``s`` the summed smoothing variances; harmonic parts are unchanged by
radial smoothing.  The chaos normalization uses ``eps`` equal to twice the
local spacing ``h``.

The boundary field on the upper half disc, covariance
``-log|z - w| - log|z - conj(w)|``, is ``(X(z) + X(conj z)) / sqrt 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import exp1
from scipy.linalg import cholesky, LinAlgError

from .core import ConditioningError, DomainError, Params, ResolutionError, UsageError

EULER_GAMMA = 0.5772156649015329
GRID_BUDGET = 4096
DEFAULT_STEP = 1.0 / 6.0
DEFAULT_ANGLES = 48
DEFAULT_MODES = 256
EPS_FACTOR = 2.0
BATCH = 500
JITTERS = (0.0, 1e-12, 1e-10, 1e-8)
DEFAULT_SEED = 20240601


def smoothed_log_kernel(r: np.ndarray, s: np.ndarray) -> np.ndarray:
    """``-log r`` averaged against a 2-D Gaussian of per-axis variance ``s``."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    u = r * r / (2 * s)
    small = u < 1e-8
    safe_u = np.where(small, 1.0, u)
    safe_r = np.where(small, 1.0, r)
    regular = -np.log(safe_r) - 0.5 * exp1(safe_u)
    limit = 0.5 * EULER_GAMMA - 0.5 * np.log(2 * s) - 0.5 * u
    return np.where(small, limit, regular)


@dataclass(frozen=True)
class Grid:
    """Log-polar point set with cell areas and local spacings.

    ``ring`` is the ring index of each point (``-1`` for the origin) and
    ``on_boundary`` flags points on the real segment of the half disc.
    """

    domain: str
    points: np.ndarray
    areas: np.ndarray
    spacing: np.ndarray
    ring: np.ndarray
    on_boundary: np.ndarray
    ring_radii: np.ndarray
    n_angles: int
    step: float

    @property
    def size(self) -> int:
        return int(self.points.size)

    def ring_points(self, k: int) -> np.ndarray:
        """Indices of the bulk points on ring ``k``."""
        return np.flatnonzero((self.ring == k) & ~self.on_boundary)

    def nearest_on_ray(self, radius: float) -> int:
        """Index of the grid point on the positive real ray closest in log radius."""
        if self.domain != "disc":
            raise UsageError("insertions on a ray are supported on the disc grid")
        k = int(np.argmin(np.abs(np.log(self.ring_radii) - math.log(radius))))
        idx = self.ring_points(k)
        return int(idx[np.argmin(np.abs(np.angle(self.points[idx])))])


def make_grid(domain: str = "disc", grid_n: int = 2048, n_angles: int = DEFAULT_ANGLES,
              step: float = DEFAULT_STEP) -> Grid:
    """Origin plus rings of ``n_angles`` points, as many rings as fit in ``grid_n``.

    On the half disc each ring carries ``n_angles // 2`` interior points and two
    boundary points at ``+-r``; the origin is a boundary point.
    """
    if domain not in ("disc", "half_disc"):
        raise UsageError(f"domain must be 'disc' or 'half_disc', got {domain!r}")
    if grid_n > GRID_BUDGET:
        raise UsageError(f"grid_n={grid_n} exceeds the dense-factorization budget {GRID_BUDGET}")
    per_ring = n_angles if domain == "disc" else n_angles // 2 + 2
    n_rings = (grid_n - 1) // per_ring
    if n_rings < 4:
        raise UsageError("grid_n too small for four rings")
    k = np.arange(1, n_rings + 1)
    radii = np.exp(-k * step)
    outer = np.exp(-(k - 0.5) * step)
    inner = np.exp(-(k + 0.5) * step)
    ring_area = np.pi * (outer**2 - inner**2)
    radial_gap = outer - inner
    pts, areas, spacing, ring, bnd = [0j], [np.pi * inner[-1] ** 2], [radial_gap[-1]], [-1], [domain == "half_disc"]
    if domain == "half_disc":
        areas[0] /= 2
    for j in range(n_rings):
        if domain == "disc":
            theta = 2 * np.pi * np.arange(n_angles) / n_angles
            cell = ring_area[j] / n_angles
        else:
            m = n_angles // 2
            theta = np.pi * (np.arange(m) + 0.5) / m
            cell = ring_area[j] / 2 / m
        pts.extend(radii[j] * np.exp(1j * theta))
        areas.extend([cell] * theta.size)
        gap = max(radial_gap[j], 2 * np.pi * radii[j] / n_angles)
        spacing.extend([gap] * theta.size)
        ring.extend([j] * theta.size)
        bnd.extend([False] * theta.size)
        if domain == "half_disc":
            pts.extend([radii[j] + 0j, -radii[j] + 0j])
            # boundary atoms carry interval length
            areas.extend([radial_gap[j]] * 2)
            spacing.extend([gap] * 2)
            ring.extend([j] * 2)
            bnd.extend([True] * 2)
    return Grid(domain, np.array(pts), np.array(areas), np.array(spacing), np.array(ring),
                np.array(bnd), radii, n_angles, step)


@dataclass
class FieldSampler:
    """Factorized covariance of the bulk field on a set of disc points."""

    points: np.ndarray
    smoothing: np.ndarray
    n_modes: int
    dirichlet_factor: np.ndarray
    mode_matrix: np.ndarray
    jitter: float

    @classmethod
    def build(cls, points: np.ndarray, spacing: np.ndarray, n_modes: int = DEFAULT_MODES) -> "FieldSampler":
        s = spacing**2 / 12
        z = points[:, None]
        w = points[None, :]
        cov = smoothed_log_kernel(np.abs(z - w), s[:, None] + s[None, :]) + np.log(np.abs(1 - z * np.conj(w)))
        factor, used = None, 0.0
        scale = float(np.mean(np.diag(cov)))
        for jit in JITTERS:
            try:
                factor = cholesky(cov + jit * scale * np.eye(cov.shape[0]), lower=True)
                used = jit
                break
            except LinAlgError:
                continue
        if factor is None:
            raise ConditioningError("Dirichlet covariance is not positive definite after jitter")
        n = np.arange(1, n_modes + 1)
        modes = points[:, None] ** n[None, :] / np.sqrt(n)[None, :]
        return cls(points, s, n_modes, factor, modes, used)

    def dirichlet_cov(self) -> np.ndarray:
        return self.dirichlet_factor @ self.dirichlet_factor.T

    def harmonic_cov(self) -> np.ndarray:
        return np.real(self.mode_matrix @ np.conj(self.mode_matrix).T)

    def covariance(self) -> np.ndarray:
        return self.dirichlet_cov() + self.harmonic_cov()

    def draw(self, rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        """``n`` samples of the Dirichlet and harmonic parts, each of shape ``(n, points)``."""
        xi = rng.standard_normal((self.points.size, n))
        dirichlet = (self.dirichlet_factor @ xi).T
        # 2 Re(phi_n z^n) with E|phi_n|^2 = 1/(2n) equals Re(g z^n)/sqrt(n) with E|g|^2 = 2
        g = rng.standard_normal((self.n_modes, n)) + 1j * rng.standard_normal((self.n_modes, n))
        harmonic = np.real(self.mode_matrix @ g).T
        return dirichlet, harmonic


@dataclass
class FieldSample:
    """Joint samples of the field on a grid, with its two independent parts.

    ``values`` has shape ``(samples, grid.size)``.  ``covariance`` is the exact
    covariance of the sampled Gaussian vector, used for Girsanov shifts.
    """

    grid: Grid
    values: np.ndarray
    dirichlet: np.ndarray
    harmonic: np.ndarray
    eps: np.ndarray
    covariance: np.ndarray
    seed: int
    n_modes: int

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])


class FieldSource:
    """Reproducible stream of field batches on a fixed grid."""

    def __init__(self, grid: Grid, seed: int = DEFAULT_SEED, n_modes: int = DEFAULT_MODES,
                 eps_factor: float = EPS_FACTOR):
        self.grid = grid
        self.seed = seed
        self.n_modes = n_modes
        self.eps = eps_factor * grid.spacing
        if grid.domain == "disc":
            self._sampler = FieldSampler.build(grid.points, grid.spacing, n_modes)
            self._mix = None
        else:
            # sample the disc field at z and conj(z) and fold
            upper = grid.points
            interior = ~grid.on_boundary
            lower = np.conj(upper[interior])
            pts = np.concatenate([upper, lower])
            self._sampler = FieldSampler.build(pts, np.concatenate([grid.spacing, grid.spacing[interior]]), n_modes)
            mix = np.zeros((pts.size, upper.size))
            idx = np.arange(upper.size)
            mix[idx, idx] = np.where(grid.on_boundary, math.sqrt(2.0), 1 / math.sqrt(2.0))
            mix[upper.size + np.arange(lower.size), idx[interior]] = 1 / math.sqrt(2.0)
            self._mix = mix
        cov = self._sampler.covariance()
        self.covariance = cov if self._mix is None else self._mix.T @ cov @ self._mix

    def _fold(self, arr: np.ndarray) -> np.ndarray:
        return arr if self._mix is None else arr @ self._mix

    def batches(self, samples: int, batch: int = BATCH):
        """Yield ``FieldSample`` batches; batch ``i`` uses child ``i`` of the seed sequence."""
        sizes = [batch] * (samples // batch) + ([samples % batch] if samples % batch else [])
        children = np.random.SeedSequence(self.seed).spawn(len(sizes))
        for n, child in zip(sizes, children):
            rng = np.random.Generator(np.random.Philox(child))
            d, h = self._sampler.draw(rng, n)
            d, h = self._fold(d), self._fold(h)
            yield FieldSample(self.grid, d + h, d, h, self.eps, self.covariance, self.seed, self.n_modes)


def sample_field(domain: str = "disc", grid_n: int = 2048, seed: int = DEFAULT_SEED, samples: int = 1,
                 n_modes: int = DEFAULT_MODES) -> FieldSample:
    """Draw ``samples`` joint samples of the field on a fresh grid."""
    source = FieldSource(make_grid(domain, grid_n), seed, n_modes)
    parts = list(source.batches(samples))
    cat = lambda name: np.concatenate([getattr(p, name) for p in parts])
    first = parts[0]
    return FieldSample(first.grid, cat("values"), cat("dirichlet"), cat("harmonic"), first.eps,
                       first.covariance, seed, n_modes)


@dataclass(frozen=True)
class ChaosMeasure:
    """Atom weights ``eps^(g^2/2) e^(g X) area`` of the bulk chaos and ``eps^(g^2/4) e^(g X/2) length`` on the boundary."""

    weights: np.ndarray
    gamma: float
    boundary: bool

    @classmethod
    def from_sample(cls, sample: FieldSample, gamma: float, boundary: bool = False,
                    shift: np.ndarray | None = None) -> "ChaosMeasure":
        grid = sample.grid
        mask = grid.on_boundary if boundary else ~grid.on_boundary
        if grid.domain == "disc" and boundary:
            raise UsageError("the disc grid has no boundary atoms")
        charge, eps_power = (gamma / 2, gamma**2 / 4) if boundary else (gamma, gamma**2 / 2)
        field_values = sample.values if shift is None else sample.values + shift
        log_w = charge * field_values + eps_power * np.log(sample.eps) + np.log(grid.areas)
        weights = np.where(mask, np.exp(log_w), 0.0)
        return cls(weights, gamma, boundary)

    def total_mass(self) -> np.ndarray:
        return self.weights.sum(axis=-1)


@dataclass(frozen=True)
class ChaosEstimate:
    value: float
    stderr: float
    samples: int
    method: str


def _insertion_shift(cov: np.ndarray, seed_charge: float, insertions: Sequence[tuple[int, float]]) -> np.ndarray:
    shift = seed_charge * cov[:, 0].copy()
    for idx, charge in insertions:
        shift += charge * cov[:, idx]
    return shift


def chaos_integral(samples: FieldSample, alpha: float, insertions: Sequence[tuple[int, float]], params: Params,
                   region: np.ndarray | None = None, method: str = "shift") -> ChaosEstimate:
    """Estimate ``E exp(-mu int |z|^(-g alpha) prod |z - w_j|^(-g q_j) dM)`` at zero mode ``c = 0``.

    Insertions are ``(grid index, charge)`` pairs; the seed charge ``alpha``
    sits at the origin.  With ``method="shift"`` every charge enters as a mean
    shift of the field; with ``"reweight"`` the insertions are instead applied
    as exponential weights ``e^(q X(w) - q^2 Var/2)``.
    """
    g = params.gamma
    cov = samples.covariance
    local = [alpha] + [q for _, q in insertions]
    if any(q >= params.Q for q in local):
        raise DomainError("a charge at or above Q makes the chaos integral diverge at its insertion")
    if method == "shift":
        shift = _insertion_shift(cov, alpha, insertions)
        weight = np.ones(samples.n_samples)
    elif method == "reweight":
        shift = _insertion_shift(cov, alpha, [])
        log_wt = np.zeros(samples.n_samples)
        for idx, q in insertions:
            log_wt += q * samples.values[:, idx] - 0.5 * q * q * cov[idx, idx]
        weight = np.exp(log_wt)
    else:
        raise UsageError(f"method must be 'shift' or 'reweight', got {method!r}")
    measure = ChaosMeasure.from_sample(samples, g, shift=shift[None, :])
    w = measure.weights if region is None else measure.weights * region
    vals = weight * np.exp(-params.mu * w.sum(axis=1))
    n = vals.size
    return ChaosEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n)) if n > 1 else math.inf, n, method)


@dataclass
class ScalingFit:
    """Fitted slope of ``log Psi`` against ``log |w|`` for one insertion of charge ``gamma``."""

    alpha: float
    gamma: float
    radii: list[float]
    log_means: list[float]
    log_stderr: list[float]
    slope: float
    slope_stderr: float
    target: float
    regime: str
    passed: bool
    samples: int
    grid_n: int
    seed: int
    decades: float
    tolerance: float = 0.15
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from dataclasses import asdict

        return asdict(self)


def fusion_target(alpha: float, params: Params) -> tuple[float, str]:
    """Expected slope: ``-g alpha`` below the merging threshold, plus ``(alpha + g - Q)^2/2`` above it."""
    g = params.gamma
    excess = alpha + g - params.Q
    if excess >= 0:
        return -g * alpha + 0.5 * excess**2, "frozen"
    return -g * alpha, "subcritical"


def scaling_fit(alpha: float, params: Params, radii: Sequence[float] | None = None, samples: int = 10_000,
                grid_n: int = 2048, seed: int = DEFAULT_SEED, r_insertions: int = 1,
                blocks: int = 20, tilt: float | None = None) -> ScalingFit:
    """Measure how ``Psi_alpha(w)`` scales as one insertion of charge ``gamma`` approaches the origin.

    ``Psi`` is ``|w|^(-g alpha)`` times the chaos expectation with both charges
    shifted in.  In the frozen regime that expectation is a rare event (the
    circle averages must stay low down to scale ``|w|``), so each radius is
    estimated under a Cameron-Martin tilt of strength ``tilt`` along the circle
    average at radius ``|w|``, reweighted exactly.  Radii are snapped to grid
    rings inside ``[0.02, 0.4]``; the slope error is a jackknife over sample blocks.
    """
    if r_insertions != 1:
        raise UsageError("only a single insertion is supported")
    radii = list(radii) if radii is not None else list(np.geomspace(0.02, 0.4, 6))
    if len(radii) < 4:
        raise UsageError("need at least four probe radii")
    if min(radii) < 0.02 or max(radii) > 0.4:
        raise DomainError("probe radii must lie in [0.02, 0.4]")
    g = params.gamma
    excess = alpha + g - params.Q
    if abs(excess) < 0.05:
        raise DomainError("alpha + gamma is too close to Q for a definite regime")
    if alpha >= params.Q:
        raise DomainError("seed charge at or above Q")
    if tilt is None:
        tilt = -(excess + 1.0) if excess > 0 else 0.0
    grid = make_grid("disc", grid_n)
    allowed = np.flatnonzero((grid.ring_radii >= 0.02 - 1e-12) & (grid.ring_radii <= 0.4 + 1e-12))
    rings = [int(allowed[np.argmin(np.abs(np.log(grid.ring_radii[allowed]) - math.log(r)))]) for r in radii]
    if len(set(rings)) != len(rings):
        raise ResolutionError("two probe radii snap to the same grid ring")
    idx = [grid.nearest_on_ray(grid.ring_radii[k]) for k in rings]
    actual = np.abs(grid.points[idx])
    for r, i in zip(actual, idx):
        if r < 3 * grid.spacing[i] or r < 3 * grid.ring_radii[-1]:
            raise ResolutionError(f"probe radius {r:.4g} is below three grid spacings")
    source = FieldSource(grid, seed)
    cov = source.covariance
    ring_sets = [grid.ring_points(k) for k in rings]
    # covariance of every point with each probe circle average, and the circle variances
    circle_cov = np.stack([cov[:, ids].mean(axis=1) for ids in ring_sets], axis=1)
    circle_var = np.array([cov[np.ix_(ids, ids)].mean() for ids in ring_sets])
    base = g * alpha * cov[:, 0]
    expo = np.stack([g * g * cov[:, i] for i in idx], axis=1) + g * tilt * circle_cov
    bulk = ~grid.on_boundary
    values = []
    for batch in source.batches(samples):
        log_w = g * batch.values + g * g / 2 * np.log(batch.eps) + np.log(grid.areas) + base
        w = np.exp(np.where(bulk, log_w, -np.inf))
        mass = w @ np.exp(expo)
        circle = np.stack([batch.values[:, ids].mean(axis=1) for ids in ring_sets], axis=1)
        log_weight = -tilt * circle - 0.5 * tilt * tilt * circle_var
        values.append(np.exp(log_weight - params.mu * mass))
    vals = np.concatenate(values)
    logr = np.log(actual)

    def fit(v: np.ndarray) -> tuple[np.ndarray, float]:
        lm = np.log(v.mean(axis=0)) - g * alpha * logr
        return lm, float(np.polyfit(logr, lm, 1)[0])

    log_means, slope = fit(vals)
    log_se = vals.std(axis=0, ddof=1) / math.sqrt(vals.shape[0]) / vals.mean(axis=0)
    parts = np.array_split(np.arange(vals.shape[0]), blocks)
    jack = np.array([fit(np.delete(vals, p, axis=0))[1] for p in parts])
    slope_se = float(math.sqrt((blocks - 1) / blocks * np.sum((jack - jack.mean()) ** 2)))
    target, regime = fusion_target(alpha, params)
    extra = {"tilt": tilt}
    if regime == "frozen":
        # diagnostic only: remove the (3/2) log log(1/|w|) prefactor of a drifted Brownian path held below a barrier
        extra["barrier_corrected_slope"] = float(np.polyfit(logr, log_means + 1.5 * np.log(-logr), 1)[0])
    return ScalingFit(alpha, g, actual.tolist(), log_means.tolist(), log_se.tolist(), slope, slope_se, target,
                      regime, bool(abs(slope - target) <= 0.15), int(vals.shape[0]), grid.size, seed,
                      float(np.log10(actual.max() / actual.min())), extra=extra)


@dataclass
class RadialReport:
    t_values: list[float]
    variances: list[float]
    variance_stderr: list[float]
    slope: float
    slope_ok: bool
    max_abs_z: float
    min_p_value: float
    independent: bool
    samples: int

    def to_dict(self) -> dict:
        from dataclasses import asdict

        return asdict(self)


def radial_decomposition_check(samples: FieldSample, t_values: Sequence[float] = (0.5, 1.0, 1.5, 2.0)) -> RadialReport:
    """Circle averages ``B_t`` at radii ``exp(-t)``: variance linear in ``t`` and increments independent of the lateral field."""
    from scipy import stats

    grid = samples.grid
    if grid.domain != "disc":
        raise UsageError("the radial check runs on the disc grid")
    circle, lateral = {}, {}
    for t in t_values:
        if t == 0:
            circle[t] = _unit_circle_average(samples.n_modes, samples.n_samples, samples.seed)
            lateral[t] = None
            continue
        k = int(round(t / grid.step)) - 1
        if k < 0 or k >= grid.ring_radii.size or abs(grid.ring_radii[k] - math.exp(-t)) > 1e-9:
            raise ResolutionError(f"no grid ring at radius exp(-{t})")
        idx = grid.ring_points(k)
        ring_vals = samples.values[:, idx]
        circle[t] = ring_vals.mean(axis=1)
        lateral[t] = ring_vals[:, 0] - circle[t]
    ts = np.array(list(t_values), dtype=float)
    var = np.array([np.var(circle[t], ddof=1) for t in t_values])
    n = samples.n_samples
    var_se = var * math.sqrt(2.0 / (n - 1))
    slope = float(np.polyfit(ts, var, 1)[0]) if ts.size >= 2 else math.nan
    zs, ps = [], []
    ordered = sorted(t for t in t_values if lateral[t] is not None)
    for t0, t1 in zip(ordered, ordered[1:]):
        inc = circle[t1] - circle[t0]
        r, p = stats.pearsonr(inc, lateral[t0])
        zs.append(abs(r) * math.sqrt(n))
        ps.append(float(p))
    max_z = float(max(zs)) if zs else 0.0
    min_p = float(min(ps)) if ps else 1.0
    return RadialReport(ts.tolist(), var.tolist(), var_se.tolist(), slope, bool(abs(slope - 1) <= 0.1), max_z,
                        min_p, bool(max_z <= 3.0 and min_p > 0.01), n)


def _unit_circle_average(n_modes: int, samples: int, seed: int) -> np.ndarray:
    """Circle average of the harmonic part on the unit circle, where the Dirichlet part vanishes."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed).spawn(1)[0]))
    m = n_modes + 1
    theta = 2 * np.pi * np.arange(m) / m
    n = np.arange(1, n_modes + 1)
    modes = np.exp(1j * np.outer(theta, n)) / np.sqrt(n)[None, :]
    g = rng.standard_normal((n_modes, samples)) + 1j * rng.standard_normal((n_modes, samples))
    return np.real(modes @ g).mean(axis=0)
