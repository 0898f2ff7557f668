import math

import numpy as np
import pytest

from hem.core import DomainError, Params, ResolutionError, UsageError
from hem.gmc import (
    EULER_GAMMA,
    ChaosMeasure,
    FieldSource,
    chaos_integral,
    fusion_target,
    make_grid,
    radial_decomposition_check,
    sample_field,
    scaling_fit,
    smoothed_log_kernel,
)


@pytest.fixture(scope="module")
def disc_samples():
    return sample_field("disc", 2048, seed=3, samples=5000)


def test_harmonic_part_vanishes_at_origin(disc_samples):
    assert disc_samples.grid.points[0] == 0
    assert np.all(disc_samples.harmonic[:, 0] == 0)


def test_pointwise_variance(disc_samples):
    grid = disc_samples.grid
    k = grid.ring_points(10)[0]
    # E[-log |Z|] for a planar Gaussian offset with per-axis variance 2 h^2/12
    v = 2 * grid.spacing[k] ** 2 / 12
    predicted = 0.5 * (EULER_GAMMA - math.log(2 * v))
    assert disc_samples.covariance[k, k] == pytest.approx(predicted, rel=1e-6)
    var = np.var(disc_samples.values[:, k], ddof=1)
    se = predicted * math.sqrt(2 / (disc_samples.n_samples - 1))
    assert abs(var - predicted) <= 3 * se


def test_two_point_covariance(disc_samples):
    grid = disc_samples.grid
    i, j = grid.ring_points(0)[:2]
    target = -math.log(abs(grid.points[i] - grid.points[j]))
    emp = np.cov(disc_samples.values[:, [i, j]].T)[0, 1]
    assert abs(emp - target) / target <= 0.05


def test_harmonic_covariance_against_boundary_kernel(disc_samples):
    grid = disc_samples.grid
    idx = [grid.ring_points(2)[0], grid.ring_points(5)[7]]
    z, w = grid.points[idx]
    target = -math.log(abs(1 - z * np.conj(w)))
    emp = np.cov(disc_samples.harmonic[:, idx].T)[0, 1]
    se = math.sqrt((np.var(disc_samples.harmonic[:, idx[0]]) * np.var(disc_samples.harmonic[:, idx[1]]) + emp**2)
                   / disc_samples.n_samples)
    assert abs(emp - target) <= 3 * se


def test_smoothed_kernel_limits():
    s = np.array(1e-4)
    assert smoothed_log_kernel(np.array(1.0), s) == pytest.approx(0.0, abs=1e-12)
    assert smoothed_log_kernel(np.array(0.0), s) == pytest.approx(0.5 * EULER_GAMMA - 0.5 * math.log(2e-4))


def test_chaos_integral_trivial(disc_samples):
    est = chaos_integral(disc_samples, 0.0, [], Params(1.0, mu=1e-12))
    assert est.value == pytest.approx(1.0, abs=1e-9)


def test_chaos_integral_monotone_in_mu(disc_samples):
    values = [chaos_integral(disc_samples, -0.5, [], Params(1.0, mu=m)).value for m in (0.1, 0.5, 1.0, 2.0)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_girsanov_shift_matches_reweighting(disc_samples):
    grid = disc_samples.grid
    w = grid.nearest_on_ray(0.3)
    p = Params(1.0)
    shift = chaos_integral(disc_samples, 0.0, [(w, 1.0)], p, method="shift")
    reweight = chaos_integral(disc_samples, 0.0, [(w, 1.0)], p, method="reweight")
    assert abs(shift.value - reweight.value) <= 3 * math.hypot(shift.stderr, reweight.stderr)


def test_chaos_integral_errors(disc_samples):
    p = Params(1.0)
    with pytest.raises(DomainError):
        chaos_integral(disc_samples, p.Q, [], p)
    with pytest.raises(UsageError):
        chaos_integral(disc_samples, 0.0, [], p, method="magic")


def test_total_mass_positive(disc_samples):
    mass = ChaosMeasure.from_sample(disc_samples, 1.0).total_mass()
    assert np.all(np.isfinite(mass)) and np.all(mass > 0)


def test_mass_density_stable_under_refinement():
    # halving the spacing halves eps; both grids reach the same inner radius
    densities = []
    for n_angles, step, grid_n in ((24, 1 / 3, 505), (48, 1 / 6, 2017)):
        grid = make_grid("disc", grid_n, n_angles=n_angles, step=step)
        batch = next(FieldSource(grid, seed=9).batches(1000, batch=1000))
        mass = ChaosMeasure.from_sample(batch, 0.8).total_mass()
        densities.append(mass.mean() / grid.areas.sum())
    assert densities[1] / densities[0] == pytest.approx(1.0, abs=0.10)


def test_half_disc_boundary_measure():
    sample = sample_field("half_disc", 1024, seed=4, samples=200)
    grid = sample.grid
    assert np.all(grid.points.imag >= 0)
    mass = ChaosMeasure.from_sample(sample, 1.0, boundary=True).total_mass()
    assert np.all(mass > 0)
    # boundary atoms carry the field X(x) + X(conj x) over sqrt 2, covariance -2 log|x - y|
    i, j = np.flatnonzero(grid.on_boundary)[[3, 5]]
    target = -2 * math.log(abs(grid.points[i] - grid.points[j]))
    assert sample.covariance[i, j] == pytest.approx(target, rel=0.02)


def test_grid_budget():
    with pytest.raises(UsageError):
        make_grid("disc", 5000)
    with pytest.raises(UsageError):
        make_grid("sphere", 100)


def test_fusion_targets():
    p = Params(1.5)
    target, regime = fusion_target(2.0, p)
    assert regime == "frozen"
    assert target == pytest.approx(-3.0 + 0.5 * (3.5 - p.Q) ** 2)
    assert target == pytest.approx(-1.996, abs=1e-3)
    assert fusion_target(-1.0, Params(1.0)) == (1.0, "subcritical")


def test_scaling_fit_errors():
    p = Params(1.0)
    with pytest.raises(DomainError):
        scaling_fit(-1.0, p, radii=[0.01, 0.05, 0.1, 0.3], samples=10)
    with pytest.raises(UsageError):
        scaling_fit(-1.0, p, radii=[0.05, 0.1, 0.3], samples=10)
    with pytest.raises(ResolutionError):
        scaling_fit(-1.0, p, radii=[0.02, 0.05, 0.1, 0.3], samples=10, grid_n=300)
    with pytest.raises(DomainError):
        scaling_fit(p.Q - p.gamma, p, samples=10)


def test_scaling_fit_is_reproducible():
    p = Params(1.0)
    a = scaling_fit(-1.0, p, samples=200, seed=5)
    b = scaling_fit(-1.0, p, samples=200, seed=5)
    assert a.slope == b.slope and a.log_means == b.log_means
    assert len(a.radii) >= 4 and a.decades >= 1.2


def test_radial_decomposition(disc_samples):
    report = radial_decomposition_check(disc_samples, (0.0, 0.5, 1.0, 1.5, 2.0))
    assert report.variances[0] == pytest.approx(0.0, abs=1e-20)
    assert report.slope_ok and abs(report.slope - 1) <= 0.1
    assert report.independent and report.min_p_value > 0.01


def test_radial_check_needs_rings(disc_samples):
    with pytest.raises(ResolutionError):
        radial_decomposition_check(disc_samples, (0.55, 1.0))
