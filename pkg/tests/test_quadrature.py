import math

import mpmath as mp
import numpy as np
import pytest

from hem.closedform import (
    SelbergArgs,
    boundary_residues,
    df_args,
    half_disc_angular,
    residue_J1,
    selberg21,
    selberg22,
)
from hem.core import DomainError, Params, PhaseError, alpha21
from hem.quadrature import (
    DEFAULT_OFFSETS,
    mc_dotsenko_fateev,
    quad_boundary,
    quad_disc,
    quad_J1,
    quad_selberg21,
    quad_selberg22,
    regularity_probe,
    residue_extrapolate,
)

P1 = Params(1.0)


def rel(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))


# ---------------------------------------------------------------------------
# Selberg quadrature


def test_selberg22_trivial_values():
    assert quad_selberg22(SelbergArgs(1, 1, 0)).value == pytest.approx(1.0, rel=1e-12)
    assert quad_selberg22(SelbergArgs(0.5, 0.5, 0)).value == pytest.approx(math.pi**2, rel=1e-12)


def test_selberg22_against_closed_form():
    args = SelbergArgs(1, 1, 0.5)
    assert rel(quad_selberg22(args).value, selberg22(args).value) <= 1e-8


def test_selberg22_random_triples():
    rng = np.random.default_rng(3)
    done = 0
    while done < 5:
        args = SelbergArgs(*rng.uniform(0.1, 2.0, 2), rng.uniform(-0.4, 1.0))
        if not args.converges22():
            continue
        q = quad_selberg22(args)
        assert abs(q.value - selberg22(args).value.real) <= max(1e-7 * abs(q.value), 3 * q.error_estimate)
        assert q.error_estimate >= 0
        done += 1


def test_selberg21_against_closed_form():
    args = SelbergArgs(0.4, 0.3, 0.1)
    assert rel(quad_selberg21(args).value, selberg21(args).value) <= 1e-6


def test_selberg_domain_errors():
    with pytest.raises(DomainError):
        quad_selberg22(SelbergArgs(-0.1, 1, 0))
    with pytest.raises(DomainError):
        quad_selberg21(SelbergArgs(0.5, 0.5, 0.2))


# ---------------------------------------------------------------------------
# disc integrals


def test_J1_exact_point():
    # integrand 1/|w1 - w2| on the disc squared; mean inverse distance 16/(3 pi)
    q = quad_J1(-2.0, P1, tol=1e-9)
    assert q.value == pytest.approx(16 * math.pi / 3, rel=1e-8)
    assert q.error_estimate <= 1e-9 * q.value + 1e-12


@pytest.mark.parametrize("alpha", [-2.0, -1.2, -0.8])
def test_J1_scaling(alpha):
    full = quad_J1(alpha, P1).value
    half = quad_J1(alpha, P1, radius=0.5).value
    assert half / full == pytest.approx(0.5 ** (-2 * alpha - 1), rel=1e-8)


def test_J1_monotone_and_positive():
    alphas = [-4.0, -3.0, -2.0, -1.0, -0.7, -0.55]
    values = [quad_J1(a, P1).value for a in alphas]
    assert all(v > 0 for v in values)
    assert all(x < y for x, y in zip(values, values[1:]))


def test_disc_domain_errors():
    with pytest.raises(DomainError):
        quad_J1(alpha21(P1), P1)
    with pytest.raises(DomainError):
        quad_disc("J9", -1.0, P1)


# ---------------------------------------------------------------------------
# boundary integrals


def test_half_disc_factorization():
    q = quad_boundary("half_disc_Re_w2", -1.0, P1)
    # symmetric about pi/2; t = u^2 removes the endpoint singularity
    profile = 2 * mp.quad(lambda u: 2 * u * (2 * mp.sin(u * u)) ** -0.5 * mp.cos(2 * u * u), [0, mp.sqrt(mp.pi / 2)])
    assert q.extra["profile"] == pytest.approx(float(profile), rel=1e-12)
    assert q.value / q.extra["profile"] == pytest.approx(2.0, rel=1e-14)
    assert q.extra["profile"] == pytest.approx(half_disc_angular(P1), rel=1e-12)


def test_opposite_side_positive():
    q = quad_boundary("I11_opposite", -1.0, P1)
    assert math.isfinite(q.value) and q.value > 0


def test_same_side_is_selberg():
    for alpha in (-1.0, -0.7):
        q = quad_boundary("I11_same_side", alpha, P1)
        assert rel(q.value, selberg22(SelbergArgs(-alpha / 2, 1, -0.25)).value) <= 1e-7


def test_boundary_domain_error():
    with pytest.raises(DomainError):
        quad_boundary("I11_opposite", 0.0, P1)
    with pytest.raises(DomainError):
        quad_boundary("nope", -1.0, P1)


# ---------------------------------------------------------------------------
# residue extrapolation


def test_residue_of_simple_pole():
    fit = residue_extrapolate(lambda a: 1 / (a - 0.3), 0.3)
    assert fit.residue == pytest.approx(1.0, abs=1e-12)
    assert abs(fit.finite_part) < 1e-10 and abs(fit.slope) < 1e-9
    assert fit.warning is None
    assert list(fit.sample_offsets) == sorted(fit.sample_offsets, reverse=True)


@pytest.mark.parametrize("gamma", [0.8, 1.0, 1.2])
def test_residue_round_trip_closed_form(gamma):
    p = Params(gamma)
    offsets = [0.002 * 2.0**-k for k in range(7)]
    fit = residue_extrapolate(lambda a: selberg22(SelbergArgs(1, -gamma * a / 2, -gamma**2 / 4)).value,
                              alpha21(p), offsets)
    expected = -(2 / gamma) * math.gamma(gamma**2 / 4) * math.gamma(1 - gamma**2 / 2) / math.gamma(1 - gamma**2 / 4)
    assert rel(fit.residue, expected) <= 1e-6


def test_residue_offsets_validation():
    with pytest.raises(DomainError):
        residue_extrapolate(lambda a: a, 0.0, [0.1, 0.2, 0.05])
    with pytest.raises(DomainError):
        residue_extrapolate(lambda a: a, 0.0, [0.1, 0.05])
    with pytest.raises(DomainError):
        residue_extrapolate(lambda a: a, 0.0, [0.1, 0.0, -0.1])
    assert len(DEFAULT_OFFSETS) == 7 and DEFAULT_OFFSETS[0] == 0.2


def test_ill_conditioned_fit_warns():
    fit = residue_extrapolate(lambda a: math.exp(40 * a), 0.0)
    assert fit.warning is not None


def test_opposite_side_residue():
    pole = alpha21(P1)
    fit = residue_extrapolate(lambda a: quad_boundary("I11_opposite", a, P1).value, pole)
    assert rel(fit.residue, boundary_residues(P1).res_Ix11) <= 0.02


def test_half_disc_residue():
    pole = alpha21(P1)
    fit = residue_extrapolate(lambda a: quad_boundary("half_disc_Re_w2", a, P1).value, pole)
    assert rel(fit.residue, boundary_residues(P1).res_I2) <= 0.02


# ---------------------------------------------------------------------------
# Monte Carlo


def test_mc_standard_error_scaling():
    args = df_args(-1.0, 1.0, P1)
    small = mc_dotsenko_fateev(args, 200_000, seed=1)
    large = mc_dotsenko_fateev(args, 400_000, seed=2)
    assert small.method == "monte-carlo" and small.seed == 1
    assert large.error_estimate / small.error_estimate == pytest.approx(1 / math.sqrt(2), rel=0.15)


def test_mc_is_reproducible():
    args = df_args(-1.0, 1.0, P1)
    assert mc_dotsenko_fateev(args, 50_000, seed=5) == mc_dotsenko_fateev(args, 50_000, seed=5)


def test_mc_domain_errors():
    # beta too small for integrability at infinity
    with pytest.raises(DomainError):
        mc_dotsenko_fateev(df_args(-2.0, 1.0, P1), 1000)
    with pytest.raises(DomainError):
        mc_dotsenko_fateev(df_args(-1.0, 1.0, P1), 1)


# ---------------------------------------------------------------------------
# regularity probe


def test_probe_J1_control_detects_pole():
    report = regularity_probe("J1", P1)
    assert not report.regular
    assert abs(report.slope) < 0.2
    assert report.reference_residue == pytest.approx(residue_J1(P1))
    assert len(report.offsets) == len(report.products) == 7


def test_probe_J2_plus_J3_is_regular():
    report = regularity_probe("J2+J3", P1)
    assert report.regular and report.slope >= 0.9


def test_probe_errors():
    with pytest.raises(PhaseError):
        regularity_probe("J2", Params(1.6))
    with pytest.raises(DomainError):
        regularity_probe("J7", P1)
