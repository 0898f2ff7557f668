import csv
import io
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hem.closedform import (
    CSV_COLUMNS,
    HemLabel,
    MeroSample,
    SelbergArgs,
    boundary_bracket,
    boundary_residues,
    constants_csv,
    dotsenko_fateev,
    dotsenko_fateev_leading,
    fzz_conic,
    fzz_roots,
    gamma_fn,
    hem_chain,
    hem_constant,
    neretin_df,
    residue_J1,
    residue_J1_forms,
    selberg21,
    selberg22,
)
from hem.core import Params, PhaseError, PoleError, UnsupportedOrderError, UsageError, alpha21

mp.mp.dps = 40


def mp_selberg22(a, b, c):
    """Gamma-product oracle evaluated in arbitrary precision."""
    g = mp.gamma
    return g(a) * g(b) * g(a + c) * g(b + c) * g(1 + 2 * c) / (g(a + b + c) * g(a + b + 2 * c) * g(1 + c))


def mp_residue_J1(gamma):
    x = mp.mpf(gamma) ** 2 / 4
    return -(2 / mp.mpf(gamma)) * (mp.pi * mp.gamma(x) / mp.gamma(1 - x)) ** 2 * mp.gamma(1 - 2 * x) / mp.gamma(2 * x)


def mp_G(gamma):
    x = mp.mpf(gamma) ** 2 / 4
    return mp.gamma(x) * mp.gamma(1 - 2 * x) / mp.gamma(1 - x)


def rel(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))


# ---------------------------------------------------------------------------
# Gamma function


def test_gamma_fn_values():
    assert gamma_fn(1) == 1
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert rel(gamma_fn(0.25), mp.gamma(0.25)) < 1e-14
    assert rel(gamma_fn(0.3 + 2.1j), mp.gamma(mp.mpc(0.3, 2.1))) < 1e-13


def test_gamma_fn_pole():
    with pytest.raises(PoleError, match="-2"):
        gamma_fn(-2)
    with pytest.raises(PoleError):
        gamma_fn(0)


# ---------------------------------------------------------------------------
# Selberg integrals


def test_selberg22_decoupled():
    for a, b in ((1, 1), (0.5, 0.5), (0.3, 1.7)):
        beta = mp.beta(a, b)
        assert rel(selberg22(SelbergArgs(a, b, 0)).value, beta**2) < 1e-13


def test_selberg22_unit_point():
    # the defining integral of |t1 - t2| over the unit square is 1/3
    assert selberg22(SelbergArgs(1, 1, 0.5)).value == pytest.approx(1 / 3, rel=1e-14)


positive = st.floats(min_value=0.05, max_value=3.0, allow_nan=False)


@given(positive, positive, st.floats(min_value=-0.2, max_value=2.0))
@settings(max_examples=100)
def test_selberg22_symmetry_and_oracle(a, b, c):
    args = SelbergArgs(a, b, c)
    if not args.converges22():
        return
    v = selberg22(args).value
    assert rel(selberg22(SelbergArgs(b, a, c)).value, v) <= 1e-12
    assert rel(v, mp_selberg22(a, b, c)) <= 1e-11


@pytest.mark.parametrize("gamma", [0.6, 1.0, 1.3])
def test_selberg22_residue_at_alpha21(gamma):
    p = Params(gamma)
    a21 = alpha21(p)
    args = SelbergArgs(1, -gamma * a21 / 2, -gamma**2 / 4)
    s = selberg22(args, direction=(0, -gamma / 2, 0))
    assert s.pole_flag and s.order == 1
    assert rel(s.residue, -(2 / gamma) * mp_G(gamma)) < 1e-13
    # arbitrary-precision difference quotient as an independent limit
    d = mp.mpf("1e-25")
    b = -gamma * (a21 - d) / 2
    limit = -d * mp_selberg22(1, b, -mp.mpf(gamma) ** 2 / 4)
    assert rel(s.residue, limit) < 1e-12


def test_double_pole_is_unsupported():
    with pytest.raises(UnsupportedOrderError):
        selberg22(SelbergArgs(0, 0, 0.3))


def test_mero_sample_invariant():
    with pytest.raises(ValueError):
        MeroSample(point=None, value=1.0, residue=None, pole_flag=True)


def test_selberg21_decoupled():
    for a, b in ((0.3, 0.4), (0.2, 0.25)):
        expected = mp.sin(mp.pi * a) / mp.sin(mp.pi * (a + b)) * mp.beta(a, b) ** 2
        assert rel(selberg21(SelbergArgs(a, b, 0)).value, expected) < 1e-13


def test_selberg21_sine_zero():
    s = selberg21(SelbergArgs(0.3, 0.2, 0.7))
    assert s.value == 0 and s.order < 0


def test_neretin_sine_zero():
    args = SelbergArgs(0.5, 1, 0.1)
    s = neretin_df(args, args)
    assert s.value == 0 and s.order < 0


def test_neretin_requires_integer_differences():
    with pytest.raises(UsageError):
        neretin_df(SelbergArgs(0.5, 0.5, 0.1), SelbergArgs(0.7, 0.5, 0.1))


@pytest.mark.parametrize("offset", [1e-3, 1e-4, 1e-5])
def test_dotsenko_fateev_leading_behaviour(offset):
    p = Params(1.0)
    alpha = alpha21(p) - offset
    beta = 1e-2 * offset
    ratio = dotsenko_fateev(alpha, beta, p).value / dotsenko_fateev_leading(alpha, beta, p)
    assert abs(ratio - 1) <= 0.1 * offset


# ---------------------------------------------------------------------------
# residues


def test_residue_J1_value():
    value = residue_J1(Params(1.0))
    assert value == pytest.approx(-172.79, abs=0.01)
    assert rel(value, mp_residue_J1(1.0)) < 1e-13


@pytest.mark.parametrize("gamma", [0.5, 0.8, 1.0, 1.2, 1.4])
def test_residue_J1_two_forms(gamma):
    stated, sine = residue_J1_forms(Params(gamma))
    assert rel(stated, sine) <= 1e-12
    assert rel(stated, mp_residue_J1(gamma)) <= 1e-12


def test_residue_J1_phase_errors():
    with pytest.raises(PhaseError):
        residue_J1(Params(1.6))
    with pytest.raises(PhaseError):
        residue_J1(Params(math.sqrt(2)))


def test_boundary_residues():
    sup = boundary_residues(Params(1.6))
    assert (sup.res_I2, sup.res_I11, sup.res_Ix11) == (0.0, 0.0, 0.0)
    r = boundary_residues(Params(1.0))
    G = mp.gamma(0.25) * mp.gamma(0.5) / mp.gamma(0.75)
    assert rel(r.res_I11, -2 * G) < 1e-14
    assert r.res_Ix11 / r.res_I11 == pytest.approx(math.sqrt(2) / 2, rel=1e-14)
    with pytest.raises(PhaseError):
        boundary_residues(Params(math.sqrt(2)))


# ---------------------------------------------------------------------------
# constants


def test_bulk12_example():
    c = hem_constant("bulk12", Params(1.0, mu=1.0))
    assert c.stated == pytest.approx(4.5 * math.pi, rel=1e-14)
    assert c.stated == pytest.approx(14.137, abs=1e-3)
    assert rel(c.chained, c.stated) <= 1e-10


def test_supercritical_21_constants_vanish():
    for g in (1.5, 1.6, 1.7, 1.9):
        for label in ("bulk21", "boundary21"):
            c = hem_constant(label, Params(g, 1.0, 0.7, 0.4))
            assert c.stated == 0 and c.chained == 0


def test_boundary21_zero_on_conic():
    g, m = 1.0, 0.8
    x = math.pi * g * g / 4
    mu = m * m * (2 - 2 * math.cos(x)) / math.sin(x)
    c = hem_constant("boundary21", Params(g, mu, m, m))
    assert abs(c.stated) < 1e-14 and abs(c.chained) < 1e-14


def test_bulk21_chain_example():
    p = Params(1.0)
    assert rel(hem_chain("bulk21", p), hem_constant("bulk21", p).stated) <= 1e-10


@pytest.mark.parametrize("label", ["bulk12", "bulk21", "boundary12"])
def test_chain_consistency_grid(label):
    for g in (0.6, 0.8, 1.0, 1.2, 1.35):
        for mu in (0.5, 1.0, 2.0):
            c = hem_constant(label, Params(g, mu, 0.3 * mu, 0.7))
            assert rel(c.chained, c.stated) <= 1e-10


def test_boundary21_ratio_independent_of_mu():
    g = 1.1
    ratios = {round(hem_constant("boundary21", Params(g, mu, ml, mr)).ratio, 12)
              for mu, ml, mr in ((1, 1, 1), (0.5, 0.3, 0.7), (2, 1.5, 0.4))}
    assert len(ratios) == 1


def test_unknown_label():
    with pytest.raises(UsageError):
        hem_constant("bulk33", Params(1.0))


def test_constant_to_dict_citations():
    d = hem_constant(HemLabel.BULK12, Params(1.0)).to_dict()
    assert d["label"] == "bulk12" and d["phase"] == "subcritical" and d["citations"]


# ---------------------------------------------------------------------------
# FZZ conic


def test_fzz_trivial_point():
    conic = fzz_conic(Params(1.0, 0.0, 0.0, 0.0))
    assert conic.value == 0 and conic.on_conic


def test_fzz_example_roots():
    c = math.cos(math.pi / 4)
    root = math.sqrt(c * c - 1 + math.sin(math.pi / 4))
    roots = fzz_roots(1.0, 1.0, 1.0)
    assert roots == pytest.approx([c - root, c + root], rel=1e-14)
    for r in roots:
        assert r > 0
        assert abs(boundary_bracket(Params(1.0, 1.0, 1.0, r))) <= 1e-12


def test_fzz_random_points():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 50:
        g = rng.uniform(0.2, 1.9)
        if abs(g - math.sqrt(2)) < 1e-3:
            continue
        ml, mu = rng.uniform(0, 3, size=2)
        for r in fzz_roots(g, ml, mu):
            if r >= 0:
                p = Params(g, mu, ml, r)
                assert abs(boundary_bracket(p)) <= 1e-12
                assert fzz_conic(p).on_conic
                checked += 1


def test_constants_csv_columns():
    rows = [hem_constant(label, Params(1.0, 1.0, 1.0, 1.0)) for label in HemLabel]
    table = list(csv.reader(io.StringIO(constants_csv(rows))))
    assert tuple(table[0]) == CSV_COLUMNS
    assert [r[4] for r in table[1:]] == [label.value for label in HemLabel]
    assert float(table[1][5]) == pytest.approx(rows[0].stated)
