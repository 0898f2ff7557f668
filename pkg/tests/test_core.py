import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hem.core import (
    KacLabel,
    Params,
    Partition,
    Phase,
    UsageError,
    alpha12,
    alpha21,
    delta,
    kac_alpha,
    phase,
)

gammas = st.floats(min_value=0.05, max_value=1.95, allow_nan=False)


def test_kac_alpha_values():
    for g in (0.3, 1.0, 1.7):
        assert kac_alpha(KacLabel(1, 1), Params(g)) == 0.0
    p = Params(1.0)
    assert kac_alpha(KacLabel(2, 1), p) == pytest.approx(-0.5, abs=1e-15)
    assert kac_alpha(KacLabel(1, 2), p) == pytest.approx(-2.0, abs=1e-15)


def test_kac_plus_is_reflection():
    p = Params(0.9)
    for r, s in ((1, 1), (2, 3), (4, 1)):
        minus = kac_alpha(KacLabel(r, s), p)
        assert kac_alpha(KacLabel(r, s, "+"), p) == pytest.approx(2 * p.Q - minus, rel=1e-15)


def test_delta_values():
    p = Params(1.0)
    assert delta(0.0, p) == 0
    assert abs(delta(2 * p.Q, p)) < 1e-15
    assert delta(p.Q, p) == pytest.approx(1.5625, rel=1e-15)


def test_phase_values():
    assert phase(Params(1.0)) is Phase.SUBCRITICAL
    assert phase(Params(1.6)) is Phase.SUPERCRITICAL
    assert phase(Params(math.sqrt(2.0))) is Phase.CRITICAL


@given(gammas)
def test_params_derived_quantities(g):
    p = Params(g)
    assert p.Q >= 2.0 - 1e-12
    assert p.c_L >= 25.0 - 1e-9


def test_kac_products_on_grid():
    for g in np.linspace(0.1, 1.9, 19):
        p = Params(float(g))
        a12, a21 = alpha12(p), alpha21(p)
        assert abs(a12 * a21 - 1) <= 1e-14
        assert abs(a12 + a21 + p.Q) <= 1e-14


@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), gammas)
@settings(max_examples=100)
def test_delta_reflection(alpha, g):
    p = Params(g)
    assert abs(delta(alpha, p) - delta(2 * p.Q - alpha, p)) <= 1e-12 * max(1.0, abs(alpha) ** 2)


@given(st.integers(1, 12), st.integers(1, 12), gammas)
def test_kac_minus_nonpositive(r, s, g):
    assert kac_alpha(KacLabel(r, s), Params(g)) <= 0.0


@given(st.floats(min_value=0.05, max_value=1.41, allow_nan=False))
def test_kac_ordering_subcritical(g):
    p = Params(g)
    assert alpha12(p) < alpha21(p)


@given(gammas, st.floats(0, 10), st.floats(0, 10), st.floats(0, 10))
def test_params_toml_round_trip(g, mu, mul, mur):
    p = Params(g, mu, mul, mur)
    assert Params.from_toml(p.to_toml()) == p


@pytest.mark.parametrize("kwargs", [{"gamma": 0.0}, {"gamma": 2.0}, {"gamma": 1.0, "mu": -1.0},
                                    {"gamma": float("nan")}, {"gamma": True}])
def test_params_rejects_bad_values(kwargs):
    with pytest.raises(UsageError):
        Params(**kwargs)


def test_params_toml_errors():
    with pytest.raises(UsageError):
        Params.from_toml("[params]\nmu = 1.0\n")
    with pytest.raises(UsageError):
        Params.from_toml("[params]\ngamma = 1.0\nnu = 2\n")
    with pytest.raises(UsageError):
        Params.from_toml("gamma = 1.0\n")


def test_kac_label_parse_and_validation():
    assert KacLabel.parse("2,1") == KacLabel(2, 1, "minus")
    assert KacLabel.parse("1,2,+").sign == "plus"
    assert str(KacLabel(3, 2, "plus")) == "3,2,+"
    for text in ("0,1", "1", "a,b", "1,1,x"):
        with pytest.raises(UsageError):
            KacLabel.parse(text)


def test_partition():
    assert Partition(()).level == 0
    assert Partition((3, 1, 1)).level == 5
    assert Partition.parse("(2,1)") == Partition((2, 1))
    assert Partition.parse("()").length == 0
    with pytest.raises(UsageError):
        Partition((1, 2))
    with pytest.raises(UsageError):
        Partition((0,))
