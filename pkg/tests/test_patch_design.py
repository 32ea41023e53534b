"""Closed-form patch sizing chain."""

import math

import pytest
from hypothesis import given, strategies as st

from thzant.constants import C0
from thzant.patch_design import (
    DesignError,
    DesignInputs,
    design_patch,
    effective_permittivity,
    inset_depth,
    patch_length,
    patch_width,
)

UM = 1e-6

# frozen from a 40-digit mpmath evaluation of the closed forms at
# f_r = 800 GHz, eps_r = 10.2, h = 45 um, W = 60 um
W_EQ1_REF = 7.917839731694378e-05
EPS_EFF_60UM_REF = 7.054647723677454
L_P_REF = 4.050145673694489e-05


def test_width_at_design_point():
    w = patch_width(800e9, 10.2)
    assert w == pytest.approx(W_EQ1_REF, rel=1e-13)
    assert w == pytest.approx(79.2 * UM, rel=2e-3)


def test_width_free_space_limit():
    f = 650e9
    assert patch_width(f, 1.0) == pytest.approx(C0 / (2 * f), rel=1e-15)


def test_width_inverse_in_frequency():
    assert patch_width(1.6e12, 10.2) == pytest.approx(patch_width(800e9, 10.2) / 2, rel=1e-14)


def test_width_rejects_bad_inputs():
    with pytest.raises(DesignError):
        patch_width(-1e9, 10.2)
    with pytest.raises(DesignError):
        patch_width(800e9, 0.5)
    with pytest.raises(DesignError):
        patch_width(float("nan"), 10.2)


def test_eps_eff_homogeneous_air():
    assert effective_permittivity(1.0, 45 * UM, 60 * UM) == 1.0


def test_eps_eff_thin_substrate_limit():
    assert effective_permittivity(10.2, 1e-12, 60 * UM) == pytest.approx(10.2, rel=1e-3)


def test_eps_eff_regression():
    assert effective_permittivity(10.2, 45 * UM, 60 * UM) == pytest.approx(
        EPS_EFF_60UM_REF, rel=1e-13
    )


@given(
    st.floats(min_value=1.0, max_value=13.0),
    st.floats(min_value=1e-6, max_value=1e-3),
    st.floats(min_value=1e-6, max_value=1e-2),
)
def test_eps_eff_bounded(eps_r, h, w):
    e = effective_permittivity(eps_r, h, w)
    assert 1.0 <= e <= eps_r + 1e-12


def test_length_without_fringing():
    # delta_L -> 0 as h -> 0: L -> c/(2 f sqrt(eps_eff)) with eps_eff = 1
    f = 800e9
    l = patch_length(f, 1.0, 1e-15, 60 * UM)
    assert l == pytest.approx(C0 / (2 * f), rel=1e-6)


def test_length_regression():
    eps_eff = effective_permittivity(10.2, 45 * UM, 60 * UM)
    assert patch_length(800e9, eps_eff, 45 * UM, 60 * UM) == pytest.approx(L_P_REF, rel=1e-13)


def test_length_decreases_with_height():
    eps_eff = effective_permittivity(10.2, 45 * UM, 60 * UM)
    l1 = patch_length(800e9, eps_eff, 30 * UM, 60 * UM)
    l2 = patch_length(800e9, eps_eff, 45 * UM, 60 * UM)
    assert l2 < l1


def test_length_rejects_electrically_thick():
    with pytest.raises(DesignError):
        patch_length(800e9, 7.0, 400 * UM, 60 * UM)


def test_inset_edge_feed():
    assert inset_depth(36 * UM, 240.0, 240.0) == 0.0


def test_inset_exact_fractions():
    l_p = 36 * UM
    assert inset_depth(l_p, 240.0, 120.0) == pytest.approx(l_p / 4, rel=1e-12)
    assert inset_depth(l_p, 240.0, 60.0) == pytest.approx(l_p / 3, rel=1e-12)


def test_inset_rejects_unreachable_impedance():
    with pytest.raises(DesignError):
        inset_depth(36 * UM, 240.0, 300.0)


@given(st.floats(min_value=1.0, max_value=239.0))
def test_inset_in_first_half(z0):
    y0 = inset_depth(36 * UM, 240.0, z0)
    assert 0.0 <= y0 < 18 * UM
    # round trip through the taper
    r = 240.0 * math.cos(math.pi * y0 / (36 * UM)) ** 2
    assert r == pytest.approx(z0, rel=1e-9)


def test_scale_invariance():
    """f_r -> k f_r with lengths -> lengths/k keeps dimensionless ratios."""
    k = 3.7
    d1 = design_patch(DesignInputs(f_r=800e9, eps_r=10.2, h=45 * UM))
    d2 = design_patch(DesignInputs(f_r=800e9 * k, eps_r=10.2, h=45 * UM / k))
    assert d2.w_p * k == pytest.approx(d1.w_p, rel=1e-12)
    assert d2.l_p * k == pytest.approx(d1.l_p, rel=1e-12)
    assert d2.eps_eff == pytest.approx(d1.eps_eff, rel=1e-12)
    assert d2.inset / d2.l_p == pytest.approx(d1.inset / d1.l_p, rel=1e-12)


def test_design_chain_runs():
    d = design_patch(DesignInputs(f_r=800e9, eps_r=10.2, h=45 * UM))
    assert 0 < d.l_p < d.w_p
    assert 1.0 <= d.eps_eff <= 10.2
