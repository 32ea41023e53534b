"""Cavity resonance analysis, Trentini design, LC sheet fitting."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thzant.cavity import (
    CavityError,
    CavityParams,
    FitError,
    cavity_height,
    fit_sheet_impedance,
    phase_zero_crossing,
    sweep_cavity,
    trentini_directivity,
    trentini_directivity_db,
)
from thzant.constants import C0
from thzant.materials import DielectricSpec
from thzant.spectrum import Spectrum, uniform_band
from thzant.tmm import PEC, LayerStack, LCSheet, Slab, reflection_spectrum, tmm_reflection


def linear_phase_spectrum(f_lo, f_hi, phase_lo, phase_hi, n=201):
    f = np.linspace(f_lo, f_hi, n)
    phase = np.linspace(phase_lo, phase_hi, n)
    return Spectrum(f, np.exp(1j * phase))


def test_zero_crossing_linear_phase():
    spec = linear_phase_spectrum(700e9, 900e9, math.pi / 2, -math.pi / 2)
    crossings = phase_zero_crossing(spec)
    assert crossings.size == 1
    assert crossings[0] == pytest.approx(800e9, rel=1e-9)


def test_zero_crossing_constant_phase_empty():
    spec = linear_phase_spectrum(700e9, 900e9, math.pi / 4, math.pi / 4)
    assert phase_zero_crossing(spec).size == 0


def test_zero_crossing_multiple_ascending():
    f = np.linspace(600e9, 900e9, 301)
    phase = 0.5 * np.sin(2 * np.pi * (f - 600e9) / 120e9)  # several sign flips
    crossings = phase_zero_crossing(Spectrum(f, np.exp(1j * phase)))
    assert crossings.size >= 3
    assert np.all(np.diff(crossings) > 0)


def test_zero_crossing_of_lc_sheet_matches_resonance():
    sheet = LCSheet(1e-12, 3.957e-14)  # series resonance ~ 800.1 GHz
    assert 600e9 < sheet.resonance_hz < 1000e9
    f_axis = uniform_band(600e9, 1000e9, 1e9)
    gamma = reflection_spectrum(LayerStack(layers=(sheet,)), f_axis)
    crossings = phase_zero_crossing(gamma)
    assert crossings.size == 1
    assert abs(crossings[0] - sheet.resonance_hz) <= 1e9  # within grid resolution


@given(st.floats(min_value=0.1, max_value=10.0))
def test_zero_crossing_scale_invariant(scale):
    sheet = LCSheet(1e-12, 3.957e-14)
    f_axis = uniform_band(700e9, 900e9, 2e9)
    gamma = reflection_spectrum(LayerStack(layers=(sheet,)), f_axis)
    scaled = Spectrum(gamma.f, gamma.values * scale)
    assert np.array_equal(phase_zero_crossing(gamma), phase_zero_crossing(scaled))


def test_cavity_height_pec_like():
    f = 800e9
    lam = C0 / f
    assert cavity_height(math.pi, math.pi, f, 0) == pytest.approx(lam / 2, rel=1e-14)
    assert cavity_height(math.pi, math.pi, f, 1) == pytest.approx(lam, rel=1e-14)
    assert cavity_height(0.0, math.pi, f, 0) == pytest.approx(lam / 4, rel=1e-14)


def test_cavity_height_positive_branch():
    f = 800e9
    lam = C0 / f
    # strongly negative phases push N=0 below zero; half wave is added
    z = cavity_height(-3.0, -3.0, f, 0)
    assert z == pytest.approx(-6.0 * lam / (4 * math.pi) + lam / 2, rel=1e-12)
    assert z > 0


def test_cavity_height_half_wave_periodic_in_order():
    f = 800e9
    lam = C0 / f
    z0 = cavity_height(1.0, 2.0, f, 0)
    for n in (1, 2, 5):
        assert cavity_height(1.0, 2.0, f, n) == pytest.approx(z0 + n * lam / 2, rel=1e-12)


def test_trentini_values():
    assert trentini_directivity(0.0) == 1.0
    assert trentini_directivity(1.0 / 3.0) == pytest.approx(2.0, rel=1e-14)
    assert trentini_directivity(0.9) == pytest.approx(19.0, rel=1e-14)
    assert trentini_directivity_db(0.9) == pytest.approx(12.7875, abs=1e-3)
    assert trentini_directivity_db(1.0 / 3.0) == pytest.approx(3.0103, abs=1e-3)


@given(st.floats(min_value=0.0, max_value=0.99), st.floats(min_value=0.001, max_value=0.009))
def test_trentini_monotone(g, dg):
    assert trentini_directivity(g + dg) > trentini_directivity(g)


def test_trentini_rejects_unity():
    with pytest.raises(CavityError):
        trentini_directivity(1.0)
    with pytest.raises(CavityError):
        trentini_directivity(-0.1)


def test_cavity_params_validation():
    with pytest.raises(CavityError):
        CavityParams(z_s=-1e-6, phi_prs=0.0)
    with pytest.raises(CavityError):
        CavityParams(z_s=1e-6, phi_prs=4.0)
    with pytest.raises(CavityError):
        CavityParams(z_s=1e-6, phi_prs=0.0, order=-1)


# --- sheet fitting ----------------------------------------------------------


def test_fit_recovers_known_lc_sheet():
    sheet = LCSheet(1.6e-11, 1.95e-15)  # resonance ~ 901 GHz, moderate |gamma|
    f_axis = uniform_band(500e9, 1500e9, 5e9)
    gamma = reflection_spectrum(LayerStack(layers=(sheet,)), f_axis)
    fit = fit_sheet_impedance(gamma)
    assert fit.l_henry == pytest.approx(sheet.l_henry, rel=0.01)
    assert fit.c_farad == pytest.approx(sheet.c_farad, rel=0.01)
    assert fit.resonance_hz == pytest.approx(sheet.resonance_hz, rel=0.02)


def test_fit_with_substrate_model():
    substrate = Slab(10e-6, DielectricSpec(2.2, 0.0009))
    sheet = LCSheet(1.6e-11, 1.95e-15)
    f_axis = uniform_band(500e9, 1600e9, 5e9)
    gamma = reflection_spectrum(LayerStack(layers=(sheet, substrate)), f_axis)
    fit = fit_sheet_impedance(gamma, substrate=substrate)
    assert fit.l_henry == pytest.approx(sheet.l_henry, rel=0.01)
    assert fit.c_farad == pytest.approx(sheet.c_farad, rel=0.01)


def test_fit_rejects_no_crossing():
    f = np.linspace(600e9, 900e9, 51)
    gamma = Spectrum(f, np.full(51, 0.3 * np.exp(1j * math.pi / 4)))
    with pytest.raises(FitError):
        fit_sheet_impedance(gamma)


# --- z_s sweeps -------------------------------------------------------------


def test_sweep_pec_sheet_total_reflection():
    f_axis = uniform_band(600e9, 900e9, 10e9)
    results = sweep_cavity((PEC,), [15e-6], f_axis)
    (_, spec), = results
    assert np.allclose(spec.mag(), 1.0, atol=1e-12)


def test_sweep_resonance_decreases_with_zs():
    """Larger separation pulls the cavity resonance down in frequency."""
    sheet = LCSheet(2e-11, 1e-13)  # inductive in band, |gamma| ~ 0.86
    f_axis = uniform_band(400e9, 1200e9, 1e9)
    results = sweep_cavity((sheet,), [160e-6, 180e-6, 200e-6], f_axis)
    res = []
    for _, spec in results:
        crossings = phase_zero_crossing(spec)
        assert crossings.size >= 1
        res.append(crossings[0])
    assert res[0] > res[1] > res[2]


def test_sweep_self_consistent_with_cavity_height():
    """z_s from cavity_height puts the sweep resonance back at f0 within 1%."""
    sheet = LCSheet(2e-11, 1e-13)  # |gamma| ~ 0.86 keeps the ray model honest
    f0 = 800e9
    g0 = tmm_reflection(LayerStack(layers=(sheet,)), f0)
    phi_prs = math.atan2(g0.imag, g0.real)
    z_s = cavity_height(phi_prs, math.pi, f0, 0)
    f_axis = uniform_band(500e9, 1100e9, 0.5e9)
    (_, spec), = sweep_cavity((sheet,), [z_s], f_axis)
    crossings = phase_zero_crossing(spec)
    assert crossings.size >= 1
    nearest = crossings[np.argmin(np.abs(crossings - f0))]
    assert abs(nearest - f0) / f0 < 0.01


def test_sweep_rejects_empty_and_nonpositive():
    f_axis = uniform_band(600e9, 900e9, 10e9)
    with pytest.raises(CavityError):
        sweep_cavity((PEC,), [], f_axis)
    with pytest.raises(CavityError):
        sweep_cavity((PEC,), [-5e-6], f_axis)
