"""Fabry-Perot cavity analysis: reflection-phase resonances, Trentini design,
LC sheet-impedance fitting of a PRS unit cell, and z_s sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .constants import C0
from .spectrum import Spectrum
from .tmm import PEC, LayerStack, LCSheet, Slab, tmm_reflection

#: Maximum acceptable |gamma_fit - gamma_ref| for a usable single-LC model.
FIT_RESIDUAL_LIMIT = 0.1


class CavityError(ValueError):
    """Invalid cavity parameters."""


class FitError(ValueError):
    """Reference reflection not representable by a single series-LC sheet."""


@dataclass(frozen=True)
class CavityParams:
    """Separation z_s [m], reflector phases [rad, in (-pi, pi]], cavity order N."""

    z_s: float
    phi_prs: float
    phi_ground: float = math.pi
    order: int = 0

    def __post_init__(self):
        if self.z_s <= 0.0:
            raise CavityError(f"z_s must be > 0, got {self.z_s}")
        for name in ("phi_prs", "phi_ground"):
            v = getattr(self, name)
            if not (-math.pi < v <= math.pi):
                raise CavityError(f"{name} must lie in (-pi, pi], got {v}")
        if self.order < 0:
            raise CavityError(f"order must be >= 0, got {self.order}")


def phase_zero_crossing(gamma: Spectrum) -> np.ndarray:
    """Frequencies where the wrapped reflection phase changes sign [Hz].

    Linear interpolation between the bracketing samples; multiple crossings
    come back in ascending order; none found -> empty array.
    """
    phase = gamma.phase_rad()
    f = gamma.f
    crossings = []
    for k in range(phase.size - 1):
        a, b = phase[k], phase[k + 1]
        if a == 0.0:
            crossings.append(f[k])
        elif a * b < 0.0:
            crossings.append(f[k] + (f[k + 1] - f[k]) * a / (a - b))
    if phase[-1] == 0.0:
        crossings.append(f[-1])
    return np.asarray(crossings, dtype=float)


def cavity_height(phi_prs: float, phi_ground: float, f: float, order: int = 0) -> float:
    """Resonant separation z_s = (phi_prs + phi_ground) lambda/(4 pi) + N lambda/2.

    If the N = 0 branch is non-positive, one half-wavelength is added so the
    returned height is physical.
    """
    if f <= 0.0:
        raise CavityError(f"f must be > 0, got {f}")
    if order < 0:
        raise CavityError(f"order must be >= 0, got {order}")
    lam = C0 / f
    z = (phi_prs + phi_ground) * lam / (4.0 * math.pi) + order * lam / 2.0
    if z <= 0.0:
        z += lam / 2.0
    return z


def trentini_directivity(gamma_mag: float) -> float:
    """Boresight directivity enhancement (1+|gamma|)/(1-|gamma|), linear."""
    if not (0.0 <= gamma_mag < 1.0):
        raise CavityError(f"|gamma| must lie in [0, 1), got {gamma_mag}")
    return (1.0 + gamma_mag) / (1.0 - gamma_mag)


def trentini_directivity_db(gamma_mag: float) -> float:
    return 10.0 * math.log10(trentini_directivity(gamma_mag))


@dataclass(frozen=True)
class SheetFit:
    """Series-LC fit of a PRS reflection spectrum."""

    l_henry: float
    c_farad: float
    resonance_hz: float
    max_residual: float

    @property
    def sheet(self) -> LCSheet:
        return LCSheet(self.l_henry, self.c_farad)


def _lc_model_stack(l_henry: float, c_farad: float, substrate: Slab | None) -> LayerStack:
    layers: tuple = (LCSheet(l_henry, c_farad),)
    if substrate is not None:
        layers = layers + (substrate,)
    return LayerStack(layers=layers)


def fit_sheet_impedance(gamma_ref: Spectrum, substrate: Slab | None = None) -> SheetFit:
    """Fit a series-LC sheet whose TMM reflection reproduces gamma_ref.

    The reference must contain one reflection-phase sign change (the
    capacitive-to-inductive transition); its location seeds 1/sqrt(LC).
    substrate, when given, is included in the fit model so L and C describe
    the sheet alone. Raises FitError when no crossing exists or the residual
    exceeds FIT_RESIDUAL_LIMIT.
    """
    crossings = phase_zero_crossing(gamma_ref)
    if crossings.size == 0:
        raise FitError("reference spectrum has no reflection-phase sign change to anchor the fit")
    f0 = float(crossings[0])
    omega0 = 2.0 * math.pi * f0

    # seed C from the capacitive low edge via the bare-sheet inversion
    # Y = -2 gamma / (eta (1 + gamma)); exact without substrate, close enough
    # with a thin one
    from .constants import ETA0

    g1 = gamma_ref.values[0]
    y1 = -2.0 * g1 / (ETA0 * (1.0 + g1))
    omega1 = 2.0 * math.pi * gamma_ref.f[0]
    c_seed = y1.imag / omega1
    if not np.isfinite(c_seed) or c_seed <= 0.0:
        c_seed = 1e-15
    l_seed = 1.0 / (omega0**2 * c_seed)

    f_axis = gamma_ref.f
    ref = gamma_ref.values

    def residual(x):
        l_h, c_f = np.exp(x)
        stack = _lc_model_stack(l_h, c_f, substrate)
        model = np.array([tmm_reflection(stack, float(f)) for f in f_axis])
        d = model - ref
        return np.concatenate([d.real, d.imag])

    sol = least_squares(
        residual,
        x0=np.log([l_seed, c_seed]),
        method="lm",
        xtol=1e-14,
        ftol=1e-14,
    )
    l_fit, c_fit = np.exp(sol.x)
    res = residual(sol.x)
    max_res = float(np.max(np.hypot(res[: f_axis.size], res[f_axis.size :])))
    if max_res > FIT_RESIDUAL_LIMIT:
        raise FitError(
            f"single series-LC sheet misfits the reference: max |dGamma| = {max_res:.3f} "
            f"> {FIT_RESIDUAL_LIMIT}"
        )
    return SheetFit(
        l_henry=float(l_fit),
        c_farad=float(c_fit),
        resonance_hz=LCSheet(float(l_fit), float(c_fit)).resonance_hz,
        max_residual=max_res,
    )


def cavity_stack(prs_layers, z_s: float, ground=PEC) -> LayerStack:
    """PRS layers, an air gap of z_s, then the ground plane, seen from above.

    ground is the PEC marker (default) or any sheet layer (e.g. a graphene
    ground), in which case transmission leaks into the air half-space behind.
    """
    if z_s <= 0.0:
        raise CavityError(f"z_s must be > 0, got {z_s}")
    from .materials import AIR

    layers = tuple(prs_layers) + (Slab(z_s, AIR),)
    if isinstance(ground, type(PEC)):
        return LayerStack(layers=layers, exit=PEC)
    return LayerStack(layers=layers + (ground,))


def sweep_cavity(prs_layers, z_s_values, f_axis, ground=PEC) -> list[tuple[float, Spectrum]]:
    """Cavity input reflection spectra for each separation in z_s_values.

    Results are (z_s, Spectrum) pairs in input order; evaluation order has no
    effect on the values (pure per-point TMM).
    """
    z_s_values = [float(z) for z in z_s_values]
    if not z_s_values:
        raise CavityError("z_s sweep list is empty")
    if any(z <= 0.0 for z in z_s_values):
        raise CavityError("all z_s values must be > 0")
    f_axis = np.asarray(f_axis, dtype=float)
    out = []
    for z_s in z_s_values:
        stack = cavity_stack(prs_layers, z_s, ground)
        values = np.array([tmm_reflection(stack, float(f)) for f in f_axis])
        out.append((z_s, Spectrum(f_axis, values)))
    return out
