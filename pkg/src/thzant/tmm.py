"""1-D stratified-media transfer-matrix engine.

Layers are dielectric slabs or zero-thickness current sheets; terminal
half-spaces are dielectrics or PEC. e^{+j omega t} convention: +z propagation
goes as e^{-j k z}, passive media have Im(k) <= 0, and the reflection phase
of a PEC is pi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .constants import C0, ETA0
from .materials import (
    AIR,
    DEFAULT_DESIGN_FREQUENCY,
    ConductorSheetSpec,
    DielectricSpec,
    GrapheneSpec,
    graphene_sigma,
)


class StackError(ValueError):
    """Invalid layer stack or propagation setup."""


@dataclass(frozen=True)
class Slab:
    """Homogeneous dielectric layer of finite thickness [m]."""

    thickness: float
    material: DielectricSpec

    def __post_init__(self):
        if not (math.isfinite(self.thickness) and self.thickness > 0.0):
            raise StackError(f"slab thickness must be > 0, got {self.thickness}")


@dataclass(frozen=True)
class LCSheet:
    """Series-LC sheet: Z_s = j(omega L - 1/(omega C)), per square."""

    l_henry: float
    c_farad: float

    def __post_init__(self):
        if self.l_henry <= 0.0 or self.c_farad <= 0.0:
            raise StackError("LC sheet requires L > 0 and C > 0")

    @property
    def resonance_hz(self) -> float:
        return 1.0 / (2.0 * math.pi * math.sqrt(self.l_henry * self.c_farad))

    def surface_admittance(self, f: float) -> complex:
        omega = 2.0 * math.pi * f
        if omega == 0.0:
            return 0.0 + 0.0j  # series C blocks DC
        z = 1j * (omega * self.l_henry - 1.0 / (omega * self.c_farad))
        if z == 0:
            return complex(1e30)  # exactly at resonance: short
        return 1.0 / z


@dataclass(frozen=True)
class ConductingSheet:
    """Fixed surface conductance G = sigma_dc * t [S per square] (thin metal)."""

    conductance: float

    def __post_init__(self):
        if self.conductance <= 0.0:
            raise StackError("sheet conductance must be > 0")

    @classmethod
    def from_spec(cls, spec: ConductorSheetSpec) -> "ConductingSheet":
        return cls(spec.sheet_conductance)

    def surface_admittance(self, f: float) -> complex:
        return complex(self.conductance)


@dataclass(frozen=True)
class GrapheneSheet:
    """Dispersive graphene sheet, admittance = intraband sheet conductivity."""

    spec: GrapheneSpec = GrapheneSpec()

    def surface_admittance(self, f: float) -> complex:
        return graphene_sigma(self.spec, f)


class PecSheet:
    """Perfect electric conductor plane; everything behind it is shorted out."""

    def __eq__(self, other):
        return isinstance(other, PecSheet)

    def __repr__(self):
        return "PecSheet()"


PEC = PecSheet()
Layer = Union[Slab, LCSheet, ConductingSheet, GrapheneSheet, PecSheet]
Terminal = Union[DielectricSpec, PecSheet]


@dataclass(frozen=True)
class LayerStack:
    """Ordered layers between an incident and an exit half-space.

    Propagation order is layers[0] first. f_design pins the dielectric loss
    conductivity (see DielectricSpec.conductivity).
    """

    layers: tuple[Layer, ...] = ()
    incident: DielectricSpec = AIR
    exit: Terminal = AIR
    f_design: float = DEFAULT_DESIGN_FREQUENCY

    def __post_init__(self):
        if isinstance(self.incident, PecSheet):
            raise StackError("incident half-space cannot be PEC")
        object.__setattr__(self, "layers", tuple(self.layers))


def _kz_eta(material: DielectricSpec, f: float, kx: float, pol: str, f_design: float):
    """Normal wavevector component and transverse wave impedance in a medium."""
    omega = 2.0 * math.pi * f
    eps = complex(material.eps_complex(f, f_design))
    k2 = (omega / C0) ** 2 * eps
    kz = cmath.sqrt(k2 - kx * kx)
    # decay branch for e^{-j kz z}: Im(kz) <= 0; keep Re >= 0 for propagation
    if kz.imag > 0.0 or (kz.imag == 0.0 and kz.real < 0.0):
        kz = -kz
    if pol == "te":
        eta = omega * (ETA0 / C0) / kz  # omega mu0 / kz
    elif pol == "tm":
        eta = kz * (C0 * ETA0) / (omega * eps)  # kz / (omega eps0 eps)
    else:
        raise StackError(f"polarization must be 'te' or 'tm', got {pol!r}")
    return kz, eta


def _solve(stack: LayerStack, f: float, pol: str, angle_rad: float):
    """Return (gamma, t, eta_in, eta_out). t is None for PEC-terminated stacks."""
    if not (math.isfinite(f) and f > 0.0):
        raise StackError(f"frequency must be > 0, got {f}")
    if not (0.0 <= angle_rad < math.pi / 2.0):
        raise StackError("incidence angle must be in [0, 90) degrees")

    omega = 2.0 * math.pi * f
    n_in = cmath.sqrt(complex(stack.incident.eps_complex(f, stack.f_design)))
    kx = (omega / C0) * n_in.real * math.sin(angle_rad)

    kz_in, eta_in = _kz_eta(stack.incident, f, kx, pol, stack.f_design)
    if kz_in.real == 0.0:
        raise StackError("incident half-space carries no propagating wave")

    # cascade: (E, H) at the front = M @ (E, H) at the back
    m11, m12, m21, m22 = 1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j
    shorted = False
    for layer in stack.layers:
        if isinstance(layer, PecSheet):
            shorted = True
            break
        if isinstance(layer, Slab):
            kz, eta = _kz_eta(layer.material, f, kx, pol, stack.f_design)
            phase = kz * layer.thickness
            c, s = cmath.cos(phase), cmath.sin(phase)
            a11, a12, a21, a22 = c, 1j * eta * s, 1j * s / eta, c
        else:
            y = complex(layer.surface_admittance(f))
            a11, a12, a21, a22 = 1.0 + 0.0j, 0.0j, y, 1.0 + 0.0j
        m11, m12, m21, m22 = (
            m11 * a11 + m12 * a21,
            m11 * a12 + m12 * a22,
            m21 * a11 + m22 * a21,
            m21 * a12 + m22 * a22,
        )

    if shorted or isinstance(stack.exit, PecSheet):
        # E = 0 at the terminal plane: Z_in = m12 / m22
        denom = m22
        if denom == 0:
            raise StackError("singular stack (m22 = 0 at PEC termination)")
        z_in = m12 / denom
        gamma = (z_in - eta_in) / (z_in + eta_in)
        return gamma, None, eta_in, None

    kz_out, eta_out = _kz_eta(stack.exit, f, kx, pol, stack.f_design)
    if kz_out.real == 0.0 and kz_out.imag != 0.0 and stack.exit.tan_delta == 0.0:
        raise StackError(
            "exit half-space is evanescent at this frequency/angle; "
            "transmission normalization undefined"
        )
    b1 = m11 + m12 / eta_out
    b2 = m21 + m22 / eta_out
    denom = b1 + eta_in * b2
    gamma = (b1 - eta_in * b2) / denom
    t = 2.0 / denom
    return gamma, t, eta_in, eta_out


def tmm_reflection(
    stack: LayerStack, f: float, polarization: str = "te", incidence_angle_deg: float = 0.0
) -> complex:
    """Complex reflection coefficient of the stack at frequency f [Hz]."""
    gamma, _, _, _ = _solve(stack, f, polarization, math.radians(incidence_angle_deg))
    return gamma


def tmm_reflection_transmission(
    stack: LayerStack, f: float, polarization: str = "te", incidence_angle_deg: float = 0.0
):
    """(gamma, t) field coefficients; t is None for PEC-terminated stacks."""
    gamma, t, _, _ = _solve(stack, f, polarization, math.radians(incidence_angle_deg))
    return gamma, t


def power_balance(
    stack: LayerStack, f: float, polarization: str = "te", incidence_angle_deg: float = 0.0
) -> float:
    """|gamma|^2 + |t|^2 Re(eta_in)/Re(eta_out); equals 1 for lossless stacks."""
    gamma, t, eta_in, eta_out = _solve(stack, f, polarization, math.radians(incidence_angle_deg))
    r = abs(gamma) ** 2
    if t is None:
        return r
    return r + abs(t) ** 2 * eta_in.real / eta_out.real


def reflection_spectrum(
    stack: LayerStack, f_axis, polarization: str = "te", incidence_angle_deg: float = 0.0
):
    """Gamma(f) over an axis, as a Spectrum."""
    from .spectrum import Spectrum

    f_axis = np.asarray(f_axis, dtype=float)
    values = np.array(
        [tmm_reflection(stack, float(f), polarization, incidence_angle_deg) for f in f_axis]
    )
    return Spectrum(f_axis, values)
