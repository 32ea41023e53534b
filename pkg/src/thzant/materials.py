"""Material models: lossy dielectrics, conductor sheets, graphene sheet conductivity.

Sign convention used throughout the toolkit: e^{+j omega t} time dependence.
Passive materials therefore have Im(sigma) <= 0 roll-off of the Drude form
sigma(omega) = sigma_0 / (1 + j omega tau), and lossy permittivities carry a
negative imaginary part, eps = eps' - j eps''.

All functions here are pure; safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import EPS0, HBAR, KB, QE

#: Default design (center) frequency used to pin the single-pole dielectric
#: loss model, Hz.
DEFAULT_DESIGN_FREQUENCY = 800e9


class MaterialError(ValueError):
    """Invalid material parameters."""


@dataclass(frozen=True)
class DielectricSpec:
    """Lossy dielectric described by relative permittivity and loss tangent."""

    eps_r: float
    tan_delta: float = 0.0
    name: str = ""

    def __post_init__(self):
        if not np.isfinite(self.eps_r) or self.eps_r < 1.0:
            raise MaterialError(f"eps_r must be finite and >= 1, got {self.eps_r}")
        if not np.isfinite(self.tan_delta) or self.tan_delta < 0.0:
            raise MaterialError(f"tan_delta must be finite and >= 0, got {self.tan_delta}")

    def conductivity(self, f_design: float = DEFAULT_DESIGN_FREQUENCY) -> float:
        """Equivalent bulk conductivity sigma_d = omega_0 eps0 eps_r tan_delta [S/m].

        Frequency independent; exact at f_design, first-order elsewhere.
        """
        return 2.0 * np.pi * f_design * EPS0 * self.eps_r * self.tan_delta

    def eps_complex(self, f, f_design: float = DEFAULT_DESIGN_FREQUENCY):
        """Complex relative permittivity eps_r - j sigma_d/(omega eps0)."""
        f = np.asarray(f, dtype=float)
        omega = 2.0 * np.pi * f
        with np.errstate(divide="ignore"):
            loss = np.where(omega > 0.0, self.conductivity(f_design) / (omega * EPS0), 0.0)
        return self.eps_r - 1j * loss


AIR = DielectricSpec(1.0, 0.0, name="air")
ROGERS_RT6010 = DielectricSpec(10.2, 0.0023, name="RT6010")
ROGERS_RT5880 = DielectricSpec(2.2, 0.0009, name="RT5880")


@dataclass(frozen=True)
class GrapheneSpec:
    """Graphene sheet parameters for the intraband Drude conductivity.

    mu_c: chemical potential [eV], tau: relaxation time [s], temperature [K].
    The paper gives no values; defaults are engineering choices.
    """

    mu_c: float = 0.5
    tau: float = 1e-12
    temperature: float = 300.0

    def __post_init__(self):
        for name in ("mu_c", "tau", "temperature"):
            if not np.isfinite(getattr(self, name)):
                raise MaterialError(f"{name} must be finite")
        if self.tau <= 0.0:
            raise MaterialError(f"tau must be > 0, got {self.tau}")
        if self.temperature <= 0.0:
            raise MaterialError(f"temperature must be > 0, got {self.temperature}")

    @property
    def sigma_dc(self) -> float:
        """Zero-frequency sheet conductance [S per square]."""
        kt = KB * self.temperature
        # log(2 cosh x) written as x + log1p(exp(-2x)) to stay finite for x >> 1
        x = self.mu_c * QE / (2.0 * kt)
        log_2cosh = x + np.log1p(np.exp(-2.0 * x))
        return (QE**2 * kt * self.tau / (np.pi * HBAR**2)) * 2.0 * log_2cosh

    @property
    def drude_weight(self) -> float:
        """sigma_dc / tau: coefficient of the lossless-current limit [S/(sq s)]."""
        return self.sigma_dc / self.tau


@dataclass(frozen=True)
class ConductorSheetSpec:
    """Thin metal film treated as a conductive sheet (e.g. 5 um annealed copper)."""

    sigma_dc: float = 5.8e7
    thickness: float = 5e-6

    def __post_init__(self):
        if not np.isfinite(self.sigma_dc) or self.sigma_dc <= 0.0:
            raise MaterialError(f"sigma_dc must be finite and > 0, got {self.sigma_dc}")
        if not np.isfinite(self.thickness) or self.thickness <= 0.0:
            raise MaterialError(f"thickness must be finite and > 0, got {self.thickness}")

    @property
    def sheet_conductance(self) -> float:
        """Surface conductance sigma_dc * t [S per square]."""
        return self.sigma_dc * self.thickness

    @property
    def sheet_resistance(self) -> float:
        """Surface resistance 1/(sigma_dc * t) [ohm per square]."""
        return 1.0 / self.sheet_conductance


def graphene_sigma(spec: GrapheneSpec, f):
    """Intraband (Drude) graphene sheet conductivity at frequency f [Hz].

    sigma(omega) = sigma_dc / (1 + j omega tau),
    sigma_dc = (e^2 kB T tau / (pi hbar^2)) * 2 ln(2 cosh(mu_c / 2 kB T)).

    Accepts scalars or arrays. Negative f is allowed and satisfies
    sigma(-omega) = conj(sigma(omega)); non-finite input is rejected.
    Returns S per square.
    """
    f = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(f)):
        raise MaterialError("frequency must be finite")
    omega = 2.0 * np.pi * f
    sigma = spec.sigma_dc / (1.0 + 1j * omega * spec.tau)
    return sigma if sigma.ndim else complex(sigma)


@dataclass(frozen=True)
class DrudeAdeCoefficients:
    """Recursion J^{n+1/2} = alpha J^{n-1/2} + beta E^n for a Drude sheet current.

    Semi-implicit (trapezoidal) discretization of tau dJ/dt + J = sigma_dc E.
    J is surface current density [A/m] when E is the in-plane field [V/m].
    """

    alpha: float
    beta: float
    dt: float

    def discrete_sigma(self, f):
        """Exact steady-state response of the recursion at frequency f [Hz].

        J/E = beta / (e^{+j theta} - alpha e^{-j theta}), theta = omega dt / 2.
        Tends to the continuous Drude form as dt -> 0 (second order).
        """
        theta = np.pi * np.asarray(f, dtype=float) * self.dt
        return self.beta / (np.exp(1j * theta) - self.alpha * np.exp(-1j * theta))


def drude_ade_coefficients(spec: GrapheneSpec, dt: float) -> DrudeAdeCoefficients:
    """FDTD update coefficients for the graphene sheet current.

    Rejects dt >= tau: the dispersion pole would be under-resolved.
    In the tau -> infinity limit (at fixed drude weight) alpha -> 1 and
    beta -> drude_weight * dt, a lossless integrator.
    """
    if not np.isfinite(dt) or dt <= 0.0:
        raise MaterialError(f"dt must be finite and > 0, got {dt}")
    if dt >= spec.tau:
        raise MaterialError(
            f"dt = {dt:g} s does not resolve the relaxation time tau = {spec.tau:g} s"
        )
    denom = 2.0 * spec.tau + dt
    alpha = (2.0 * spec.tau - dt) / denom
    beta = 2.0 * spec.sigma_dc * dt / denom
    return DrudeAdeCoefficients(alpha=alpha, beta=beta, dt=dt)


def step_sheet_current(coeffs: DrudeAdeCoefficients, e_samples) -> np.ndarray:
    """Drive the discrete sheet-current recursion with a field sample train.

    e_samples[n] is E at t = n dt; the returned j[n] is the current at
    t = (n + 1/2) dt, starting from J = 0. Reference implementation of the
    update the FDTD kernels apply per tagged edge.
    """
    e_samples = np.asarray(e_samples, dtype=float)
    j = np.empty_like(e_samples)
    current = 0.0
    for n, e in enumerate(e_samples):
        current = coeffs.alpha * current + coeffs.beta * e
        j[n] = current
    return j
