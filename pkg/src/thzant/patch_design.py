"""Closed-form inset-fed microstrip patch sizing.

Width from the half-wavelength formula W = c/(2 f_r) sqrt(2/(eps_r+1)),
length from the effective-permittivity / fringing-extension route, inset
depth from the cos^2 edge-resistance taper. These give starting dimensions;
the optimized values actually simulated live in `geometry`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import C0

#: Typical patch edge resistance used when none is configured [ohm].
DEFAULT_EDGE_RESISTANCE = 240.0
#: System / feed-line reference impedance [ohm].
DEFAULT_Z0 = 50.0


class DesignError(ValueError):
    """Design inputs outside the validity of the closed forms."""


@dataclass(frozen=True)
class DesignInputs:
    """Target resonance f_r [Hz], substrate eps_r, thickness h [m], feed Z0 [ohm]."""

    f_r: float
    eps_r: float
    h: float
    z0: float = DEFAULT_Z0

    def __post_init__(self):
        if not (math.isfinite(self.f_r) and self.f_r > 0.0):
            raise DesignError(f"f_r must be > 0, got {self.f_r}")
        if not (math.isfinite(self.eps_r) and self.eps_r >= 1.0):
            raise DesignError(f"eps_r must be >= 1, got {self.eps_r}")
        if not (math.isfinite(self.h) and self.h > 0.0):
            raise DesignError(f"h must be > 0, got {self.h}")
        if not (math.isfinite(self.z0) and self.z0 > 0.0):
            raise DesignError(f"z0 must be > 0, got {self.z0}")


def patch_width(f_r: float, eps_r: float) -> float:
    """Patch width W = c/(2 f_r) * sqrt(2/(eps_r + 1)) [m]."""
    if not (math.isfinite(f_r) and f_r > 0.0):
        raise DesignError(f"f_r must be > 0, got {f_r}")
    if not (math.isfinite(eps_r) and eps_r >= 1.0):
        raise DesignError(f"eps_r must be >= 1, got {eps_r}")
    return C0 / (2.0 * f_r) * math.sqrt(2.0 / (eps_r + 1.0))


def effective_permittivity(eps_r: float, h: float, w: float) -> float:
    """Hammerstad quasi-static eps_eff for a microstrip of width w on height h."""
    if w <= 0.0 or h <= 0.0:
        raise DesignError("w and h must be > 0")
    if eps_r < 1.0:
        raise DesignError(f"eps_r must be >= 1, got {eps_r}")
    return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 / math.sqrt(1.0 + 12.0 * h / w)


def length_extension(eps_eff: float, h: float, w: float) -> float:
    """Open-end fringing extension delta_L (Hammerstad) [m]."""
    ratio = w / h
    return 0.412 * h * ((eps_eff + 0.3) * (ratio + 0.264)) / ((eps_eff - 0.258) * (ratio + 0.8))


def patch_length(f_r: float, eps_eff: float, h: float, w: float) -> float:
    """Resonant length L = c/(2 f_r sqrt(eps_eff)) - 2 delta_L [m].

    Rejects the degenerate electrically-thick case delta_L >= half of the
    guided half-wavelength (the closed form no longer applies).
    """
    if f_r <= 0.0 or eps_eff < 1.0 or h <= 0.0 or w <= 0.0:
        raise DesignError("invalid patch_length inputs")
    half_wave = C0 / (2.0 * f_r * math.sqrt(eps_eff))
    dl = length_extension(eps_eff, h, w)
    if dl >= half_wave / 2.0:
        raise DesignError(
            f"fringing extension {dl:.3e} m >= half of the resonant length "
            f"{half_wave:.3e} m; substrate electrically too thick for the closed form"
        )
    return half_wave - 2.0 * dl


def inset_depth(l_p: float, r_edge: float, z0: float) -> float:
    """Inset distance y0 with R(y0) = r_edge cos^2(pi y0 / L) = z0 [m]."""
    if l_p <= 0.0:
        raise DesignError(f"l_p must be > 0, got {l_p}")
    if not (0.0 < z0 <= r_edge):
        raise DesignError(f"need 0 < z0 <= r_edge, got z0={z0}, r_edge={r_edge}")
    return l_p / math.pi * math.acos(math.sqrt(z0 / r_edge))


@dataclass(frozen=True)
class PatchDesign:
    """Result bundle of the closed-form design chain."""

    inputs: DesignInputs
    w_p: float
    eps_eff: float
    delta_l: float
    l_p: float
    inset: float
    r_edge: float


def design_patch(inputs: DesignInputs, r_edge: float = DEFAULT_EDGE_RESISTANCE) -> PatchDesign:
    """Run the full chain: width -> eps_eff -> length -> inset depth."""
    w = patch_width(inputs.f_r, inputs.eps_r)
    eps_eff = effective_permittivity(inputs.eps_r, inputs.h, w)
    l = patch_length(inputs.f_r, eps_eff, inputs.h, w)
    y0 = inset_depth(l, r_edge, inputs.z0)
    return PatchDesign(
        inputs=inputs,
        w_p=w,
        eps_eff=eps_eff,
        delta_l=length_extension(eps_eff, inputs.h, w),
        l_p=l,
        inset=y0,
        r_edge=r_edge,
    )
