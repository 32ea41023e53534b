"""Frequency-indexed complex spectra (reflection coefficients, S11)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Relative tolerance on frequency-axis uniformity.
_AXIS_RTOL = 1e-9


class SpectrumError(ValueError):
    """Malformed spectrum (axis not uniform/increasing, length mismatch)."""


@dataclass
class Spectrum:
    """Complex values on a uniform, strictly increasing frequency axis [Hz]."""

    f: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.f = np.asarray(self.f, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.f.ndim != 1 or self.f.size < 2:
            raise SpectrumError("frequency axis must be 1-D with at least 2 points")
        if self.values.shape != self.f.shape:
            raise SpectrumError("values and frequency axis length mismatch")
        df = np.diff(self.f)
        if np.any(df <= 0.0):
            raise SpectrumError("frequency axis must be strictly increasing")
        if np.max(np.abs(df - df[0])) > _AXIS_RTOL * abs(df[0]):
            raise SpectrumError("frequency axis must be uniformly spaced")

    @property
    def df(self) -> float:
        return float(self.f[1] - self.f[0])

    def mag(self) -> np.ndarray:
        return np.abs(self.values)

    def mag_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.values))

    def phase_rad(self) -> np.ndarray:
        """Phase wrapped to (-pi, pi]."""
        p = np.angle(self.values)
        return np.where(p == -np.pi, np.pi, p)

    def phase_deg(self) -> np.ndarray:
        return np.degrees(self.phase_rad())

    def band(self, f_lo: float, f_hi: float) -> "Spectrum":
        mask = (self.f >= f_lo) & (self.f <= f_hi)
        if np.count_nonzero(mask) < 2:
            raise SpectrumError(f"band [{f_lo:g}, {f_hi:g}] Hz covers < 2 samples")
        return Spectrum(self.f[mask], self.values[mask])

    def write_csv(self, path, header_lines: tuple[str, ...] = ()) -> None:
        """Write f_Hz, re_gamma, im_gamma, mag_dB, phase_deg rows.

        header_lines are emitted first as '#'-prefixed comments (config echo).
        """
        mag_db = self.mag_db()
        phase = self.phase_deg()
        with open(path, "w", encoding="utf-8") as fh:
            for line in header_lines:
                fh.write(f"# {line}\n")
            fh.write("f_Hz,re_gamma,im_gamma,mag_dB,phase_deg\n")
            for k in range(self.f.size):
                v = self.values[k]
                fh.write(
                    f"{self.f[k]:.10e},{v.real:.17e},{v.imag:.17e},"
                    f"{mag_db[k]:.10e},{phase[k]:.10e}\n"
                )

    @classmethod
    def read_csv(cls, path) -> "Spectrum":
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#") or line.startswith("f_Hz"):
                    continue
                parts = line.split(",")
                rows.append((float(parts[0]), float(parts[1]), float(parts[2])))
        if len(rows) < 2:
            raise SpectrumError(f"{path}: fewer than 2 data rows")
        arr = np.asarray(rows)
        return cls(arr[:, 0], arr[:, 1] + 1j * arr[:, 2])


def uniform_band(f_lo: float, f_hi: float, df: float) -> np.ndarray:
    """Inclusive uniform frequency grid [Hz]."""
    if f_lo <= 0 or f_hi <= f_lo or df <= 0:
        raise SpectrumError(f"bad band spec ({f_lo:g}, {f_hi:g}, {df:g})")
    n = int(round((f_hi - f_lo) / df))
    return f_lo + df * np.arange(n + 1)
