"""Physical constants (SI, CODATA via scipy)."""

import scipy.constants as _sc

C0 = _sc.c                    # speed of light in vacuum [m/s], exact
EPS0 = _sc.epsilon_0          # vacuum permittivity [F/m]
MU0 = _sc.mu_0                # vacuum permeability [H/m]
ETA0 = _sc.physical_constants["characteristic impedance of vacuum"][0]  # [ohm]
QE = _sc.e                    # elementary charge [C], exact
HBAR = _sc.hbar               # reduced Planck constant [J s], exact
KB = _sc.k                    # Boltzmann constant [J/K], exact
