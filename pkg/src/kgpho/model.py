"""Physical parameters and the algebraic core of the planar problem.

Everything is expressed in natural units hbar = c = M = e = 1: energies in
units of the rest energy Mc^2, lengths in Compton wavelengths hbar/(Mc).
The magnetic field enters only as the dimensionless cyclotron energy
omega_c = eB/(Mc), stored in ``PhysicalSystem.b_field``; the solenoid flux
enters only through xi = Phi_AB / Phi_0 with Phi_0 = hc/e, which shifts the
magnetic quantum number m to the effective value m' = m + xi.

With lambda_1 = E + 1 and lambda_2 = E - 1, each energy defines one radial
oscillator problem through the triple (nu^2, beta^2, gamma^2):

    nu^2    = lambda (lambda' + 2 v0) - omega_c m'
    beta^2  = m'^2 + rho0^2 v0 lambda
    gamma^2 = (omega_c / 2)^2 + v0 lambda / rho0^2

where (lambda, lambda') is (lambda_1, lambda_2) for the positive branch
(scalar coupling equal to +vector) and (lambda_2, lambda_1) for the negative
branch (scalar coupling equal to -vector).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "POSITIVE",
    "NEGATIVE",
    "DegenerateProblemError",
    "PhysicalSystem",
    "QuantumState",
    "SpectralParams",
    "NuConstants",
    "effective_quantum_number",
    "make_state",
    "spectral_params",
    "nu_constants",
]

POSITIVE = "positive"
NEGATIVE = "negative"
_BRANCHES = (POSITIVE, NEGATIVE)


class DegenerateProblemError(ValueError):
    """The parameters admit no discrete oscillator spectrum."""


@dataclass(frozen=True)
class PhysicalSystem:
    """Physical parameters in natural units (the single source of truth).

    v0       chemical potential V0 of the well, in units of Mc^2 (>= 0)
    rho0     effective radius r0 of the well, in Compton wavelengths (> 0)
    b_field  dimensionless cyclotron energy omega_c = eB/(Mc) (>= 0)
    flux_xi  solenoid flux in flux quanta, xi = Phi_AB / Phi_0
    mass     rest energy in Mc^2 units; fixed to 1 by the unit choice
    charge_e particle charge; fixed to +1 by convention (documentation only)
    """

    v0: float = 1.0
    rho0: float = 1.0
    b_field: float = 0.0
    flux_xi: float = 0.0
    mass: float = 1.0
    charge_e: float = 1.0

    def __post_init__(self):
        for name in ("v0", "rho0", "b_field", "flux_xi", "mass", "charge_e"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
        if self.rho0 <= 0.0:
            raise ValueError(f"rho0 must be > 0, got {self.rho0}")
        if self.v0 < 0.0:
            raise ValueError(f"v0 must be >= 0, got {self.v0}")
        if self.b_field < 0.0:
            raise ValueError(f"b_field must be >= 0, got {self.b_field}")
        if self.mass != 1.0 or self.charge_e != 1.0:
            raise ValueError("natural units fix mass = charge_e = 1")

    @property
    def omega_c(self):
        """Cyclotron energy; identical to b_field in natural units."""
        return self.b_field


@dataclass(frozen=True)
class QuantumState:
    """Radial quantum number n, magnetic quantum number m, and m' = m + xi."""

    n: int
    m: int
    m_eff: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise ValueError(f"n must be an integer >= 0, got {self.n!r}")
        if not isinstance(self.m, (int, np.integer)):
            raise ValueError(f"m must be an integer, got {self.m!r}")
        if not math.isfinite(self.m_eff):
            raise ValueError("m_eff must be finite")


def effective_quantum_number(m, flux_xi, strict=False):
    """Flux-shifted magnetic quantum number m' = m + xi.

    In strict (paper-faithful) mode a warning is emitted when xi is not an
    integer or when m' < 1; the permissive algebra only ever uses m'^2 and a
    term linear in m', so any real m' is accepted.
    """
    if not math.isfinite(m) or not math.isfinite(flux_xi):
        raise ValueError("m and flux_xi must be finite")
    m_eff = m + flux_xi
    if strict:
        if flux_xi != round(flux_xi):
            warnings.warn(
                f"strict mode expects integer flux quanta, got xi = {flux_xi}",
                UserWarning,
                stacklevel=2,
            )
        if m_eff != round(m_eff) or m_eff < 1:
            warnings.warn(
                f"strict mode expects m' = 1, 2, ..., got m' = {m_eff}",
                UserWarning,
                stacklevel=2,
            )
    return m_eff


def make_state(n, m, flux_xi=0.0, strict=False):
    """Build a QuantumState with m_eff derived from the flux."""
    return QuantumState(
        n=int(n), m=int(m), m_eff=effective_quantum_number(int(m), flux_xi, strict=strict)
    )


@dataclass(frozen=True)
class SpectralParams:
    """The triple (nu^2, beta^2, gamma^2) defining one radial problem."""

    nu2: float
    beta2: float
    gamma2: float
    branch: str

    @property
    def beta(self):
        return math.sqrt(self.beta2)

    @property
    def gamma(self):
        return math.sqrt(self.gamma2)

    @property
    def bound_state(self):
        """False flags a degenerate point with no bound-state problem."""
        return self.beta2 > 0.0 and self.gamma2 > 0.0


def spectral_params(sys, energy, state, branch=POSITIVE):
    """Map (system, energy, branch) to the radial oscillator triple.

    Returns a flagged (``bound_state == False``) result rather than raising
    when beta^2 or gamma^2 is non-positive at this energy.
    """
    if branch not in _BRANCHES:
        raise ValueError(f"branch must be one of {_BRANCHES}, got {branch!r}")
    energy = float(energy)
    if not math.isfinite(energy):
        raise ValueError("energy must be finite")
    lam1 = energy + 1.0
    lam2 = energy - 1.0
    if branch == POSITIVE:
        if lam1 <= 0.0:
            raise ValueError(f"positive branch requires E > -1 (Mc^2 units), got {energy}")
        lam, lam_other = lam1, lam2
    else:
        lam, lam_other = lam2, lam1
    mp = state.m_eff
    nu2 = lam * (lam_other + 2.0 * sys.v0) - sys.omega_c * mp
    beta2 = mp * mp + sys.rho0 ** 2 * sys.v0 * lam
    gamma2 = (0.5 * sys.omega_c) ** 2 + sys.v0 * lam / sys.rho0 ** 2
    return SpectralParams(nu2=nu2, beta2=beta2, gamma2=gamma2, branch=branch)


@dataclass(frozen=True)
class NuConstants:
    """Constants of the parametric reduction of the radial equation.

    For the problem at hand only the alpha_3 = 0 family is needed:
    xi1 = gamma^2/4, xi2 = nu^2/4, xi3 = beta^2/4.
    """

    xi1: float
    xi2: float
    xi3: float
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    alpha5: float
    alpha6: float
    alpha7: float
    alpha8: float
    alpha9: float
    alpha10: float
    alpha11: float
    alpha12: float
    alpha13: float


def nu_constants(xi1, xi2, xi3):
    """Fill the thirteen reduction constants from (xi1, xi2, xi3)."""
    xi1, xi2, xi3 = float(xi1), float(xi2), float(xi3)
    for name, val in (("xi1", xi1), ("xi2", xi2), ("xi3", xi3)):
        if not math.isfinite(val):
            raise ValueError(f"{name} must be finite")
    if xi1 < 0.0 or xi3 < 0.0:
        raise ValueError("xi1 and xi3 must be >= 0")
    beta = 2.0 * math.sqrt(xi3)
    gamma = 2.0 * math.sqrt(xi1)
    return NuConstants(
        xi1=xi1,
        xi2=xi2,
        xi3=xi3,
        alpha1=1.0,
        alpha2=0.0,
        alpha3=0.0,
        alpha4=0.0,
        alpha5=0.0,
        alpha6=xi1,
        alpha7=-xi2,
        alpha8=xi3,
        alpha9=xi1,
        alpha10=beta + 1.0,
        alpha11=gamma,
        alpha12=0.5 * beta,
        alpha13=-0.5 * gamma,
    )
