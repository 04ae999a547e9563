"""Conversions between laboratory parameters and the scaled, dimensionless ones.

The scaled Hamiltonian uses an effective Planck constant kbar = 8*omega_r*T
and an experimental kick strength phi_d = Omega_R*tau_p/2; their product is
the classical kick strength kappa = 4*Omega_R*omega_r*tau_p*T.  All angular
frequencies are rad/s and all times are seconds — no cycles/s fields exist
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory inputs for one kicked-rotor configuration.

    omega_r: recoil frequency (rad/s)
    Omega_R: effective Rabi frequency (rad/s)
    tau_p:   pulse length (s), must be shorter than the kick period
    T:       kick period (s)
    Omega, Delta: optional bare Rabi frequency and detuning (rad/s); when both
        are given they must be consistent with Omega_R = Omega**2/(4*Delta).
    """

    omega_r: float
    Omega_R: float
    tau_p: float
    T: float
    Omega: Optional[float] = None
    Delta: Optional[float] = None

    def __post_init__(self):
        for name in ("omega_r", "Omega_R", "tau_p", "T"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, f"must be strictly positive, got {value}")
        if not self.tau_p < self.T:
            raise DomainError("tau_p", "delta-kick regime requires tau_p < T")
        if self.Omega is not None and self.Delta is not None:
            expected = rabi_effective(self.Omega, self.Delta)
            if abs(expected - self.Omega_R) > 1e-12 * abs(self.Omega_R):
                raise DomainError(
                    "Omega_R",
                    f"inconsistent with Omega**2/(4*Delta) = {expected!r}",
                )


@dataclass(frozen=True)
class ScaledParams:
    """Dimensionless parameters of the scaled Floquet dynamics."""

    kbar: float
    phi_d: float
    kicks: int = 1

    def __post_init__(self):
        if not self.kbar > 0:
            raise DomainError("kbar", f"must be strictly positive, got {self.kbar}")
        if self.phi_d < 0:
            raise DomainError("phi_d", f"must be non-negative, got {self.phi_d}")
        if self.kicks < 1:
            raise DomainError("kicks", f"must be >= 1, got {self.kicks}")

    @property
    def kappa(self) -> float:
        """Classical kick strength kappa = kbar * phi_d (read-only, derived)."""
        return self.kbar * self.phi_d


def rabi_effective(Omega: float, Delta: float) -> float:
    """Effective Rabi frequency Omega**2 / (4*Delta)."""
    if Delta == 0:
        raise DomainError("Delta", "must be non-zero")
    return Omega * Omega / (4.0 * Delta)


def scaled_from_physical(p: PhysicalParams, kicks: int = 1) -> ScaledParams:
    """Map laboratory parameters to (kbar, phi_d).

    kbar = 8*omega_r*T and phi_d = Omega_R*tau_p/2, so the derived
    kappa = kbar*phi_d equals 4*Omega_R*omega_r*tau_p*T identically.
    """
    return ScaledParams(
        kbar=8.0 * p.omega_r * p.T,
        phi_d=p.Omega_R * p.tau_p / 2.0,
        kicks=kicks,
    )


def period_for_kbar(omega_r: float, kbar: float) -> float:
    """Kick period T that realizes a requested kbar: T = kbar/(8*omega_r)."""
    if not omega_r > 0:
        raise DomainError("omega_r", f"must be strictly positive, got {omega_r}")
    if not kbar > 0:
        raise DomainError("kbar", f"must be strictly positive, got {kbar}")
    return kbar / (8.0 * omega_r)
