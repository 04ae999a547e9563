"""Classical standard-map Monte Carlo: the small-effective-Planck-constant limit.

One map step is kick-then-drift,

    rho' = rho + kappa * sin(phi)
    phi' = (phi + rho') mod 2*pi,

mirroring the quantum module's operator ordering.  Momentum histories depend
only on ``(phi0, rho0, kappa)``; the effective Planck constant enters solely
through the unit calibration ``E = 2 <(rho / kbar_eff)^2>`` with
``kbar_eff = kappa / phi_d``, which puts classical energies in the same
dimensionless convention as the quantum ladder (first-kick growth from rest
equals ``phi_d**2`` because ``<sin^2> = 1/2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._streams import unit_uniform_batch
from .errors import DomainError
from .result import EnergySeries
from .units import ScaledParams

_TWO_PI = 2.0 * math.pi

_MOMENTUM_DISTS = ("zero", "uniform")


@dataclass(frozen=True)
class ClassicalParticle:
    """One phase-space point: angle in [0, 2*pi), dimensionless momentum."""

    phi: float
    rho: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.phi < _TWO_PI):
            raise DomainError("phi", f"angle must lie in [0, 2*pi), got {self.phi}")
        if not math.isfinite(self.rho):
            raise DomainError("rho", "must be finite")


@dataclass(frozen=True)
class ClassicalEnsemble:
    """Monte Carlo ensemble: uniform angles crossed with a momentum distribution.

    ``momentum_dist`` is ``"zero"`` (all particles at rest, the conventional
    cold cloud) or ``"uniform"`` (momenta uniform over one map period
    [0, 2*pi), the stationary ensemble whose kick-to-kick angle correlations
    are exactly the Bessel-function combinations of the five-kick energy
    formulas).  Samples are pure functions of ``(seed, particle index)``, so
    results never depend on scheduling.
    """

    particles: int
    momentum_dist: str = "zero"
    seed: int = 0

    def __post_init__(self) -> None:
        if int(self.particles) != self.particles or self.particles < 1:
            raise DomainError("particles", "must be an integer >= 1")
        object.__setattr__(self, "particles", int(self.particles))
        if self.momentum_dist not in _MOMENTUM_DISTS:
            raise DomainError(
                "momentum_dist",
                f"must be one of {_MOMENTUM_DISTS}, got {self.momentum_dist!r}")
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)

    def sample(self):
        """Initial (phi, rho) arrays; draw 0 feeds angles, draw 1 momenta."""
        phi = _TWO_PI * unit_uniform_batch(self.seed, draw=0, start=0,
                                           count=self.particles)
        if self.momentum_dist == "uniform":
            rho = _TWO_PI * unit_uniform_batch(self.seed, draw=1, start=0,
                                               count=self.particles)
        else:
            rho = np.zeros(self.particles)
        return phi, rho


def standard_map_step(p: ClassicalParticle, kappa: float) -> ClassicalParticle:
    """One kick plus one drift period of the standard map."""
    rho = p.rho + float(kappa) * math.sin(p.phi)
    phi = p.phi + rho
    phi -= _TWO_PI * math.floor(phi / _TWO_PI)
    return ClassicalParticle(phi=phi, rho=rho)


def run_classical(ensemble: ClassicalEnsemble, kappa: float, kicks: int,
                  phi_d_for_units: float,
                  energy_reference: str = "absolute") -> EnergySeries:
    """Mean per-kick energies of a classical ensemble, in calibrated units.

    The momentum histories depend only on ``(seed, kappa)``; ``phi_d_for_units``
    supplies the factorization ``kappa = kbar_eff * phi_d`` used to express
    energies in the quantum module's convention, so two runs at equal
    ``kappa`` produce bit-identical trajectories whatever the factorization.

    ``energy_reference`` is ``"absolute"`` (``2 <(rho/kbar_eff)^2>``) or
    ``"initial_momentum"`` (``2 <((rho - rho0)/kbar_eff)^2>``, the momentum
    displacement second moment — the observable with exact stationary
    correlation identities for the uniform-momentum ensemble).
    """
    if kicks < 1 or int(kicks) != kicks:
        raise DomainError("kicks", "must be an integer >= 1")
    kicks = int(kicks)
    if kappa < 0:
        raise DomainError("kappa", "must be non-negative")
    if phi_d_for_units <= 0:
        raise DomainError("phi_d_for_units", "must be positive")
    if energy_reference not in ("absolute", "initial_momentum"):
        raise DomainError("energy_reference",
                          "must be 'absolute' or 'initial_momentum'")

    phi0, rho0 = ensemble.sample()
    hist = _kernels.standard_map_trajectories(phi0, rho0, kappa, kicks)

    if kappa == 0.0:
        # Momentum never changes; the recoil-unit calibration kbar = kappa/phi_d
        # degenerates, so only ensembles whose energies are zero are expressible.
        if energy_reference == "initial_momentum" or ensemble.momentum_dist == "zero":
            energies = np.zeros(kicks + 1)
        else:
            raise DomainError(
                "kappa",
                "0 with nonzero initial momenta has no finite recoil-unit energy")
    else:
        kbar_eff = float(kappa) / float(phi_d_for_units)
        if energy_reference == "initial_momentum":
            dev = hist - hist[0]
        else:
            dev = hist
        scaled = dev / kbar_eff
        energies = 2.0 * np.einsum("kn,kn->k", scaled, scaled) / ensemble.particles

    if kappa > 0:
        params = ScaledParams(kbar=float(kappa) / float(phi_d_for_units),
                              phi_d=float(phi_d_for_units), kicks=kicks)
    else:
        params = None  # kbar = kappa/phi_d degenerates at kappa = 0
    return EnergySeries(energies=energies, params=params, ensemble=ensemble,
                        method="classical")
