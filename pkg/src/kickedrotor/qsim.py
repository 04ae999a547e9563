"""Quantum Floquet evolution of the kicked rotor on a truncated momentum ladder.

The state of an atom with total momentum ``(n + q)`` two-photon recoils is a
complex amplitude ladder ``c_n`` over integer momentum classes ``n`` at fixed
quasimomentum ``q`` (momentum modulo one two-photon recoil); quasimomentum is
conserved by both the kick and the free flight, so each ladder evolves
independently.  One Floquet cycle is

* kick:  ``c'_n = sum_m (-i)^m J_m(phi_d) c_{n-m}``   (Jacobi-Anger expansion
  of ``exp(-i phi_d cos(phi_hat))``), then
* free flight: ``c_n *= exp(-i kbar (n+q)^2 / 2)``.

Energies use the calibration ``E = 2 sum (n+q)^2 |c_n|^2`` fixed so the
single-kick energy growth of a zero-momentum atom equals ``phi_d**2``
(``sum m^2 J_m(x)^2 = x^2/2``).  Energies are recorded after each kick; the
free flight is diagonal in momentum and cannot change them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._streams import unit_uniform_batch
from .analytic import CALIBRATION_C
from .bessel import bessel_row
from .errors import DomainError, TruncationError
from .result import EnergySeries
from .units import ScaledParams

#: Post-kick occupancy allowed in the two outermost ladder sites on each side
#: before the truncation is declared inadequate.
BOUNDARY_TOLERANCE = 1e-10


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

@dataclass
class LadderState:
    """Momentum-ladder wavefunction at fixed quasimomentum.

    ``amps[i]`` is the amplitude of momentum class ``n = i - n_max``, i.e. of
    total momentum ``(n + q)`` two-photon recoils.  The public constructor
    :func:`plane_wave` enforces ``q`` in [0, 1); the evolution itself depends
    only on the total momenta ``n + q`` and accepts any finite ``q``.
    """

    q: float
    amps: np.ndarray
    n_max: int

    def __post_init__(self) -> None:
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        self.n_max = int(self.n_max)
        if self.n_max < 1:
            raise DomainError("n_max", "must be a positive integer")
        if self.amps.shape != (2 * self.n_max + 1,):
            raise DomainError(
                "amps",
                f"expected shape ({2 * self.n_max + 1},) for n_max={self.n_max}, "
                f"got {self.amps.shape}",
            )
        if not math.isfinite(self.q):
            raise DomainError("q", "must be finite")

    @property
    def momenta(self) -> np.ndarray:
        """Total momentum (n + q) of every ladder site, in two-photon recoils."""
        return np.arange(-self.n_max, self.n_max + 1, dtype=np.float64) + self.q

    def norm(self) -> float:
        return float(np.einsum("i,i->", self.amps.real, self.amps.real)
                     + np.einsum("i,i->", self.amps.imag, self.amps.imag))


def plane_wave(n0: int, q: float, n_max: int) -> LadderState:
    """Momentum eigenstate: unit amplitude in class ``n0`` at quasimomentum ``q``."""
    if int(n0) != n0:
        raise DomainError("n0", "must be an integer momentum class")
    n0 = int(n0)
    n_max = int(n_max)
    if n_max < 1:
        raise DomainError("n_max", "must be a positive integer")
    if abs(n0) >= n_max:
        raise DomainError("n0", f"|n0| must be < n_max (got n0={n0}, n_max={n_max})")
    if not (0.0 <= q < 1.0):
        raise DomainError("q", f"quasimomentum must lie in [0, 1), got {q}")
    amps = np.zeros(2 * n_max + 1, dtype=np.complex128)
    amps[n0 + n_max] = 1.0
    return LadderState(q=float(q), amps=amps, n_max=n_max)


def default_n_max(kicks: int, phi_d: float, extra_sites: int = 0) -> int:
    """Ladder truncation sized for ``kicks`` kicks of strength ``phi_d``.

    Each kick spreads amplitude by about ``phi_d`` ladder steps with a
    super-exponential Bessel tail; the margin ``8 * max(1, phi_d^(1/3))``
    per kick keeps the boundary occupancy far below the runtime guard.
    ``extra_sites`` accommodates an off-center initial momentum class.
    """
    if kicks < 1:
        raise DomainError("kicks", "must be at least 1")
    if phi_d < 0:
        raise DomainError("phi_d", "must be non-negative")
    margin = 8.0 * max(1.0, float(phi_d) ** (1.0 / 3.0))
    return int(math.ceil(kicks * (float(phi_d) + margin) + abs(int(extra_sites)))) + 16


def kick_weights(phi_d: float) -> np.ndarray:
    """Jacobi-Anger coefficients ``(-i)^m J_m(phi_d)`` for m = -W..W.

    The band half-width W is chosen so the discarded Bessel tail is far below
    1e-14 in norm; the row is symmetric because ``(-i)^(-m) J_(-m) = (-i)^m J_m``.
    """
    if phi_d < 0:
        raise DomainError("phi_d", "must be non-negative")
    x = float(phi_d)
    W = int(math.ceil(x + 12.0 * max(1.0, x ** (1.0 / 3.0)))) + 8
    jm = bessel_row(x, W)
    phase = (-1j) ** np.arange(W + 1)  # cycles 1, -i, -1, i
    half = phase * jm
    weights = np.empty(2 * W + 1, dtype=np.complex128)
    weights[W:] = half
    weights[:W] = half[1:][::-1]
    return weights


# ---------------------------------------------------------------------------
# batched evolution core (single trajectories are the S=1 case)
# ---------------------------------------------------------------------------

def _boundary_occupancy(amps: np.ndarray) -> float:
    """Worst-case probability in the two outermost sites on either edge."""
    edge = (np.abs(amps[:, 0]) ** 2 + np.abs(amps[:, 1]) ** 2
            + np.abs(amps[:, -1]) ** 2 + np.abs(amps[:, -2]) ** 2)
    return float(edge.max())


def _evolve_batch(amps: np.ndarray, q: np.ndarray, kbar: float, phi_d: float,
                  kicks: int, obs2: np.ndarray = None) -> np.ndarray:
    """Advance a batch of ladders through ``kicks`` Floquet cycles.

    ``amps``: (S, 2*n_max+1) complex amplitudes, consumed destructively.
    ``q``: (S,) quasimomenta.  Returns energies of shape (S, kicks+1) with
    column 0 the initial energy and column k the energy after kick k.  The
    energy observable is ``CALIBRATION_C * sum(obs2 * |amps|^2)`` per row;
    ``obs2`` defaults to the squared total momenta ``(n + q)^2``.
    """
    S, M = amps.shape
    n_max = (M - 1) // 2
    n_grid = np.arange(-n_max, n_max + 1, dtype=np.float64)
    p = n_grid[np.newaxis, :] + q[:, np.newaxis]          # (S, M) total momenta
    p2 = p * p
    free_phase = np.exp(-0.5j * float(kbar) * p2)
    weights = kick_weights(phi_d)
    if obs2 is None:
        obs2 = p2

    energies = np.empty((S, kicks + 1), dtype=np.float64)
    prob = amps.real ** 2 + amps.imag ** 2
    energies[:, 0] = CALIBRATION_C * np.einsum("sm,sm->s", obs2, prob)
    for k in range(1, kicks + 1):
        amps = _kernels.kick_convolve(amps, weights)
        occ = _boundary_occupancy(amps)
        if occ > BOUNDARY_TOLERANCE:
            raise TruncationError(
                n_max=n_max,
                boundary_occupancy=occ,
                suggested_n_max=int(math.ceil(1.5 * n_max)) + 32,
            )
        prob = amps.real ** 2 + amps.imag ** 2
        energies[:, k] = CALIBRATION_C * np.einsum("sm,sm->s", obs2, prob)
        if k < kicks:
            amps *= free_phase
    return energies


# ---------------------------------------------------------------------------
# single-state operations
# ---------------------------------------------------------------------------

def apply_kick(s: LadderState, phi_d: float) -> LadderState:
    """One kick unitary ``exp(-i phi_d cos(phi_hat))``; returns a new state."""
    out = _kernels.kick_convolve(s.amps[np.newaxis, :], kick_weights(phi_d))
    occ = _boundary_occupancy(out)
    if occ > BOUNDARY_TOLERANCE:
        raise TruncationError(
            n_max=s.n_max,
            boundary_occupancy=occ,
            suggested_n_max=int(math.ceil(1.5 * s.n_max)) + 32,
        )
    return LadderState(q=s.q, amps=out[0], n_max=s.n_max)


def apply_free(s: LadderState, kbar: float) -> LadderState:
    """One unit of free flight: ``c_n *= exp(-i kbar (n+q)^2 / 2)``."""
    if kbar <= 0:
        raise DomainError("kbar", "must be positive")
    p = s.momenta
    return LadderState(q=s.q, amps=s.amps * np.exp(-0.5j * float(kbar) * p * p),
                       n_max=s.n_max)


def energy_of_state(s: LadderState) -> float:
    """Calibrated kinetic energy ``2 * sum (n+q)^2 |c_n|^2``."""
    p = s.momenta
    prob = s.amps.real ** 2 + s.amps.imag ** 2
    return CALIBRATION_C * float(np.einsum("i,i->", p * p, prob))


def run_trajectory(initial: LadderState, params: ScaledParams) -> EnergySeries:
    """Evolve one ladder through ``params.kicks`` Floquet cycles.

    Each cycle applies the kick and then the free flight; the energy is
    recorded immediately after each kick (the free flight is diagonal in
    momentum, so the recording moment changes nothing observable).
    """
    amps = np.array(initial.amps, dtype=np.complex128, copy=True)[np.newaxis, :]
    q = np.array([initial.q], dtype=np.float64)
    energies = _evolve_batch(amps, q, params.kbar, params.phi_d, params.kicks)
    return EnergySeries(energies=energies[0], params=params, method="quantum")


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------

_Q_SAMPLINGS = ("midpoint_quadrature", "random")
_INITIAL_DISTS = ("cold", "discrete_gaussian", "flat_wide")


@dataclass(frozen=True)
class EnsembleSpec:
    """Incoherent initial ensemble: which plane waves to average over.

    * ``cold`` — momentum class n0 = 0, quasimomenta sampled across [0, 1).
    * ``discrete_gaussian`` — momentum classes weighted by a Gaussian of rms
      ``sigma_s`` two-photon recoils, crossed with the quasimomentum samples
      (a thermal cloud of plane waves).
    * ``flat_wide`` — total momenta sampled uniformly across one full drift
      period ``2*pi/kbar`` of the free evolution (the stationary-phase
      ensemble; kick-to-kick angle correlations are exactly those of the
      corresponding classical map with kick strength ``kappa_q``).

    ``n_q`` quasimomentum samples are taken either at midpoints
    ``q_i = (i + 1/2)/n_q`` (deterministic quadrature, the default) or
    uniformly at random, seeded so sample i is a pure function of
    ``(seed, i)`` independent of scheduling.
    """

    n_q: int = 32
    q_sampling: str = "midpoint_quadrature"
    initial_dist: str = "cold"
    sigma_s: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if int(self.n_q) != self.n_q or self.n_q < 1:
            raise DomainError("n_q", "must be an integer >= 1")
        object.__setattr__(self, "n_q", int(self.n_q))
        if self.q_sampling not in _Q_SAMPLINGS:
            raise DomainError(
                "q_sampling", f"must be one of {_Q_SAMPLINGS}, got {self.q_sampling!r}")
        if self.initial_dist not in _INITIAL_DISTS:
            raise DomainError(
                "initial_dist",
                f"must be one of {_INITIAL_DISTS}, got {self.initial_dist!r}")
        if self.sigma_s < 0:
            raise DomainError("sigma_s", "must be non-negative")
        if self.initial_dist == "discrete_gaussian" and self.sigma_s == 0:
            raise DomainError("sigma_s", "discrete_gaussian needs sigma_s > 0")
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)


def momentum_samples(spec: EnsembleSpec, kbar: float):
    """Expand an EnsembleSpec into concrete plane-wave samples.

    Returns ``(n0, q, w)`` arrays: integer momentum classes, quasimomenta in
    [0, 1), and non-negative weights summing to 1.
    """
    if spec.q_sampling == "midpoint_quadrature":
        base = (np.arange(spec.n_q, dtype=np.float64) + 0.5) / spec.n_q
    else:
        base = unit_uniform_batch(spec.seed, draw=0, start=0, count=spec.n_q)

    if spec.initial_dist == "cold":
        n0 = np.zeros(spec.n_q, dtype=np.int64)
        q = base
        w = np.full(spec.n_q, 1.0 / spec.n_q)
        return n0, q, w

    if spec.initial_dist == "discrete_gaussian":
        R = max(1, int(math.ceil(4.0 * spec.sigma_s)))
        sites = np.arange(-R, R + 1, dtype=np.int64)
        site_w = np.exp(-0.5 * (sites / spec.sigma_s) ** 2)
        site_w /= site_w.sum()
        n0 = np.repeat(sites, spec.n_q)
        q = np.tile(base, sites.size)
        w = np.repeat(site_w / spec.n_q, spec.n_q)
        return n0, q, w

    # flat_wide: total momenta uniform over one drift period 2*pi/kbar,
    # centred on zero; each sample splits into (floor, fractional part).
    if kbar <= 0:
        raise DomainError("kbar", "must be positive")
    period = 2.0 * math.pi / float(kbar)
    u = (base - 0.5) * period
    n0 = np.floor(u).astype(np.int64)
    q = u - n0
    w = np.full(spec.n_q, 1.0 / spec.n_q)
    return n0, q, w


def run_ensemble(spec: EnsembleSpec, params: ScaledParams, spread=None,
                 n_max: int = 0, energy_reference: str = "absolute") -> EnergySeries:
    """Incoherently averaged Floquet evolution of an initial ensemble.

    Probabilities (not amplitudes) are averaged over the plane-wave samples
    of ``spec`` and, when ``spread`` is given, over its kick-strength
    quadrature nodes.  All reductions are fixed-order sums, so results are
    deterministic for a fixed seed regardless of parallelism.  ``n_max=0``
    sizes the ladder automatically via :func:`default_n_max`.

    ``energy_reference`` selects the observable:

    * ``"absolute"`` (default) — kinetic energy ``2 <(n+q)^2>`` of the cloud.
    * ``"initial_site"`` — diffusion energy ``2 <(n - n0)^2>``, the second
      moment of each atom's momentum *displacement*.  For wide stationary
      ensembles this is the quantity with exact kick-to-kick correlation
      identities; for the cold ensemble both references agree on the growth
      up to quasimomentum cross terms.
    """
    if energy_reference not in ("absolute", "initial_site"):
        raise DomainError("energy_reference",
                          "must be 'absolute' or 'initial_site'")
    n0, q, w = momentum_samples(spec, params.kbar)

    if spread is not None and not spread.degenerate:
        nodes, node_w = spread.nodes_weights(params.phi_d)
    else:
        nodes, node_w = np.array([params.phi_d]), np.array([1.0])

    if n_max == 0:
        n_max = default_n_max(params.kicks, float(np.max(nodes)),
                              extra_sites=int(np.max(np.abs(n0))))
    n_max = int(n_max)
    if int(np.max(np.abs(n0))) >= n_max:
        raise DomainError("n_max", "too small for the ensemble's momentum classes")

    M = 2 * n_max + 1
    n_grid = np.arange(-n_max, n_max + 1, dtype=np.float64)
    if energy_reference == "initial_site":
        disp = n_grid[np.newaxis, :] - n0[:, np.newaxis].astype(np.float64)
        obs2 = disp * disp
    else:
        obs2 = None

    total = np.zeros(params.kicks + 1, dtype=np.float64)
    for phi_node, wn in zip(nodes, node_w):
        amps = np.zeros((n0.size, M), dtype=np.complex128)
        amps[np.arange(n0.size), n0 + n_max] = 1.0
        energies = _evolve_batch(amps, q, params.kbar, float(phi_node),
                                 params.kicks, obs2=obs2)
        total += float(wn) * np.einsum("s,sk->k", w, energies)
    return EnergySeries(energies=total, params=params, ensemble=spec,
                        spread=spread, method="quantum")
