"""Result containers shared by the analytic, quantum, and classical drivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, NamedTuple, Optional

import numpy as np


class Row(NamedTuple):
    """One energy sample: curve identity (kicks, method, phi_d) at one kbar."""

    kbar: float
    phi_d: float
    kicks: int
    energy: float
    method: str


@dataclass
class SweepResult:
    """Rows in canonical order plus the manifest that reproduces them.

    Canonical row order is kicks-major, then phi_d, then kbar ascending.
    The manifest is a flat mapping (the resolved config plus meta.* keys);
    re-running it through the harness reproduces every energy within the
    declared numerical contract.
    """

    rows: List[Row] = field(default_factory=list)
    manifest: dict = field(default_factory=dict)

    def extend(self, rows) -> None:
        self.rows.extend(Row(*r) for r in rows)

    def sort_canonical(self) -> None:
        self.rows.sort(key=lambda r: (r.kicks, r.method, r.phi_d, r.kbar))


@dataclass(frozen=True)
class EnergySeries:
    """Kinetic-energy history of one evolution run.

    ``energies[k]`` is the (ensemble-averaged) kinetic energy immediately
    *after* the k-th kick, in the calibrated dimensionless convention;
    ``energies[0]`` is the initial energy before any kick.  ``params`` is the
    ScaledParams the run used; ``ensemble`` and ``spread`` record the
    averaging recipe (None for a bare single-state trajectory).
    """

    energies: np.ndarray
    params: Any
    ensemble: Optional[Any] = None
    spread: Optional[Any] = None
    method: str = "quantum"

    def __post_init__(self) -> None:
        arr = np.asarray(self.energies, dtype=np.float64)
        object.__setattr__(self, "energies", arr)

    @property
    def kicks(self) -> int:
        return int(self.energies.shape[0]) - 1

    def growth(self) -> np.ndarray:
        """Energy gain over the initial energy, ``E(k) - E(0)``."""
        return self.energies - self.energies[0]
