"""Single-particle energies on AB cylinders and the T=0 Fermi sea.

All energies are handled as the dimensionless product R*E:

    infinite:  R*E = sqrt(mu^2 + (kR)^2 + (lambda+beta)^2)
    finite:    R*E = sqrt(mu^2 + nu^2 n^2 + (lambda+beta)^2)

Divide by DimensionlessParams.radius_natural to recover a physical energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .params import DimensionlessParams

__all__ = [
    "ModeSpec",
    "FermiSea",
    "energy_infinite",
    "energy_finite",
    "mode_energy",
    "denergy_dbeta",
    "largest_half_odd",
    "lambda_n_continuous",
    "enumerate_fermi_sea",
]

_HALF_ODD_TOL = 1e-9


def _check_half_odd(lam: float) -> None:
    two = 2.0 * lam
    if abs(two - round(two)) > _HALF_ODD_TOL or round(two) % 2 == 0:
        raise ValueError(f"lambda must be a half-odd-integer, got {lam}")


@dataclass(frozen=True)
class ModeSpec:
    """A single-particle mode: geometry, longitudinal quantum number,
    total angular momentum lambda and polarization sigma."""

    geometry: str                 # "infinite" | "finite"
    lam: float                    # half-odd-integer
    sigma: float                  # +1/2 or -1/2
    k: float | None = None        # kR, infinite geometry only
    n: int | None = None          # 1, 2, ..., finite geometry only

    def __post_init__(self):
        if self.geometry not in ("infinite", "finite"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        _check_half_odd(self.lam)
        if self.sigma not in (0.5, -0.5):
            raise ValueError(f"sigma must be +/-1/2, got {self.sigma}")
        if self.geometry == "infinite":
            if self.k is None or self.n is not None:
                raise ValueError("infinite mode takes k, not n")
        else:
            if self.n is None or self.k is not None:
                raise ValueError("finite mode takes n, not k")
            if self.n < 1:
                raise ValueError(f"n must be >= 1, got {self.n}")


def energy_infinite(k: float, lam: float, d: DimensionlessParams) -> float:
    """R*E for a plane-wave mode; k is the dimensionless product kR."""
    return math.sqrt(d.mu**2 + k**2 + (lam + d.beta) ** 2)


def energy_finite(n: int, lam: float, d: DimensionlessParams) -> float:
    """R*E_{n,lambda} for a standing-wave mode, k_n R = nu*n."""
    if d.nu <= 0.0:
        raise ValueError("energy_finite requires nu > 0; use energy_infinite")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.sqrt(d.mu**2 + (d.nu * n) ** 2 + (lam + d.beta) ** 2)


def mode_energy(mode: ModeSpec, d: DimensionlessParams) -> float:
    if mode.geometry == "infinite":
        return energy_infinite(mode.k, mode.lam, d)
    return energy_finite(mode.n, mode.lam, d)


def denergy_dbeta(mode: ModeSpec, d: DimensionlessParams) -> float:
    """Analytic d(R*E)/d(beta) = (lambda+beta)/(R*E)."""
    return (mode.lam + d.beta) / mode_energy(mode, d)


def largest_half_odd(x: float) -> float | None:
    """Largest half-odd-integer <= x, or None if x < 1/2."""
    if x < 0.5:
        return None
    return math.floor(x - 0.5) + 0.5


def lambda_n_continuous(n: int, d: DimensionlessParams) -> float:
    """Continuous boundary value sqrt(alpha^2 - nu^2 n^2).

    This is the smooth estimate the compact formulas are built on; it is
    deliberately kept separate from the exact half-odd-integer lambda_n.
    """
    rem = d.alpha**2 - (d.nu * n) ** 2
    if rem < 0.0:
        raise ValueError(f"no occupied states in column n={n}")
    return math.sqrt(rem)


@dataclass(frozen=True)
class FermiSea:
    """Occupied (n, lambda) states at T=0 with summary numbers."""

    occupied: tuple[tuple[int, float], ...]
    n_F: int                      # 0 for the empty sea
    lambda_n: dict[int, float] = field(default_factory=dict)
    lambda_F: float | None = None
    N_e: int = 0
    criterion: str = "exact"
    ring_like: bool = False

    @property
    def empty(self) -> bool:
        return self.N_e == 0

    def sum_lambda_n(self) -> float:
        return math.fsum(self.lambda_n.values())


def enumerate_fermi_sea(d: DimensionlessParams,
                        criterion: str = "exact") -> FermiSea:
    """Enumerate every occupied (n, lambda) pair at T=0.

    criterion "exact" occupies states with nu^2 n^2 + (lambda+beta)^2
    <= alpha^2 (equivalent to E <= E_F + M with the actual beta);
    "quadratic" drops beta: nu^2 n^2 + lambda^2 <= alpha^2.  Boundary
    ties count as occupied.  Scan order is ascending n then ascending
    lambda, so the output is deterministic.
    """
    if criterion not in ("exact", "quadratic"):
        raise ValueError(f"unknown criterion {criterion!r}")
    if d.nu <= 0.0:
        raise ValueError("Fermi sea enumeration requires nu > 0")

    a2 = d.alpha**2
    beta = d.beta if criterion == "exact" else 0.0
    ring_like = d.nu > d.alpha

    occupied: list[tuple[int, float]] = []
    lambda_n: dict[int, float] = {}
    n_max = math.ceil(d.alpha / d.nu) + 1
    lam_max = d.alpha + abs(d.beta) + 1.0

    for n in range(1, n_max + 1):
        rem = a2 - (d.nu * n) ** 2
        if rem < 0.0:
            break
        col: list[float] = []
        lam = 0.5
        while lam <= lam_max:
            if (lam + beta) ** 2 <= rem:
                col.append(lam)
            if (-lam + beta) ** 2 <= rem:
                col.append(-lam)
            lam += 1.0
        if not col:
            continue
        col.sort()
        occupied.extend((n, lam) for lam in col)
        lambda_n[n] = max(abs(lam) for lam in col)

    if not occupied:
        return FermiSea(occupied=(), n_F=0, criterion=criterion,
                        ring_like=ring_like)

    n_F = max(lambda_n)
    return FermiSea(
        occupied=tuple(occupied),
        n_F=n_F,
        lambda_n=lambda_n,
        lambda_F=lambda_n.get(1),
        N_e=len(occupied),
        criterion=criterion,
        ring_like=ring_like,
    )
