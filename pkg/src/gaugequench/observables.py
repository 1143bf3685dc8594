"""Per-sample observables: return-rate components, electric flux, condensate.

The rate component against vacuum m_z is -(1/L) ln |<vac_mz|psi>|^2 at the
finite L of the run.  Overlaps below the underflow floor are reported as
math.inf: the component is orthogonal to working precision and never wins
the minimum.  Flux and matter density are diagonal in the occupation basis,
so expectations are plain weighted sums over |amplitude|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .basis import PhysicalBasis
from .hamiltonian import SparseHamiltonian

UNDERFLOW_FLOOR = 1e-300


@dataclass(frozen=True)
class RateComponents:
    """Rate function per vacuum at one sample time; inf marks orthogonality."""

    time: float
    lam: dict[Fraction, float]
    lambda_min: float
    argmin_mz: Fraction | None


@dataclass(frozen=True)
class ObservableSample:
    time: float
    flux: float
    condensate: float
    energy: float
    norm: float


@lru_cache(maxsize=16)
def flux_vector(basis: PhysicalBasis) -> np.ndarray:
    """Staggered link expectation of each basis state (first link weighted +)."""
    L = basis.model.length
    return np.array(
        [s.twice_staggered_flux() / (2.0 * L) for s in basis.states], dtype=np.float64
    )


@lru_cache(maxsize=16)
def density_vector(basis: PhysicalBasis) -> np.ndarray:
    """Mean matter occupation of each basis state."""
    L = basis.model.length
    return np.array([s.occupation() / L for s in basis.states], dtype=np.float64)


def rate_components(
    basis: PhysicalBasis,
    psi: np.ndarray,
    vacua: dict[int, int] | None = None,
    time: float = 0.0,
) -> RateComponents:
    """Return-rate components against every vacuum in `vacua` (twice_mz -> index)."""
    if vacua is None:
        vacua = basis.vacuum_indices()
    L = basis.model.length
    lam: dict[Fraction, float] = {}
    best: tuple[float, Fraction] | None = None
    for twice_mz, idx in vacua.items():
        mz = Fraction(twice_mz, 2)
        overlap_sq = min(abs(psi[idx]) ** 2, 1.0)
        if overlap_sq < UNDERFLOW_FLOOR:
            lam[mz] = math.inf
            continue
        value = -math.log(overlap_sq) / L + 0.0  # +0.0 normalizes -0.0 at overlap 1
        lam[mz] = value
        if best is None or value < best[0]:
            best = (value, mz)
    if best is None:
        return RateComponents(time, lam, math.inf, None)
    return RateComponents(time, lam, best[0], best[1])


def electric_flux(basis: PhysicalBasis, psi: np.ndarray) -> float:
    """Staggered link-spin expectation, the order parameter of the global Z2."""
    return float(np.abs(psi) ** 2 @ flux_vector(basis))


def chiral_condensate(basis: PhysicalBasis, psi: np.ndarray) -> float:
    """Mean matter occupation (1/L) sum_j <n_j>, in [0, 1]."""
    return float(np.abs(psi) ** 2 @ density_vector(basis))


class QuenchSampler:
    """Callable sampler for `propagator.evolve`; accumulates a full time series."""

    def __init__(self, basis: PhysicalBasis, h: SparseHamiltonian):
        self.basis = basis
        self.h = h
        self.vacua = basis.vacuum_indices()
        self._flux = flux_vector(basis)
        self._dens = density_vector(basis)
        self.rates: list[RateComponents] = []
        self.locals: list[ObservableSample] = []

    def __call__(self, t: float, psi: np.ndarray) -> None:
        self.rates.append(rate_components(self.basis, psi, self.vacua, time=t))
        prob = np.abs(psi) ** 2
        self.locals.append(
            ObservableSample(
                time=t,
                flux=float(prob @ self._flux),
                condensate=float(prob @ self._dens),
                energy=self.h.expectation(psi),
                norm=float(np.linalg.norm(psi)),
            )
        )

    def series(self):
        from .series import QuenchTimeSeries

        return QuenchTimeSeries.from_samples(self.basis.model, self.rates, self.locals)
