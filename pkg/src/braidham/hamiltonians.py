"""Dirac, Bogoliubov and derived Hamiltonians in natural units (hbar = c = 1)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrix_core import Tolerance, _tol

MASS_FLOOR = 1e-8
MOMENTUM_FLOOR = 1e-8


class DomainError(ValueError):
    """Parameters outside the region where the construction is defined."""


SIGMA_0 = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)


@dataclass(frozen=True)
class Momentum:
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.p1, self.p2, self.p3)):
            raise DomainError(f"momentum components must be finite: {self}")

    @classmethod
    def of(cls, p) -> "Momentum":
        if isinstance(p, Momentum):
            return p
        p1, p2, p3 = (float(c) for c in p)
        return cls(p1, p2, p3)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3], dtype=float)

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.p1**2 + self.p2**2 + self.p3**2)

    @property
    def plus(self) -> complex:
        return complex(self.p1, self.p2)

    @property
    def minus(self) -> complex:
        return complex(self.p1, -self.p2)

    def __neg__(self) -> "Momentum":
        return Momentum(-self.p1, -self.p2, -self.p3)


@dataclass(frozen=True)
class DiracParams:
    """Mass ``m`` and momentum ``p`` of a free Dirac particle.

    Both ``m`` and ``|p|`` must clear a small floor: the diagonalizing unitary
    is singular at ``p = 0`` and the derived energy scale ``pE/m`` diverges at
    ``m = 0``.
    """

    m: float
    p: Momentum
    mass_floor: float = MASS_FLOOR
    momentum_floor: float = MOMENTUM_FLOOR

    def __post_init__(self):
        object.__setattr__(self, "p", Momentum.of(self.p))
        if not math.isfinite(self.m) or self.m < self.mass_floor:
            raise DomainError(f"mass must be >= {self.mass_floor:g}, got {self.m!r}")
        if self.p.magnitude < self.momentum_floor:
            raise DomainError(f"|p| must be >= {self.momentum_floor:g}, got {self.p.magnitude!r}")

    @property
    def energy(self) -> float:
        return math.hypot(self.p.magnitude, self.m)

    @property
    def u_plus(self) -> float:
        return math.sqrt(self.energy + self.m)

    @property
    def u_minus(self) -> float:
        # E - m = p^2 / (E + m) avoids cancellation when p << m
        return math.sqrt(self.p.magnitude**2 / (self.energy + self.m))


@dataclass(frozen=True)
class BogoliubovParams:
    k: Momentum
    m_qp: float
    mu: float = 0.0
    delta_B: float = 1.0
    k_F: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "k", Momentum.of(self.k))
        if not self.m_qp > 0:
            raise DomainError(f"quasiparticle mass must be positive, got {self.m_qp!r}")
        if not self.k_F > 0:
            raise DomainError(f"Fermi momentum must be positive, got {self.k_F!r}")

    @property
    def mass_term(self) -> float:
        """``k^2 / (2 m_qp) - mu``."""
        return self.k.magnitude**2 / (2.0 * self.m_qp) - self.mu

    @property
    def effective_momentum(self) -> np.ndarray:
        return self.k.vector * (self.delta_B / self.k_F)


@dataclass(frozen=True)
class NormalizedHamiltonian:
    """A Hermitian involution together with the energy that normalizes it."""

    matrix: np.ndarray
    energy_scale: float


@dataclass(frozen=True)
class DiracMatrices:
    beta: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    alpha3: np.ndarray

    @property
    def alpha(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.alpha1, self.alpha2, self.alpha3)


@lru_cache(maxsize=None)
def _dirac_matrices() -> DiracMatrices:
    beta = np.kron(SIGMA_3, SIGMA_0)
    alphas = [np.kron(SIGMA_1, s) for s in PAULI]
    for M in (beta, *alphas):
        M.setflags(write=False)
    return DiracMatrices(beta, *alphas)


def dirac_matrices() -> DiracMatrices:
    """Standard-representation ``beta`` and ``alpha_i`` (read-only arrays)."""
    return _dirac_matrices()


def _alpha_dot(p: np.ndarray) -> np.ndarray:
    d = dirac_matrices()
    return p[0] * d.alpha1 + p[1] * d.alpha2 + p[2] * d.alpha3


def dirac_hamiltonian(params: DiracParams) -> NormalizedHamiltonian:
    """``H_D = (m beta + p . alpha) / E``."""
    E = params.energy
    H = (params.m * dirac_matrices().beta + _alpha_dot(params.p.vector)) / E
    return NormalizedHamiltonian(H, E)


def bogoliubov_hamiltonian(params: BogoliubovParams) -> np.ndarray:
    """Unnormalized ``m(k) beta + p_eff . alpha``."""
    return params.mass_term * dirac_matrices().beta + _alpha_dot(params.effective_momentum)


def derived_hamiltonian(params: DiracParams) -> NormalizedHamiltonian:
    """The braid partner of ``H_D``: ``(p^2 beta - m p . alpha) / (E p)``.

    The energy scale is ``pE/m``; multiplying the matrix by it gives
    ``(p^2/m) beta - p . alpha``.
    """
    E = params.energy
    p = params.p.magnitude
    H = (p * p * dirac_matrices().beta - params.m * _alpha_dot(params.p.vector)) / (E * p)
    return NormalizedHamiltonian(H, p * E / params.m)


@dataclass(frozen=True)
class BogoliubovMatch:
    residual: float
    energy_residual: float
    matched_params: BogoliubovParams
    tol: float

    @property
    def matched(self) -> bool:
        return self.residual < self.tol and self.energy_residual < self.tol


def bogoliubov_match(params: DiracParams, tol: Tolerance | float | None = None) -> BogoliubovMatch:
    """Compare the derived Hamiltonian with ``H_B`` at ``mu = 0``, mass ``m/2`` and momentum ``-p``.

    The momentum flip is carried by ``delta_B / k_F = -1`` with ``k = p``.
    """
    matched = BogoliubovParams(k=params.p, m_qp=params.m / 2.0, mu=0.0, delta_B=-1.0, k_F=1.0)
    derived = derived_hamiltonian(params)
    H_B = bogoliubov_hamiltonian(matched)
    scale = derived.energy_scale
    quasi_energy = math.hypot(matched.mass_term, float(np.linalg.norm(matched.effective_momentum)))
    return BogoliubovMatch(
        residual=float(np.linalg.norm(scale * derived.matrix - H_B)),
        energy_residual=abs(scale - quasi_energy),
        matched_params=matched,
        tol=_tol(tol),
    )
