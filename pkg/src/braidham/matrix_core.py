"""Dense 2x2 / 4x4 complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every equality
claim in the package is checked as a Frobenius-norm residual against an
absolute tolerance; global phases are never quotiented out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_ABS_TOL = 1e-12
ALLOWED_DIMS = (2, 4)


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit an operation."""


class PreconditionError(ValueError):
    """Raised when an input matrix lacks a property an operation requires."""


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = DEFAULT_ABS_TOL

    def __post_init__(self):
        if not (self.abs_tol > 0 and np.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be positive and finite, got {self.abs_tol!r}")


def _tol(tol: Tolerance | float | None) -> float:
    if tol is None:
        return DEFAULT_ABS_TOL
    if isinstance(tol, Tolerance):
        return tol.abs_tol
    return Tolerance(float(tol)).abs_tol


def as_matrix(M, dims: tuple[int, ...] = ALLOWED_DIMS) -> np.ndarray:
    """Coerce ``M`` to a square complex matrix of an allowed dimension."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] not in dims:
        raise DimensionError(f"expected a square matrix of dimension {dims}, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(M).T


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def frobenius_distance(A, B) -> float:
    """Return ``||A - B||_F``."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return float(np.linalg.norm(A - B))


@dataclass(frozen=True)
class Classification:
    hermitian: bool
    unitary: bool
    involutory: bool
    traceless: bool
    residuals: dict = field(default_factory=dict, compare=False)


def _residuals(M: np.ndarray) -> dict[str, float]:
    eye = identity(M.shape[0])
    return {
        "hermitian": float(np.linalg.norm(M - dagger(M))),
        "unitary": float(np.linalg.norm(M @ dagger(M) - eye)),
        "involutory": float(np.linalg.norm(M @ M - eye)),
        "traceless": float(abs(np.trace(M))),
    }


def classify(M, tol: Tolerance | float | None = None) -> Classification:
    """Structural flags of ``M``, each true iff its residual is below tolerance."""
    res = _residuals(as_matrix(M))
    t = _tol(tol)
    return Classification(**{k: v < t for k, v in res.items()}, residuals=res)


def exp_involutory(H, theta: float, tol: Tolerance | float | None = None) -> np.ndarray:
    """``exp(i theta H / 2)`` for a Hermitian involution ``H``.

    Since ``H @ H = I`` the exponential series collapses to
    ``cos(theta/2) I + i sin(theta/2) H``.
    """
    H = as_matrix(H)
    t = _tol(tol)
    res = _residuals(H)
    for name in ("hermitian", "involutory"):
        if not res[name] < t:
            raise PreconditionError(f"exp_involutory needs a {name} matrix; {name} residual {res[name]:.3e} >= {t:.1e}")
    half = 0.5 * float(theta)
    return np.cos(half) * identity(H.shape[0]) + 1j * np.sin(half) * H


@dataclass(frozen=True)
class OrderInfo:
    """Multiplicative order of a unitary matrix.

    ``order`` is None when no power up to ``max_order`` returns to the
    identity.  ``minus_identity`` lists every exponent (up to the order, or
    ``max_order``) at which the power equals ``-I``.
    """

    order: int | None
    minus_identity: list[int]


def matrix_order(M, max_order: int = 64, tol: Tolerance | float | None = None) -> OrderInfo:
    M = as_matrix(M)
    t = _tol(tol)
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    res = _residuals(M)["unitary"]
    if not res < t:
        raise PreconditionError(f"matrix_order needs a unitary matrix; unitary residual {res:.3e} >= {t:.1e}")
    eye = identity(M.shape[0])
    power = eye
    minus = []
    for n in range(1, max_order + 1):
        power = power @ M
        if np.linalg.norm(power + eye) < t:
            minus.append(n)
        if np.linalg.norm(power - eye) < t:
            return OrderInfo(n, minus)
    return OrderInfo(None, minus)


def kron(A, B) -> np.ndarray:
    """Kronecker product of two 2x2 matrices; block ``(i, j)`` is ``A[i, j] * B``."""
    A = as_matrix(A, dims=(2,))
    B = as_matrix(B, dims=(2,))
    return np.kron(A, B)


@dataclass(frozen=True)
class KronResiduals:
    left_residual: float
    right_residual: float
    left_factor: np.ndarray = field(repr=False, compare=False)
    right_factor: np.ndarray = field(repr=False, compare=False)


def kron_factor_residuals(M) -> KronResiduals:
    """Distances from a 4x4 matrix to the subspaces ``X (x) I`` and ``I (x) X``.

    Both subspaces are linear, so the nearest point is an orthogonal
    projection: average the entries that the pattern forces to be equal.
    With ``M[2i+k, 2j+l] = T[i, k, j, l]``, the best left factor is
    ``X[i, j] = mean_k T[i, k, j, k]`` and the best right factor is
    ``X[k, l] = mean_i T[i, k, i, l]``.
    """
    M = as_matrix(M, dims=(4,))
    T = M.reshape(2, 2, 2, 2)
    eye = identity(2)
    left = 0.5 * np.einsum("ikjk->ij", T)
    right = 0.5 * np.einsum("ikil->kl", T)
    return KronResiduals(
        left_residual=float(np.linalg.norm(M - np.kron(left, eye))),
        right_residual=float(np.linalg.norm(M - np.kron(eye, right))),
        left_factor=left,
        right_factor=right,
    )
