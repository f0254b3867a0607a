"""Anyon generators, braid relations, braid words and a braid-partner solver."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .matrix_core import (
    DimensionError,
    PreconditionError,
    Tolerance,
    _tol,
    as_matrix,
    dagger,
    exp_involutory,
    identity,
)

log = logging.getLogger(__name__)

PAIR_UNITARY_TOL = 1e-10


def anyon_a(theta: float) -> np.ndarray:
    """``diag(exp(i theta/2), exp(-i theta/2))``; at ``theta = -pi/2`` this is ``exp(-i pi/4) diag(1, i)``."""
    half = 0.5 * float(theta)
    return np.diag([np.exp(1j * half), np.exp(-1j * half)])


def anyon_b() -> np.ndarray:
    return np.array([[1, 1j], [1j, 1]], dtype=np.complex128) / np.sqrt(2.0)


def q_deform(H, theta: float, tol: Tolerance | float | None = None) -> np.ndarray:
    """``exp(i theta H / 2)`` for a normalized Hamiltonian (or its bare matrix)."""
    matrix = getattr(H, "matrix", H)
    return exp_involutory(matrix, theta, tol)


@dataclass(frozen=True)
class BraidPair:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A)
        B = as_matrix(self.B)
        if A.shape != B.shape:
            raise DimensionError(f"braid generators differ in shape: {A.shape} vs {B.shape}")
        eye = identity(A.shape[0])
        for name, M in (("A", A), ("B", B)):
            res = float(np.linalg.norm(M @ dagger(M) - eye))
            if not res < PAIR_UNITARY_TOL:
                raise PreconditionError(f"generator {name} is not unitary (residual {res:.3e})")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def dim(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class RelationCheck:
    residual: float
    passed: bool


def check_braid_relation(pair: BraidPair, tol: Tolerance | float | None = None) -> RelationCheck:
    """Residual of ``ABA = BAB``."""
    A, B = pair.A, pair.B
    res = float(np.linalg.norm(A @ B @ A - B @ A @ B))
    return RelationCheck(res, res < _tol(tol))


def check_dirac_game_rule(pair: BraidPair, tol: Tolerance | float | None = None) -> RelationCheck:
    """Residual of the belt-trick rule ``ABBA = I``."""
    A, B = pair.A, pair.B
    res = float(np.linalg.norm(A @ B @ B @ A - identity(pair.dim)))
    return RelationCheck(res, res < _tol(tol))


class BraidWordSyntaxError(ValueError):
    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"invalid braid letter {char!r} at position {position}; expected one of a, b, A, B")


@dataclass(frozen=True)
class BraidWord:
    """A word in the generators.  Lowercase letters are generators, uppercase their inverses."""

    letters: tuple[str, ...] = ()

    ALPHABET = frozenset("abAB")

    def __post_init__(self):
        letters = tuple(self.letters)
        for i, c in enumerate(letters):
            if c not in self.ALPHABET:
                raise BraidWordSyntaxError(c, i)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        letters = []
        for pos, c in enumerate(text):
            if c.isspace():
                continue
            if c not in cls.ALPHABET:
                raise BraidWordSyntaxError(c, pos)
            letters.append(c)
        return cls(tuple(letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(c.swapcase() for c in reversed(self.letters)))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)


def evaluate_word(pair: BraidPair, word: BraidWord | str) -> np.ndarray:
    """Left-to-right product of the generators named by ``word``.

    Inverses are conjugate transposes, which is exact because ``BraidPair``
    only holds unitaries.
    """
    if isinstance(word, str):
        word = BraidWord.parse(word)
    table = {"a": pair.A, "b": pair.B, "A": dagger(pair.A), "B": dagger(pair.B)}
    out = identity(pair.dim)
    for c in word.letters:
        out = out @ table[c]
    return out


# -- braid-partner solver ----------------------------------------------------


@dataclass(frozen=True)
class SolverConfig:
    max_restarts: int = 32
    residual_target: float = 1e-10
    exclude_trivial: bool = True
    rng_seed: int = 0
    trivial_radius: float = 1e-6
    max_polish_rounds: int = 8

    def __post_init__(self):
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1")
        if not self.residual_target > 0:
            raise ValueError("residual_target must be positive")


@dataclass(frozen=True)
class SolverResult:
    """Outcome of :func:`solve_b_given_a`.

    ``b`` is None when no acceptable partner was found; ``residual`` is then
    the smallest non-trivial residual seen across restarts.
    """

    b: np.ndarray | None
    residual: float
    restarts: int

    @property
    def found(self) -> bool:
        return self.b is not None


def unitary_from_angles(x) -> np.ndarray:
    """U(2) chart: global phase times an SU(2) element given by three angles."""
    phase, alpha, beta, gamma = x
    c, s = np.cos(gamma), np.sin(gamma)
    ea, eb = np.exp(1j * alpha), np.exp(1j * beta)
    return np.exp(1j * phase) * np.array([[ea * c, eb * s], [-np.conj(eb) * s, np.conj(ea) * c]])


_LOW = np.zeros(4)
_HIGH = np.array([2 * np.pi, 2 * np.pi, 2 * np.pi, np.pi / 2])


def _nelder_mead(objective, x0, step=None, xatol=1e-12):
    options = {"xatol": xatol, "fatol": 1e-30, "maxfev": 6000, "adaptive": True}
    if step is not None:
        options["initial_simplex"] = np.vstack([x0, x0 + step * np.eye(4)])
    return minimize(objective, x0, method="Nelder-Mead", options=options)


def solve_b_given_a(a, cfg: SolverConfig | None = None) -> SolverResult:
    """Search for a unitary ``b`` with ``a b a = b a b``.

    Multi-start Nelder-Mead on ``||aba - bab||_F^2`` over the four-angle chart
    of U(2).  Each restart draws its start from its own generator seeded by
    ``(rng_seed, restart)``, so results do not depend on how many restarts ran
    before.  A descent that lands on ``b = a`` (always a solution) is discarded
    when ``exclude_trivial`` is set.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a, dims=(2,))
    res = float(np.linalg.norm(a @ dagger(a) - identity(2)))
    if not res < PAIR_UNITARY_TOL:
        raise PreconditionError(f"a is not unitary (residual {res:.3e})")

    def objective(x):
        b = unitary_from_angles(x)
        d = a @ b @ a - b @ a @ b
        return float(np.vdot(d, d).real)

    target_sq = cfg.residual_target**2
    best = np.inf
    for restart in range(cfg.max_restarts):
        rng = np.random.default_rng([cfg.rng_seed, restart])
        fit = _nelder_mead(objective, rng.uniform(_LOW, _HIGH), xatol=1e-10)
        x, f = fit.x, fit.fun
        b = unitary_from_angles(x)
        if cfg.exclude_trivial and np.linalg.norm(b - a) < cfg.trivial_radius:
            log.debug("restart %d converged to the trivial partner b = a", restart)
            continue
        # polish with shrinking simplices while it keeps improving
        step = 1e-3
        for _ in range(cfg.max_polish_rounds):
            if f < target_sq:
                break
            fit = _nelder_mead(objective, x, step=step, xatol=1e-15)
            if fit.fun >= f:
                break
            x, f = fit.x, fit.fun
            step = max(step * 1e-2, 1e-9)
        b = unitary_from_angles(x)
        residual = float(np.linalg.norm(a @ b @ a - b @ a @ b))
        if cfg.exclude_trivial and np.linalg.norm(b - a) < cfg.trivial_radius:
            continue
        log.debug("restart %d: residual %.3e", restart, residual)
        if residual < cfg.residual_target:
            return SolverResult(b, residual, restart + 1)
        best = min(best, residual)
    return SolverResult(None, best, cfg.max_restarts)
