import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidham.braid import (
    BraidPair,
    BraidWord,
    BraidWordSyntaxError,
    SolverConfig,
    anyon_a,
    anyon_b,
    check_braid_relation,
    check_dirac_game_rule,
    evaluate_word,
    q_deform,
    solve_b_given_a,
    unitary_from_angles,
)
from braidham.hamiltonians import SIGMA_1, SIGMA_3, derived_hamiltonian, dirac_hamiltonian
from braidham.matrix_core import DimensionError, PreconditionError, classify, matrix_order
from conftest import matmul2

I2 = np.eye(2)
A = anyon_a(-math.pi / 2)
B = anyon_b()
PAIR = BraidPair(A, B)

# plain-Python copies of the paper's 2x2 generators
A_LIST = [[cmath.exp(-1j * math.pi / 4), 0], [0, cmath.exp(-1j * math.pi / 4) * 1j]]
B_LIST = [[1 / math.sqrt(2), 1j / math.sqrt(2)], [1j / math.sqrt(2), 1 / math.sqrt(2)]]


def test_anyon_a_examples():
    np.testing.assert_array_equal(anyon_a(0.0), I2)
    np.testing.assert_allclose(A, A_LIST, atol=1e-16)
    a_pi = anyon_a(math.pi)
    np.testing.assert_allclose(a_pi, 1j * SIGMA_3, atol=1e-16)
    o = matrix_order(a_pi)
    assert o.order == 4 and o.minus_identity == [2]


@settings(max_examples=100, deadline=None)
@given(st.floats(-20, 20), st.floats(-20, 20))
def test_anyon_a_additive(t1, t2):
    assert np.linalg.norm(anyon_a(t1) @ anyon_a(t2) - anyon_a(t1 + t2)) < 1e-13


def test_anyon_b_examples():
    assert classify(B).unitary
    np.testing.assert_allclose(B @ B, 1j * SIGMA_1, atol=1e-15)
    np.testing.assert_allclose(matmul2(B_LIST, B_LIST), [[0, 1j], [1j, 0]], atol=1e-15)
    o = matrix_order(B)
    assert o.order == 8 and o.minus_identity == [4]


def test_q_deform(params_345):
    HD = dirac_hamiltonian(params_345)
    np.testing.assert_array_equal(q_deform(HD, 0.0), np.eye(4))
    euler = math.cos(math.pi / 4) * np.eye(4) - 1j * math.sin(math.pi / 4) * HD.matrix
    np.testing.assert_allclose(q_deform(HD, -math.pi / 2), euler, atol=1e-15)
    H = derived_hamiltonian(params_345)
    np.testing.assert_allclose(q_deform(H, -math.pi / 2), (np.eye(4) - 1j * H.matrix) / math.sqrt(2), atol=1e-15)
    with pytest.raises(PreconditionError):
        q_deform(2 * HD.matrix, 1.0)


def test_braid_pair_validation():
    with pytest.raises(DimensionError):
        BraidPair(I2, np.eye(4))
    with pytest.raises(PreconditionError):
        BraidPair(I2, 2 * I2)


def test_braid_relation_examples():
    r = check_braid_relation(PAIR)
    assert r.residual < 1e-14 and r.passed
    assert check_braid_relation(BraidPair(I2, I2)).residual == 0.0
    # oracle: plain-Python products
    aba = matmul2(matmul2(A_LIST, B_LIST), A_LIST)
    bab = matmul2(matmul2(B_LIST, A_LIST), B_LIST)
    assert max(abs(aba[i][j] - bab[i][j]) for i in range(2) for j in range(2)) < 1e-15


def test_braid_relation_perturbed_fails():
    phase = [[1, 0], [0, cmath.exp(1j * math.pi / 5)]]
    Bp = matmul2(phase, B_LIST)
    aba = matmul2(matmul2(A_LIST, Bp), A_LIST)
    bab = matmul2(matmul2(Bp, A_LIST), Bp)
    oracle = math.sqrt(sum(abs(aba[i][j] - bab[i][j]) ** 2 for i in range(2) for j in range(2)))
    r = check_braid_relation(BraidPair(A, np.array(Bp)))
    assert r.residual == pytest.approx(oracle, abs=1e-14)
    assert r.residual > 0.1 and not r.passed


def test_block_lifting_preserves_relation():
    lifted = BraidPair(np.kron(I2, A), np.kron(I2, B))
    r2, r4 = check_braid_relation(PAIR).residual, check_braid_relation(lifted).residual
    assert r4 < 1e-14
    assert abs(r4 - math.sqrt(2) * r2) < 1e-14


def test_dirac_game_rule():
    abba = matmul2(matmul2(matmul2(A_LIST, B_LIST), B_LIST), A_LIST)
    np.testing.assert_allclose(abba, [[0, 1j], [1j, 0]], atol=1e-15)
    r = check_dirac_game_rule(PAIR)
    assert abs(r.residual - 2.0) < 1e-12 and not r.passed
    assert check_dirac_game_rule(BraidPair(I2, I2)).passed
    # pure residual check on general inputs
    r = check_dirac_game_rule(BraidPair(1j * SIGMA_3, 1j * SIGMA_1))
    assert r.residual >= 0


def test_word_parsing():
    assert BraidWord.parse(" a b\tA\nB ").letters == ("a", "b", "A", "B")
    assert len(BraidWord.parse("")) == 0
    with pytest.raises(BraidWordSyntaxError) as exc:
        BraidWord.parse("ab c")
    assert exc.value.position == 3 and exc.value.char == "c"
    with pytest.raises(BraidWordSyntaxError):
        BraidWord(("a", "x"))
    assert str(BraidWord.parse("abAB").inverse()) == "baBA"


def test_evaluate_word_examples():
    np.testing.assert_allclose(evaluate_word(PAIR, "aba"), evaluate_word(PAIR, "bab"), atol=1e-15)
    np.testing.assert_array_equal(evaluate_word(PAIR, ""), I2)
    np.testing.assert_allclose(evaluate_word(PAIR, "a" * 8), I2, atol=1e-14)
    np.testing.assert_allclose(evaluate_word(PAIR, "aA"), I2, atol=1e-15)
    np.testing.assert_allclose(evaluate_word(PAIR, "abba"), 1j * SIGMA_1, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="abAB", max_size=30))
def test_word_times_inverse_is_identity(text):
    w = BraidWord.parse(text)
    assert np.linalg.norm(evaluate_word(PAIR, w + w.inverse()) - I2) < 1e-13


def test_unitary_chart_is_unitary(rng):
    for _ in range(20):
        U = unitary_from_angles(rng.uniform(0, 2 * np.pi, 4))
        assert classify(U).unitary


def test_solver_paper_angle():
    result = solve_b_given_a(A, SolverConfig(rng_seed=0))
    assert result.found and result.restarts <= 32
    assert classify(result.b).unitary
    assert np.linalg.norm(result.b - A) > 1e-6
    # verification independent of the optimizer
    assert check_braid_relation(BraidPair(A, result.b)).residual < 1e-10
    assert check_braid_relation(BraidPair(A, result.b)).residual == pytest.approx(result.residual, abs=1e-15)


def test_solver_identity_without_exclusion():
    result = solve_b_given_a(I2, SolverConfig(exclude_trivial=False, rng_seed=3))
    assert result.found
    np.testing.assert_allclose(result.b, I2, atol=1e-8)


def test_solver_dirac_game_angle():
    a = anyon_a(math.pi)
    result = solve_b_given_a(a, SolverConfig(rng_seed=1))
    assert result.found
    aba = matmul2(matmul2(a.tolist(), result.b.tolist()), a.tolist())
    bab = matmul2(matmul2(result.b.tolist(), a.tolist()), result.b.tolist())
    assert max(abs(aba[i][j] - bab[i][j]) for i in range(2) for j in range(2)) < 1e-10


def test_solver_deterministic():
    cfg = SolverConfig(rng_seed=11)
    r1, r2 = solve_b_given_a(A, cfg), solve_b_given_a(A, cfg)
    np.testing.assert_array_equal(r1.b, r2.b)


def test_solver_no_solution_is_a_result():
    # eigenphases this close admit no non-trivial unitary partner in practice; b = a is excluded
    result = solve_b_given_a(anyon_a(0.3), SolverConfig(max_restarts=3, rng_seed=0))
    assert not result.found and result.b is None and result.restarts == 3


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(max_restarts=0)
    with pytest.raises(ValueError):
        SolverConfig(residual_target=0)
    with pytest.raises(PreconditionError):
        solve_b_given_a(2 * I2)
