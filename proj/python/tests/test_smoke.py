"""End-to-end checks of the python bindings against known answers."""

import math
import os

import numpy as np
import pytest

import siv


def test_pattern_roundtrip_and_ops():
    p = siv.SparsityPattern.from_text("110\n110\n001\n")
    assert p.rows == 3 and p.cols == 3 and p.count() == 5
    assert siv.SparsityPattern.from_text(p.to_text()) == p
    assert p.is_symmetric()

    arr = p.to_array()
    assert arr.shape == (3, 3)
    assert siv.SparsityPattern.from_array(arr) == p

    chain = siv.SparsityPattern.from_text("110\n111\n011\n")
    assert siv.closure(chain) == siv.SparsityPattern.ones(3, 3)
    assert siv.leq(p, siv.bool_add(p, chain))

    parts = siv.connected_components(p)
    assert parts.r == 2
    assert sorted(parts.sizes) == [1, 2]


def test_structure_of_tolerance():
    M = np.array([[1.0, 1e-12], [0.0, 2.0]])
    assert siv.structure_of(M).count() == 2
    assert siv.structure_of(M, 1e-14).count() == 3


def test_invariance_verdicts():
    ex = siv.example1()
    assert siv.check_invariance(ex.S, ex.T, ex.R).holds

    T_bad = siv.SparsityPattern.from_text(ex.T.to_text())
    T_bad.set(2, 0, True)
    v = siv.check_invariance(ex.S, T_bad, ex.R)
    assert not v.holds and v.reason == "T_exceeds_S"
    assert tuple(v.violating_index) == (2, 0)

    R_big = siv.SparsityPattern.ones(3, 3)
    v2 = siv.check_invariance(ex.S, ex.T, R_big)
    assert not v2.holds and v2.reason == "product_exceeds_S"

    X, Y = siv.counterexample(ex.S, ex.T, R_big, seed=7)
    K = Y @ np.linalg.inv(X)
    S = ex.S.to_array()
    leak = max(abs(K[i, j]) for i in range(3) for j in range(3) if S[i, j] == 0)
    assert leak > 1e-6

    with pytest.raises(ValueError):
        siv.counterexample(ex.S, ex.T, ex.R)

    assert siv.numeric_probe(ex.S, ex.T, ex.R, trials=10)


def test_optimize_R():
    ex = siv.example1()
    assert siv.optimize_R(ex.T) == ex.R
    assert siv.is_feasible_R(ex.T, ex.R)
    assert siv.optimize_R(ex.S) == siv.SparsityPattern.identity(3)


def test_example1_synthesis():
    ex = siv.example1()
    res = siv.synthesize(ex.sys, ex.S, ex.T, ex.R)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(18.0329600, rel=1e-5)
    assert res.h2 == pytest.approx(4.0296877, rel=1e-4)
    assert math.sqrt(res.objective) >= res.h2 - 1e-9

    S = ex.S.to_array()
    assert all(res.K[i, j] == 0.0 for i in range(3) for j in range(3) if S[i, j] == 0)

    assert res.certificate is not None
    assert res.certificate.r == 2
    assert sorted(res.certificate.block_sizes) == [1, 2]
    assert min(res.certificate.block_min_eigs) > 0

    assert res.residuals.spectral_abscissa < 0
    assert res.residuals.lyap_lmi_mineig > 0
    assert siv.is_hurwitz(ex.sys.A + ex.sys.B @ res.K).hurwitz
    assert siv.h2_norm(ex.sys, res.K) == pytest.approx(res.h2, abs=1e-9)


def test_centralized_and_infeasible():
    ex = siv.example1()
    full = siv.SparsityPattern.ones(3, 3)
    cen = siv.synthesize(ex.sys, full, full, full)
    assert cen.status == "optimal"
    assert cen.h2 == pytest.approx(3.3827383, rel=1e-4)
    assert cen.certificate.r == 1

    diag = siv.synthesize(ex.sys, ex.S, ex.T, siv.SparsityPattern.identity(3))
    assert diag.status == "infeasible"
    cert = diag.infeasibility
    assert cert is not None
    assert cert.f0_inner < -1e-4
    assert cert.max_var_inner < 1e-7
    assert cert.min_eig > -1e-9
    assert cert.trace == pytest.approx(1.0, abs=1e-6)


def test_scalar_h2():
    sys = siv.LinearSystem(
        np.array([[-1.0]]),
        np.array([[1.0]]),
        np.array([[1.0]]),
        np.array([[1.0], [0.0]]),
        np.array([[0.0], [1.0]]),
    )
    assert siv.h2_norm(sys, np.zeros((1, 1))) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    with pytest.raises(ValueError):
        siv.h2_norm(sys, np.array([[2.0]]))


def test_sdpa_roundtrip():
    ex = siv.example1()
    text = siv.export_sdpa(ex.sys, ex.T, ex.R)
    assert text.splitlines()[0] == "16"
    status, obj = siv.solve_sdpa(text)
    assert status == "optimal"
    direct = siv.synthesize(ex.sys, ex.S, ex.T, ex.R)
    assert obj == pytest.approx(direct.objective, rel=1e-5)


def test_mesh_and_problem_file():
    spec = siv.MeshSpec()
    spec.n = 2
    spec.L = 0
    mesh = siv.mesh_system(spec)
    assert mesh.sys.A.shape == (8, 8)
    assert mesh.sys.B.shape == (8, 4)
    assert mesh.S.rows == 4 and mesh.S.cols == 8

    path = os.environ.get("SIV_EXAMPLE_JSON")
    if path is None:
        pytest.skip("SIV_EXAMPLE_JSON not set")
    prob = siv.load_problem(path)
    ex = siv.example1()
    assert prob.S == ex.S
    assert prob.effective_T() == ex.T
    assert prob.effective_R() == ex.R
    assert np.allclose(prob.sys.A, ex.sys.A)


def test_against_independent_solver():
    cp = pytest.importorskip("cvxpy")
    ex = siv.example1()
    A, B, H, C, D = ex.sys.A, ex.sys.B, ex.sys.H, ex.sys.C, ex.sys.D
    n, m = ex.sys.n, ex.sys.m
    eps = siv.default_eps(ex.sys)
    Rc = siv.closure(ex.R).to_array()
    T = ex.T.to_array()

    X = cp.Variable((n, n), symmetric=True)
    Y = cp.Variable((m, n))
    Z = cp.Variable((m, m), symmetric=True)
    cons = [X[i, j] == 0 for i in range(n) for j in range(n) if Rc[i, j] == 0]
    cons += [Y[i, j] == 0 for i in range(m) for j in range(n) if T[i, j] == 0]
    cons += [
        cp.bmat([[Z, Y], [Y.T, X]]) >> 0,
        X - eps * np.eye(n) >> 0,
        -(A @ X + X @ A.T + B @ Y + Y.T @ B.T + H @ H.T) - eps * np.eye(n) >> 0,
    ]
    cost = cp.trace(C @ X @ C.T + D @ Y @ C.T + C @ Y.T @ D.T + D @ Z @ D.T)
    prob = cp.Problem(cp.Minimize(cost), cons)
    prob.solve(solver=cp.CVXOPT)

    ours = siv.synthesize(ex.sys, ex.S, ex.T, ex.R)
    assert prob.value == pytest.approx(ours.objective, rel=1e-4)
