"""Acceptance suite: every claim the library is built to verify, exercised
end to end at pinned tolerances.  Run with ``pytest tests/test_acceptance.py
-v -s`` to see one status line per criterion.
"""

import numpy as np

from entropylab.cli import main as cli_main
from entropylab.functionals import (
    gibbs_objective,
    phi_objective,
    relative_entropy,
    trace_exp_functional,
)
from entropylab.matrix_core import (
    HermitianMatrix,
    make_rng,
    matrix_exp,
    matrix_log,
    random_hermitian,
    random_pd,
)
from entropylab.variational import gibbs_gradient, maximize, phi_gradient
from entropylab.verifiers import (
    DEFAULT_SEED,
    CheckConfig,
    check_derivative_limit,
    check_gt_jensen,
    check_homogeneity,
    check_multi_concavity,
    check_phi_concavity,
    check_sh_convexity,
    search_gt_route_gap,
)


def status(num, title, ok):
    print(f"ACCEPTANCE {num:02d} {title}: {'PASS' if ok else 'FAIL'}")
    assert ok


def strict_contraction(rng, rows, cols):
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return float(rng.uniform(0.3, 0.95)) * g / np.linalg.norm(g, 2)


def test_01_reduced_entropy_convexity():
    cfg = CheckConfig(trials=500, seed=DEFAULT_SEED,
                      dims=tuple((1, d, d) for d in range(1, 7)))
    report = check_sh_convexity(cfg)
    status(1, "reduced relative entropy is jointly convex", report.passed)


def test_02_trace_exp_concavity():
    dims = ((1, 1, 1), (1, 2, 2), (1, 3, 3), (1, 4, 4), (1, 5, 5), (1, 6, 6),
            (1, 2, 5), (1, 5, 2), (1, 6, 3), (1, 3, 6), (1, 4, 1), (1, 1, 4))
    report = check_phi_concavity(CheckConfig(trials=500, seed=DEFAULT_SEED, dims=dims))
    status(2, "Tr exp(L + H* log(A) H) is concave", report.passed)


def test_03_multi_variable_concavity_with_block_lift():
    dims = ((1, 2, 2), (1, 4, 4), (2, 2, 2), (2, 3, 4), (2, 4, 3), (3, 2, 2),
            (3, 3, 3), (4, 2, 2), (4, 4, 4), (2, 1, 3), (1, 1, 1), (4, 3, 2))
    report = check_multi_concavity(CheckConfig(trials=200, seed=DEFAULT_SEED, dims=dims))
    status(3, "k-variable concavity + block-lift identity", report.passed)


def test_04_gt_jensen_interpolation():
    dims = ((1, 2, 2), (1, 4, 4), (1, 6, 6), (2, 2, 2), (2, 3, 3), (3, 2, 2),
            (4, 2, 2), (2, 2, 4), (2, 4, 4), (1, 1, 1))
    report = check_gt_jensen(CheckConfig(trials=500, seed=DEFAULT_SEED, dims=dims))
    status(4, "Golden-Thompson / Jensen interpolation bound", report.passed)


def test_05_gibbs_variational_identity():
    rng = make_rng(DEFAULT_SEED)
    ok = True
    for _ in range(50):
        d = int(rng.integers(1, 6))
        b = random_pd(d, (0.05, 5.0), rng)
        result = maximize("gibbs", {"B": b})
        tr_b = b.trace()
        ok &= result.converged
        ok &= abs(result.value - tr_b) <= 1e-6 * (1.0 + tr_b)
        err = np.linalg.norm(result.argmax.mat - b.mat, "fro")
        ok &= err <= 1e-5 * (1.0 + np.linalg.norm(b.mat, "fro"))
    status(5, "Tr B = max Tr(X log B - X log X + X), argmax B", ok)


def test_06_phi_variational_identity():
    rng = make_rng(DEFAULT_SEED + 1)
    ok = True
    for _ in range(50):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(1, 6))
        a = random_pd(m, (0.05, 5.0), rng)
        L = random_hermitian(n, 1.0, rng)
        h = strict_contraction(rng, m, n)
        result = maximize("phi", {"A": a, "L": L, "H": h})
        target = trace_exp_functional(a, L, h)
        ok &= result.converged
        ok &= abs(result.value - target) <= 1e-6 * abs(target)
        x_star = matrix_exp(HermitianMatrix(L.mat + h.conj().T @ matrix_log(a).mat @ h))
        ok &= np.linalg.norm(result.argmax.mat - x_star.mat, "fro") <= 1e-5
    status(6, "max of phi objective equals Tr exp(L + H* log(A) H)", ok)


def test_07_derivative_limit():
    cfg = CheckConfig(trials=100, seed=DEFAULT_SEED,
                      dims=((1, 2, 2), (1, 3, 3), (1, 4, 4), (1, 3, 2), (1, 2, 4)))
    report = check_derivative_limit(cfg)
    status(7, "finite differences converge to the closed-form derivative", report.passed)


def test_08_homogeneity_and_its_necessity():
    dims = ((1, 2, 2), (2, 2, 2), (2, 3, 3), (3, 2, 2), (4, 2, 2))
    report = check_homogeneity(CheckConfig(trials=100, seed=DEFAULT_SEED, dims=dims))
    ce = report.extra["strict_contraction_counterexample"]
    ok = report.passed and ce is not None and ce["gap"] > 1e-3
    status(8, "positive homogeneity holds iff the tuple is isometric", ok)


def test_09_gt_route_insufficiency_witness():
    report = search_gt_route_gap(
        CheckConfig(trials=2000, seed=DEFAULT_SEED, dims=((2, 2, 2),)))
    ok = report.passed
    ok &= any(w["gap"] > 1e-6 for w in report.violations)
    ok &= all(abs(w["reverified_gap"] - w["gap"]) <= 1e-12 for w in report.violations)
    status(9, "GT-first bound can exceed the commuting-case bound", ok)


def test_10a_gradient_finite_difference_hygiene():
    rng = make_rng(DEFAULT_SEED + 2)
    ok = True
    for trial in range(100):
        d = int(rng.integers(1, 6))
        x = random_pd(d, (0.2, 3.0), rng)
        v = random_hermitian(d, 1.0, rng).mat
        if trial % 2 == 0:
            b = random_pd(d, (0.2, 3.0), rng)
            f = lambda z: gibbs_objective(z, b)
            grad = gibbs_gradient(x, b)
        else:
            m = int(rng.integers(1, 6))
            a = random_pd(m, (0.2, 3.0), rng)
            L = random_hermitian(d, 1.0, rng)
            h = strict_contraction(rng, m, d)
            f = lambda z: phi_objective(z, a, L, h)
            grad = phi_gradient(x, a, L, h)
        eps = 1e-5
        from entropylab.matrix_core import PositiveDefiniteMatrix

        fd = (f(PositiveDefiniteMatrix(x.mat + eps * v))
              - f(PositiveDefiniteMatrix(x.mat - eps * v))) / (2.0 * eps)
        analytic = float(np.trace(grad.mat @ v).real)
        ok &= abs(fd - analytic) <= 1e-5 * max(1.0, abs(analytic))
    status(10, "a: analytic gradients agree with finite differences", ok)


def test_10b_klein_nonnegativity_hygiene():
    rng = make_rng(DEFAULT_SEED + 3)
    ok = True
    for _ in range(1000):
        d = int(rng.integers(1, 7))
        a = random_pd(d, (0.05, 5.0), rng)
        b = random_pd(d, (0.05, 5.0), rng)
        ok &= relative_entropy(a, b) >= -1e-10
        ok &= abs(relative_entropy(a, a)) <= 1e-10
    status(10, "b: Klein nonnegativity with equality at A = B", ok)


def test_10c_full_determinism(tmp_path, capsys):
    codes = []
    for d in ("run1", "run2"):
        codes.append(cli_main(["check", "all", "--trials", "200", "--seed", "7",
                               "--out-dir", str(tmp_path / d)]))
    out = capsys.readouterr().out
    ok = codes == [0, 0]
    ok &= out.count(": PASS") == 16  # 8 checks per run
    files1 = sorted((tmp_path / "run1").iterdir())
    files2 = sorted((tmp_path / "run2").iterdir())
    ok &= [f.name for f in files1] == [f.name for f in files2]
    for f1, f2 in zip(files1, files2):
        ok &= f1.read_bytes() == f2.read_bytes()
    with capsys.disabled():
        print()
        status(10, "c: `check all --seed 7` run twice is byte-identical", ok)
