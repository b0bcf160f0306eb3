"""Scalar trace functionals of Hermitian and positive definite matrices.

The central objects are the relative quantum entropy

    S(A|B) = Tr(A log A - A log B - A + B),

its reduction by a contraction H,

    S_H(A|B) = Tr(A log A - H* A H log B - A + B),

the trace-exponential functionals

    phi(A) = Tr exp(L + H* log(A) H),
    phi(A_1..A_k) = Tr exp(L + sum_i H_i* log(A_i) H_i),

and the Gibbs-type variational objectives whose maxima recover them.

Every functional returns the real part of an exactly computed trace after
checking that the imaginary part is at round-off level; a larger imaginary
part raises NumericalInconsistency instead of being silently discarded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotAContraction, NumericalInconsistency
from .matrix_core import (
    CONTRACTION_TOL,
    ContractionTuple,
    HermitianMatrix,
    PositiveDefiniteMatrix,
    as_complex_matrix,
    matrix_exp,
    matrix_log,
    matrix_power,
    operator_norm,
    spectral_decompose,
)

IMAG_TOL = 1e-10


def _real_trace(value: complex) -> float:
    """Real part of a trace, guarded against a non-negligible imaginary part."""
    value = complex(value)
    if abs(value.imag) > IMAG_TOL * (1.0 + abs(value.real)):
        raise NumericalInconsistency(
            f"trace should be real but has imaginary part {value.imag:.3e} "
            f"(real part {value.real:.6g})"
        )
    return value.real


def _require_contraction(h: np.ndarray, what: str = "H") -> None:
    norm = operator_norm(h)
    if norm > 1.0 + CONTRACTION_TOL:
        raise NotAContraction(f"{what} has operator norm {norm:.12f} > 1")


def _contraction_arg(H, rows: int, cols: int, what: str = "H") -> np.ndarray:
    h = as_complex_matrix(H, name=what)
    if h.shape != (rows, cols):
        raise DimensionError(f"{what} must have shape {(rows, cols)}, got {h.shape}")
    _require_contraction(h, what)
    return h


def _trace_exp(arg: np.ndarray) -> float:
    """Tr exp of a Hermitian matrix via its (real) eigenvalue sum."""
    dec = spectral_decompose(HermitianMatrix(arg))
    return float(np.exp(dec.eigenvalues).sum())


def reduced_relative_entropy(A: PositiveDefiniteMatrix, B: PositiveDefiniteMatrix,
                             H) -> float:
    """Reduced relative entropy Tr(A log A - H* A H log B - A + B).

    ``H`` is a contraction mapping the space of B into the space of A, i.e.
    of shape (dim A, dim B); for H = I this is the relative quantum entropy.
    """
    h = _contraction_arg(H, A.dim, B.dim)
    log_a = matrix_log(A).mat
    log_b = matrix_log(B).mat
    t = (np.trace(A.mat @ log_a)
         - np.trace(h.conj().T @ A.mat @ h @ log_b)
         - np.trace(A.mat) + np.trace(B.mat))
    return _real_trace(t)


def relative_entropy(A: PositiveDefiniteMatrix, B: PositiveDefiniteMatrix) -> float:
    """Relative quantum entropy S(A|B); nonnegative, zero exactly at A = B."""
    if A.dim != B.dim:
        raise DimensionError(f"A and B must have equal dimension, got {A.dim} and {B.dim}")
    return reduced_relative_entropy(A, B, np.eye(A.dim))


def lieb_trace(A: PositiveDefiniteMatrix, B: PositiveDefiniteMatrix, H,
               p: float) -> float:
    """Tr(H B^p H* A^(1-p)) for p in [0, 1]; jointly concave in (A, B)."""
    h = as_complex_matrix(H, name="H")
    if h.shape != (A.dim, B.dim):
        raise DimensionError(f"H must have shape {(A.dim, B.dim)}, got {h.shape}")
    b_p = matrix_power(B, p).mat
    a_1p = matrix_power(A, 1.0 - p).mat
    return _real_trace(np.trace(h @ b_p @ h.conj().T @ a_1p))


def lieb_trace_derivative_at_zero(A: PositiveDefiniteMatrix,
                                  B: PositiveDefiniteMatrix, H) -> float:
    """d/dp Tr(H B^p H* A^(1-p)) at p = 0, in closed form:
    Tr(H log(B) H* A - H H* A log A)."""
    h = as_complex_matrix(H, name="H")
    if h.shape != (A.dim, B.dim):
        raise DimensionError(f"H must have shape {(A.dim, B.dim)}, got {h.shape}")
    log_a = matrix_log(A).mat
    log_b = matrix_log(B).mat
    t = np.trace(h @ log_b @ h.conj().T @ A.mat) - np.trace(h @ h.conj().T @ A.mat @ log_a)
    return _real_trace(t)


def trace_exp_functional(A: PositiveDefiniteMatrix, L: HermitianMatrix, H) -> float:
    """phi(A) = Tr exp(L + H* log(A) H), concave on the PD cone.

    A is m x m, L is n x n, and the contraction H maps n-space into the
    space of A (shape m x n).
    """
    h = _contraction_arg(H, A.dim, L.dim)
    arg = L.mat + h.conj().T @ matrix_log(A).mat @ h
    return _trace_exp(arg)


@dataclass(frozen=True)
class MultiInstance:
    """Argument tuple (L, H_1..H_k, A_1..A_k or B_1..B_k) for the k-variable
    trace functionals.  Exactly one of ``a_list`` / ``b_list`` is present:
    positive definite matrices enter through their logarithm, self-adjoint
    ones directly (the Golden-Thompson / Jensen family)."""

    L: HermitianMatrix
    H: ContractionTuple
    a_list: tuple[PositiveDefiniteMatrix, ...] | None = None
    b_list: tuple[HermitianMatrix, ...] | None = None

    def __post_init__(self):
        if (self.a_list is None) == (self.b_list is None):
            raise DimensionError("exactly one of a_list and b_list must be given")
        if self.a_list is not None:
            object.__setattr__(self, "a_list", tuple(self.a_list))
            mats = self.a_list
            if not all(isinstance(a, PositiveDefiniteMatrix) for a in mats):
                raise DimensionError("a_list entries must be PositiveDefiniteMatrix")
        else:
            object.__setattr__(self, "b_list", tuple(self.b_list))
            mats = self.b_list
            if not all(isinstance(b, HermitianMatrix) for b in mats):
                raise DimensionError("b_list entries must be HermitianMatrix")
        if len(mats) != self.H.k:
            raise DimensionError(f"expected {self.H.k} matrices, got {len(mats)}")
        if self.L.dim != self.H.n:
            raise DimensionError(f"L has dim {self.L.dim}, blocks map from dim {self.H.n}")
        for i, mat in enumerate(mats):
            if mat.dim != self.H.m:
                raise DimensionError(f"matrix {i} has dim {mat.dim}, blocks act on dim {self.H.m}")

    @property
    def k(self) -> int:
        return self.H.k


def _conjugated_sum(L: HermitianMatrix, H: ContractionTuple,
                    middles: list[np.ndarray]) -> np.ndarray:
    arg = L.mat.astype(np.complex128, copy=True)
    for h, mid in zip(H.blocks, middles):
        arg += h.conj().T @ mid @ h
    return arg


def multi_trace_exp(inst: MultiInstance) -> float:
    """phi(A_1..A_k) = Tr exp(L + sum_i H_i* log(A_i) H_i)."""
    if inst.a_list is None:
        raise DimensionError("multi_trace_exp needs an instance with a_list")
    arg = _conjugated_sum(inst.L, inst.H, [matrix_log(a).mat for a in inst.a_list])
    return _trace_exp(arg)


def gt_jensen_lhs(inst: MultiInstance) -> float:
    """Tr exp(L + sum_i H_i* B_i H_i), the left side of the interpolation
    inequality between the Golden-Thompson and Jensen trace bounds."""
    if inst.b_list is None:
        raise DimensionError("gt_jensen_lhs needs an instance with b_list")
    arg = _conjugated_sum(inst.L, inst.H, [b.mat for b in inst.b_list])
    return _trace_exp(arg)


def gt_jensen_rhs(inst: MultiInstance) -> float:
    """Tr(exp(L) sum_i H_i* exp(B_i) H_i), the commuting-case bound."""
    if inst.b_list is None:
        raise DimensionError("gt_jensen_rhs needs an instance with b_list")
    exp_l = matrix_exp(inst.L).mat
    total = np.zeros((inst.H.n, inst.H.n), dtype=np.complex128)
    for h, b in zip(inst.H.blocks, inst.b_list):
        total += h.conj().T @ matrix_exp(b).mat @ h
    return _real_trace(np.trace(exp_l @ total))


@dataclass(frozen=True)
class BlockLift:
    """Single-variable embedding of a k-tuple instance.

    ``a_hat`` is the km x km block diagonal of the A_i, ``l_hat`` the kn x kn
    matrix with L in the leading block, and ``h_hat`` the km x kn contraction
    with the H_i stacked down the first block column.  The defining identity
    is Tr exp(l_hat + h_hat* log(a_hat) h_hat) = phi(A_1..A_k) + (k-1) n.
    """

    a_hat: PositiveDefiniteMatrix
    l_hat: HermitianMatrix
    h_hat: np.ndarray

    def lifted_value(self) -> float:
        return trace_exp_functional(self.a_hat, self.l_hat, self.h_hat)


def block_lift(inst: MultiInstance) -> BlockLift:
    """Embed a k-tuple instance into block matrices, zero-padded so that the
    k-variable functional reduces to the single-variable one."""
    if inst.a_list is None:
        raise DimensionError("block_lift needs an instance with a_list")
    k, m, n = inst.H.k, inst.H.m, inst.H.n
    a_hat = np.zeros((k * m, k * m), dtype=np.complex128)
    for i, a in enumerate(inst.a_list):
        a_hat[i * m:(i + 1) * m, i * m:(i + 1) * m] = a.mat
    l_hat = np.zeros((k * n, k * n), dtype=np.complex128)
    l_hat[:n, :n] = inst.L.mat
    h_hat = np.zeros((k * m, k * n), dtype=np.complex128)
    for i, h in enumerate(inst.H.blocks):
        h_hat[i * m:(i + 1) * m, :n] = h
    return BlockLift(
        a_hat=PositiveDefiniteMatrix(a_hat),
        l_hat=HermitianMatrix(l_hat),
        h_hat=h_hat,
    )


def gibbs_objective(X: PositiveDefiniteMatrix, B: PositiveDefiniteMatrix) -> float:
    """Tr(X log B - X log X + X); maximized over X > 0 at X = B with value Tr B."""
    if X.dim != B.dim:
        raise DimensionError(f"X and B must have equal dimension, got {X.dim} and {B.dim}")
    log_b = matrix_log(B).mat
    log_x = matrix_log(X).mat
    t = np.trace(X.mat @ log_b) - np.trace(X.mat @ log_x) + np.trace(X.mat)
    return _real_trace(t)


def phi_objective(X: PositiveDefiniteMatrix, A: PositiveDefiniteMatrix,
                  L: HermitianMatrix, H) -> float:
    """-S_{H*}(X|A) + Tr(X L + A), the variational objective whose maximum
    over X > 0 equals Tr exp(L + H* log(A) H).

    ``H`` is the contraction of :func:`trace_exp_functional`; its adjoint is
    applied inside the reduced relative entropy, so X lives in n-space and A
    in m-space.
    """
    h = _contraction_arg(H, A.dim, L.dim)
    if X.dim != L.dim:
        raise DimensionError(f"X must have the dimension of L ({L.dim}), got {X.dim}")
    value = -reduced_relative_entropy(X, A, h.conj().T)
    value += _real_trace(np.trace(X.mat @ L.mat))
    value += _real_trace(np.trace(A.mat))
    return value
