"""Concavity of the trace exponential functionals and the block-lift trick.

phi(A) = Tr exp(L + H* log(A) H) is concave on the positive definite cone
for any self-adjoint L and contraction H.  The k-variable version

    phi(A_1..A_k) = Tr exp(L + sum_i H_i* log(A_i) H_i)

reduces to the single-variable one by embedding everything into block
matrices: the lifted value exceeds the direct one by exactly (k-1) * n,
the trace of the identity blocks that exp turns on.
"""

import numpy as np

from entropylab import (
    ContractionTuple,
    HermitianMatrix,
    MultiInstance,
    PositiveDefiniteMatrix,
    block_lift,
    multi_trace_exp,
    random_contraction_tuple,
    random_hermitian,
    random_pd,
    trace_exp_functional,
)

rng = np.random.default_rng(7)

# Single variable: chord below the curve.
m, n = 3, 2
A1 = random_pd(m, (0.2, 4.0), rng)
A2 = random_pd(m, (0.2, 4.0), rng)
L = random_hermitian(n, 1.0, rng)
g = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
H = 0.9 * g / np.linalg.norm(g, 2)

p1, p2 = trace_exp_functional(A1, L, H), trace_exp_functional(A2, L, H)
print("lam    phi(mid)   chord      phi(mid) - chord")
for lam in (0.2, 0.5, 0.8):
    mid = PositiveDefiniteMatrix(lam * A1.mat + (1 - lam) * A2.mat)
    p_mid = trace_exp_functional(mid, L, H)
    chord = lam * p1 + (1 - lam) * p2
    print(f"{lam:.1f}    {p_mid:9.6f}  {chord:9.6f}  {p_mid - chord:12.3e}")

# k variables through the block lift.
k, m, n = 3, 2, 2
tup = random_contraction_tuple(k, m, n, True, rng)
L = random_hermitian(n, 1.0, rng)
inst = MultiInstance(L=L, H=tup,
                     a_list=[random_pd(m, (0.2, 4.0), rng) for _ in range(k)])
direct = multi_trace_exp(inst)
lift = block_lift(inst)
lifted = lift.lifted_value()
print(f"\nk = {k}, block sizes {lift.a_hat.dim} x {lift.a_hat.dim}")
print(f"direct k-variable value : {direct:.12f}")
print(f"lifted single-variable  : {lifted:.12f}")
print(f"lifted - direct         : {lifted - direct:.12f}   (expected (k-1)n = {(k - 1) * n})")

# The scalar sanity case: L = 0, H_i = 1/sqrt(2), A = (4, 9) gives the
# geometric mean exp((log 4 + log 9)/2) = 6, lifting to 6 + 1.
h = 1.0 / np.sqrt(2.0)
scalar_inst = MultiInstance(
    L=HermitianMatrix([[0.0]]),
    H=ContractionTuple([np.array([[h]]), np.array([[h]])], sum_is_identity=True),
    a_list=[PositiveDefiniteMatrix([[4.0]]), PositiveDefiniteMatrix([[9.0]])])
print(f"\nscalar check: phi = {multi_trace_exp(scalar_inst):.12f} (6 expected), "
      f"lifted = {block_lift(scalar_inst).lifted_value():.12f} (7 expected)")
