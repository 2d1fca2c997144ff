"""The gap metric between subspaces and its uniform estimate.

Shows the projector-difference formula, the asymmetric directed gaps with
their {0} conventions, quotient isometry, and the uniform bound relating
the two directed gaps for subspaces of equal dimension.
"""

import numpy as np

from symflow import (
    Frame,
    estimate_delta_bound,
    gap,
    orthonormalize,
    principal_angles,
    quotient_gap,
)

e = np.eye(3, dtype=complex)

print("== two lines in C^2 ==")
m = orthonormalize(np.array([[1.0], [0.0]]))
n = orthonormalize(np.array([[1.0], [1.0]]))
rep = gap(m, n)
print(f"delta(M,N) = {rep.delta_mn:.6f}, delta(N,M) = {rep.delta_nm:.6f}, "
      f"gap = {rep.gap:.6f}  (expected sqrt(2)/2 = {np.sqrt(2) / 2:.6f})")
print("principal angle:", principal_angles(m, n))

print("\n== the zero-subspace conventions ==")
z = Frame.zero(2)
rep = gap(m, z)
print(f"delta(M,0) = {rep.delta_mn}, delta(0,M) = {rep.delta_nm}")

print("\n== quotient isometry ==")
y = orthonormalize(e[:, [0]])
big_m = orthonormalize(e[:, [0, 1]])
big_n = orthonormalize(np.column_stack([e[:, 0], (e[:, 1] + e[:, 2]) / np.sqrt(2)]))
print(f"gap(M, N)        = {gap(big_m, big_n).gap:.10f}")
print(f"gap(M/Y, N/Y)    = {quotient_gap(y, big_m, big_n):.10f}")

print("\n== the uniform estimate for equal dimensions ==")
t = 0.1
m = orthonormalize(np.array([[1.0], [0.0]]))
n = orthonormalize(np.array([[np.cos(t)], [np.sin(t)]]))
lhs, rhs, holds = estimate_delta_bound(m, n)
print(f"delta(M,N) = {lhs:.6f} <= sqrt(n) d / (1 - sqrt(n) d) = {rhs:.6f}: {holds}")
