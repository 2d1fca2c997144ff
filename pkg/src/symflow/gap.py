"""Gap metric between closed subspaces and companion subspace maps.

The normative gap is the operator norm of the difference of orthogonal
projections, computed through principal angles of frames (SVD of the
cross-Gram matrix).  The sup-over-unit-sphere form is kept only as a
sampling oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import HypothesisFailed, NotContaining
from .linalg import Frame, Tolerances, orthonormalize

__all__ = [
    "GapReport",
    "directed_gap",
    "gap",
    "principal_angles",
    "intersect_subspaces",
    "sum_subspaces",
    "complement_frame",
    "quotient_gap",
    "estimate_delta_bound",
    "subspaces_equal",
    "directed_gap_sampled",
]


@dataclass(frozen=True)
class GapReport:
    delta_mn: float
    delta_nm: float
    gap: float


def _check_compatible(m: Frame, n: Frame):
    if m.ambient_dim != n.ambient_dim:
        raise ValueError("frames live in different ambient dimensions")
    a = np.eye(m.ambient_dim) if m.ip is None else m.ip
    b = np.eye(n.ambient_dim) if n.ip is None else n.ip
    if not np.allclose(a, b, rtol=0, atol=1e-12):
        raise ValueError("frames carry different ambient inner products")


def principal_angles(m: Frame, n: Frame) -> np.ndarray:
    """Principal angles (ascending) between two subspaces."""
    _check_compatible(m, n)
    if m.is_zero or n.is_zero:
        return np.zeros(0)
    c = n.euclid_matrix().conj().T @ m.euclid_matrix()
    s = np.clip(scipy.linalg.svdvals(c), 0.0, 1.0)
    return np.arccos(s)  # svdvals descend, so angles ascend


def directed_gap(m: Frame, n: Frame) -> float:
    """delta(M, N): how far M sticks out of N (0 when M is a subset).

    Computed as the operator norm of (I - P_N) restricted to M, which is
    accurate near 0 where the sqrt(1 - cos^2) route loses half the digits.
    """
    _check_compatible(m, n)
    if m.is_zero:
        return 0.0
    if n.is_zero:
        return 1.0
    me, ne = m.euclid_matrix(), n.euclid_matrix()
    resid = me - ne @ (ne.conj().T @ me)
    return float(min(1.0, scipy.linalg.svdvals(resid)[0]))


def gap(m: Frame, n: Frame) -> GapReport:
    d1 = directed_gap(m, n)
    d2 = directed_gap(n, m)
    return GapReport(d1, d2, max(d1, d2))


def subspaces_equal(m: Frame, n: Frame, tol: float = 1e-9) -> bool:
    return gap(m, n).gap < tol


def directed_gap_sampled(m: Frame, n: Frame, rng, trials: int = 400) -> float:
    """Sampling approximation of sup_{x in M, |x|=1} dist(x, N).

    Test oracle only; underestimates the true supremum.
    """
    _check_compatible(m, n)
    if m.is_zero:
        return 0.0
    if n.is_zero:
        return 1.0
    me, ne = m.euclid_matrix(), n.euclid_matrix()
    best = 0.0
    for _ in range(trials):
        c = rng.standard_normal(m.rank) + 1j * rng.standard_normal(m.rank)
        x = me @ c
        x = x / np.linalg.norm(x)
        r = x - ne @ (ne.conj().T @ x)
        best = max(best, float(np.linalg.norm(r)))
    return best


def intersect_subspaces(m: Frame, n: Frame, tol: Tolerances | None = None) -> Frame:
    """M intersect N, via the kernel of (I - P_N) P_M on ran P_M."""
    tol = tol or Tolerances()
    _check_compatible(m, n)
    if m.is_zero or n.is_zero:
        return Frame.zero(m.ambient_dim, m.ip)
    me, ne = m.euclid_matrix(), n.euclid_matrix()
    b = me - ne @ (ne.conj().T @ me)
    u, s, vh = scipy.linalg.svd(b, full_matrices=False)
    keep = s <= tol.rank_tol  # sines of principal angles that vanish
    if not np.any(keep):
        return Frame.zero(m.ambient_dim, m.ip)
    coeff = vh.conj().T[:, keep]
    return orthonormalize(m.matrix @ coeff, m.ip, tol)


def sum_subspaces(m: Frame, n: Frame, tol: Tolerances | None = None) -> Frame:
    tol = tol or Tolerances()
    _check_compatible(m, n)
    return orthonormalize(np.hstack([m.matrix, n.matrix]), m.ip, tol)


def complement_frame(y: Frame, tol: Tolerances | None = None) -> Frame:
    """Metric-orthogonal complement of a subspace."""
    tol = tol or Tolerances()
    ye = y.euclid_matrix()
    full = np.eye(y.ambient_dim, dtype=complex)
    resid = full - ye @ (ye.conj().T @ full) if not y.is_zero else full
    if y.ip is None:
        return orthonormalize(resid, None, tol)
    # map Euclidean directions back to ambient coordinates
    L = np.linalg.cholesky(np.asarray(y.ip, dtype=complex))
    back = scipy.linalg.solve_triangular(L.conj().T, resid, lower=False)
    return orthonormalize(back, y.ip, tol)


def quotient_gap(y: Frame, m: Frame, n: Frame, tol: Tolerances | None = None) -> float:
    """Gap between M mod Y and N mod Y, computed inside the complement of Y.

    Requires Y to be contained in both M and N; the value agrees with
    gap(M, N) because quotienting by a common subspace is an isometry.
    """
    tol = tol or Tolerances()
    for name, big in (("M", m), ("N", n)):
        if directed_gap(y, big) > 1e-8:
            raise NotContaining(f"Y is not contained in {name}")
    if y.is_zero:
        return gap(m, n).gap

    ye = y.euclid_matrix()

    def reduce(f: Frame) -> Frame:
        fe = f.euclid_matrix()
        resid = fe - ye @ (ye.conj().T @ fe)
        return orthonormalize(resid, None, tol)

    return gap(reduce(m), reduce(n)).gap


def estimate_delta_bound(m: Frame, n: Frame) -> tuple[float, float, bool]:
    """Check the uniform estimate of delta(M,N) by delta(N,M) in equal dims.

    Requires dim M = dim N = n and delta(N, M) < 1/sqrt(n); returns
    (lhs, rhs, holds) for lhs = delta(M, N) and the bound
    rhs = sqrt(n) d / (1 - sqrt(n) d) with d = delta(N, M).
    """
    _check_compatible(m, n)
    if m.rank != n.rank:
        raise HypothesisFailed("subspaces must have equal dimension")
    nn = m.rank
    if nn == 0:
        return 0.0, 0.0, True
    d = directed_gap(n, m)
    root = np.sqrt(nn)
    if d >= 1.0 / root:
        raise HypothesisFailed(
            f"delta(N,M)={d:.6f} is not below 1/sqrt(n)={1.0 / root:.6f}"
        )
    lhs = directed_gap(m, n)
    rhs = root * d / (1.0 - root * d)
    return lhs, rhs, lhs <= rhs + 1e-12
