"""Dense complex linear algebra substrate.

Everything downstream works with three primitives defined here: frames
(orthonormal spanning sets of subspaces, possibly with respect to a
non-standard inner product), a rank with relative singular-value
tolerance, and contour quadrature of matrix-valued analytic functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NoConvergence, NonHermitianInnerProduct, SingularOnContour

__all__ = [
    "Tolerances",
    "Frame",
    "orthonormalize",
    "rank",
    "null_space_frame",
    "eig",
    "EigenGroup",
    "contour_quadrature",
]

_FRAME_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    """Numerical policy knobs used across the package.

    rank_tol   -- relative singular-value threshold for rank decisions
    cross_tol  -- distance below which an eigenvalue counts as sitting on
                  the crossing curve
    quad_nodes -- node count for contour quadrature
    """

    rank_tol: float = 1e-9
    cross_tol: float = 1e-7
    quad_nodes: int = 64

    def __post_init__(self):
        if not (self.rank_tol > 0 and self.cross_tol > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.quad_nodes < 8:
            raise ValueError("quad_nodes must be at least 8")


def _as_complex_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m[:, None]
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {m.ndim}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def check_inner_product(ip: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Validate a Hermitian positive-definite inner-product matrix."""
    ip = _as_complex_matrix(ip)
    n = ip.shape[0]
    if ip.shape != (n, n):
        raise NonHermitianInnerProduct("inner-product matrix must be square")
    scale = max(np.abs(ip).max(), 1.0)
    if np.abs(ip - ip.conj().T).max() > tol * scale:
        raise NonHermitianInnerProduct("inner-product matrix is not Hermitian")
    w = scipy.linalg.eigvalsh(ip)
    if w.min() <= tol * max(w.max(), 0.0):
        raise NonHermitianInnerProduct("inner-product matrix is not positive definite")
    return ip


def _metric_factor(ip: np.ndarray | None, n: int) -> np.ndarray | None:
    """Cholesky factor L with ip = L @ L^H; None means Euclidean metric."""
    if ip is None:
        return None
    return np.linalg.cholesky(np.asarray(ip, dtype=complex))


@dataclass(frozen=True, eq=False)
class Frame:
    """An orthonormal spanning set for a closed subspace.

    Columns of ``matrix`` are orthonormal with respect to the ambient
    inner product ``ip`` (Euclidean when ``ip`` is None).  The empty
    frame (zero columns) represents the subspace {0}.
    """

    matrix: np.ndarray
    ip: np.ndarray | None = None

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        g = self.gram() - np.eye(m.shape[1])
        if g.size and np.abs(g).max() > _FRAME_ORTHO_TOL:
            raise ValueError(
                f"frame columns not orthonormal (gram deviation {np.abs(g).max():.3e})"
            )

    @property
    def ambient_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return self.matrix.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def gram(self) -> np.ndarray:
        f = self.matrix
        if self.ip is None:
            return f.conj().T @ f
        return f.conj().T @ self.ip @ f

    def euclid_matrix(self) -> np.ndarray:
        """Columns mapped isometrically into Euclidean coordinates (L^H f)."""
        if self.ip is None:
            return self.matrix
        L = _metric_factor(self.ip, self.ambient_dim)
        return L.conj().T @ self.matrix

    def coefficients(self, vectors: np.ndarray) -> np.ndarray:
        """Metric-orthogonal coefficients of ambient vectors in this frame."""
        v = _as_complex_matrix(vectors)
        if self.ip is None:
            return self.matrix.conj().T @ v
        return self.matrix.conj().T @ self.ip @ v

    def projector(self) -> np.ndarray:
        """Matrix of the metric-orthogonal projection onto the span."""
        f = self.matrix
        if self.ip is None:
            return f @ f.conj().T
        return f @ f.conj().T @ self.ip

    @staticmethod
    def zero(ambient_dim: int, ip: np.ndarray | None = None) -> "Frame":
        return Frame(np.zeros((ambient_dim, 0), dtype=complex), ip)

    @staticmethod
    def full(ambient_dim: int, ip: np.ndarray | None = None) -> "Frame":
        return orthonormalize(np.eye(ambient_dim), ip)


def orthonormalize(
    vectors, ip: np.ndarray | None = None, tol: Tolerances | None = None
) -> Frame:
    """Orthonormalize spanning vectors in the ip-metric.

    Modified Gram-Schmidt with one reorthogonalization pass; columns whose
    residual falls below ``rank_tol`` times the largest input norm are
    dropped, so the numerical rank of the span decides the frame size.
    """
    tol = tol or Tolerances()
    v = _as_complex_matrix(vectors) if not isinstance(vectors, (list, tuple)) else None
    if v is None:
        cols = [np.asarray(c, dtype=complex).reshape(-1) for c in vectors]
        if not cols:
            raise ValueError("cannot infer ambient dimension from an empty list; "
                             "use Frame.zero instead")
        v = np.column_stack(cols)
    n, k = v.shape
    if ip is not None:
        ip = check_inner_product(ip)

    def inner(a, b):  # <a, b> in the ip-metric
        return b.conj() @ a if ip is None else b.conj() @ ip @ a

    def norm(a):
        return float(np.sqrt(max(inner(a, a).real, 0.0)))

    if k == 0:
        return Frame(np.zeros((n, 0), dtype=complex), ip)
    scale = max(norm(v[:, j]) for j in range(k))
    if scale == 0.0:
        return Frame(np.zeros((n, 0), dtype=complex), ip)
    thresh = tol.rank_tol * scale

    kept: list[np.ndarray] = []
    for j in range(k):
        w = v[:, j].copy()
        for _ in range(2):  # MGS plus one reorthogonalization sweep
            for q in kept:
                w = w - q * inner(w, q)
        nw = norm(w)
        if nw > thresh:
            kept.append(w / nw)
    if not kept:
        return Frame(np.zeros((n, 0), dtype=complex), ip)
    return Frame(np.column_stack(kept), ip)


def rank(a, rank_tol: float = 1e-9, scale: float | None = None) -> int:
    """Numerical rank with relative threshold rank_tol * sigma_max.

    ``scale`` floors the reference magnitude; pass the natural size of the
    problem when the matrix may be numerically zero (e.g. a difference of
    equal operators), where a purely relative threshold would misread
    rounding noise as full rank.
    """
    m = _as_complex_matrix(a)
    if m.size == 0:
        return 0
    s = scipy.linalg.svdvals(m)
    ref = max(s[0] if s.size else 0.0, scale or 0.0)
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * ref))


def null_space_frame(
    a, ip: np.ndarray | None = None, tol: Tolerances | None = None
) -> Frame:
    """Frame for the kernel of a matrix, orthonormal in the ip-metric."""
    tol = tol or Tolerances()
    m = _as_complex_matrix(a)
    if m.shape[0] == 0:
        return Frame.full(m.shape[1], ip)
    ns = scipy.linalg.null_space(m, rcond=tol.rank_tol)
    if ns.shape[1] == 0:
        return Frame.zero(m.shape[1], ip)
    return orthonormalize(ns, ip, tol)


@dataclass(frozen=True)
class EigenGroup:
    """One clustered eigenvalue with its generalized eigenspace."""

    value: complex
    multiplicity: int
    space: Frame


def _cluster_points(points: np.ndarray, ctol: float) -> list[np.ndarray]:
    """Group indices of nearby complex points (single-linkage, 1-d greedy)."""
    idx = np.argsort(points.real, kind="stable")
    groups: list[list[int]] = []
    for i in idx:
        placed = False
        for g in groups:
            if any(abs(points[i] - points[j]) <= ctol for j in g):
                g.append(i)
                placed = True
                break
        if not placed:
            groups.append([i])
    # merge transitively-linked groups
    merged = True
    while merged:
        merged = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if any(
                    abs(points[i] - points[j]) <= ctol
                    for i in groups[a]
                    for j in groups[b]
                ):
                    groups[a].extend(groups[b])
                    del groups[b]
                    merged = True
                    break
            if merged:
                break
    return [np.array(sorted(g)) for g in groups]


def eig(m, tol: Tolerances | None = None, cluster_tol: float | None = None) -> list[EigenGroup]:
    """Full complex eigendecomposition with generalized eigenspaces.

    Eigenvalues are clustered (relative tolerance ``cluster_tol``), and for
    each cluster the generalized eigenspace is recovered as the kernel of
    (m - lambda I)^multiplicity.  Algebraic multiplicities sum to the
    dimension and the spaces jointly span the ambient space.
    """
    tol = tol or Tolerances()
    a = _as_complex_matrix(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("eig expects a square matrix")
    if n == 0:
        return []
    try:
        w = scipy.linalg.eigvals(a)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NoConvergence(f"eigenvalue iteration failed: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise NoConvergence("eigenvalue iteration returned non-finite values")
    scale = max(1.0, float(np.abs(w).max()))
    ctol = cluster_tol if cluster_tol is not None else 1e-6 * scale

    groups = []
    for g in _cluster_points(w, ctol):
        lam = complex(w[g].mean())
        mult = len(g)
        power = a - lam * np.eye(n)
        acc = np.eye(n, dtype=complex)
        for _ in range(mult):
            acc = acc @ power
        _, sv, vh = scipy.linalg.svd(acc)
        basis = vh.conj().T[:, n - mult:]
        groups.append(EigenGroup(lam, mult, orthonormalize(basis, None, tol)))
    groups.sort(key=lambda g: (g.value.real, g.value.imag))
    return groups


def contour_quadrature(f, path, nodes: int = 64) -> np.ndarray:
    """Approximate -(1/2*pi*i) times the contour integral of ``f``.

    ``path`` supplies quadrature nodes and complex weights through
    ``path.nodes(count)``; for circles this is the periodic trapezoid rule,
    which converges geometrically for integrands analytic near the contour.
    """
    pts, wts = path.nodes(nodes)
    acc = None
    for z, wz in zip(pts, wts):
        try:
            val = np.asarray(f(complex(z)), dtype=complex)
        except Exception as exc:
            raise SingularOnContour(f"integrand failed at contour node {z}: {exc}") from exc
        if not np.all(np.isfinite(val)):
            raise SingularOnContour(f"integrand not finite at contour node {z}")
        acc = val * wz if acc is None else acc + val * wz
    if acc is None:
        raise ValueError("path produced no quadrature nodes")
    return acc * (-1.0 / (2.0j * np.pi))
