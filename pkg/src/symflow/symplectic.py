"""Symplectic forms on complex inner-product spaces and their splittings.

Conventions.  The ambient inner product is <x, y> = y* ip x and the form
is omega(x, y) = y* Omega x, linear in x and conjugate-linear in y.  Skew
symmetry omega(y, x) = -conj(omega(x, y)) makes Omega skew-Hermitian, and
the induced operator J = ip^{-1} Omega satisfies omega(x, y) = <Jx, y>
and is skew-self-adjoint for the ambient metric.  A splitting carries two
bases per component: an ip-orthonormal frame (for subspace identity) and
a basis orthonormal for the definite form h^{+-} = -+ i omega, in which
generating operators of isotropic subspaces become isometries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BadInnerProduct, Degenerate, InvalidSplitting, NotSkew
from .gap import directed_gap, intersect_subspaces
from .linalg import Frame, Tolerances, check_inner_product, null_space_frame, orthonormalize

__all__ = [
    "SymplecticSpace",
    "Splitting",
    "HForm",
    "make_space",
    "make_space_from_j",
    "compute_splitting",
    "splitting_from_frames",
    "splitting_from_metric",
    "annihilator",
    "classify",
    "normalize_strong",
    "SYMPLECTIC",
    "ISOTROPIC",
    "COISOTROPIC",
    "LAGRANGIAN",
    "NONE",
]

SYMPLECTIC = "symplectic"
ISOTROPIC = "isotropic"
COISOTROPIC = "coisotropic"
LAGRANGIAN = "lagrangian"
NONE = "none"


@dataclass(frozen=True, eq=False)
class SymplecticSpace:
    """A finite-dimensional complex symplectic inner-product space."""

    dim: int
    ip: np.ndarray
    omega: np.ndarray
    j: np.ndarray
    cond_j: float  # conditioning of J in the ambient metric (weakness proxy)

    def form(self, x: np.ndarray, y: np.ndarray) -> complex:
        return complex(np.asarray(y).conj() @ self.omega @ np.asarray(x))

    def form_gram(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Matrix of omega(f_j, g_i) over column sets f, g."""
        return g.conj().T @ self.omega @ f

    def frame(self, vectors, tol: Tolerances | None = None) -> Frame:
        return orthonormalize(vectors, self.ip, tol)

    def zero_frame(self) -> Frame:
        return Frame.zero(self.dim, self.ip)

    def full_frame(self) -> Frame:
        return Frame.full(self.dim, self.ip)


def make_space(ip, omega, tol: Tolerances | None = None) -> SymplecticSpace:
    """Validate (ip, Omega) and build the space; errors name the failed axiom."""
    tol = tol or Tolerances()
    try:
        ip = check_inner_product(np.asarray(ip, dtype=complex))
    except Exception as exc:
        raise BadInnerProduct(str(exc)) from exc
    omega = np.asarray(omega, dtype=complex)
    n = ip.shape[0]
    if omega.shape != (n, n):
        raise NotSkew("form matrix has wrong shape")
    scale = max(np.abs(omega).max(), 1.0)
    if np.abs(omega + omega.conj().T).max() > 1e-10 * scale:
        raise NotSkew("omega(y,x) != -conj(omega(x,y)); form matrix not skew-Hermitian")
    L = np.linalg.cholesky(ip)
    j_metric = scipy.linalg.solve_triangular(
        L, scipy.linalg.solve_triangular(L, omega, lower=True).conj().T, lower=True
    ).conj().T
    s = scipy.linalg.svdvals(j_metric)
    if s.size == 0 or s[0] == 0.0 or s[-1] <= tol.rank_tol * s[0]:
        raise Degenerate("induced J is not injective (form degenerate)")
    j = np.linalg.solve(ip, omega)
    return SymplecticSpace(n, ip, omega, j, float(s[0] / s[-1]))


def make_space_from_j(ip, j, tol: Tolerances | None = None) -> SymplecticSpace:
    ip = np.asarray(ip, dtype=complex)
    return make_space(ip, ip @ np.asarray(j, dtype=complex), tol)


@dataclass(frozen=True, eq=False)
class HForm:
    """The definite inner product h^{+-} = -+ i omega on one component."""

    space: SymplecticSpace
    sign: int  # +1 for the plus component, -1 for the minus component

    def gram(self, f: np.ndarray) -> np.ndarray:
        return -1j * self.sign * self.space.form_gram(f, f)

    def value(self, x, y) -> complex:
        return -1j * self.sign * self.space.form(x, y)


@dataclass(frozen=True, eq=False)
class Splitting:
    """A symplectic splitting X = X+ (+) X- with cached bases.

    ``plus``/``minus`` are ip-orthonormal frames; ``plus_h``/``minus_h``
    are bases of the same subspaces orthonormal for h+ and h-, and
    ``proj_plus`` is the (generally oblique) projection onto X+ along X-.
    """

    space: SymplecticSpace
    plus: Frame
    minus: Frame
    plus_h: np.ndarray
    minus_h: np.ndarray
    proj_plus: np.ndarray

    @property
    def dim_plus(self) -> int:
        return self.plus_h.shape[1]

    @property
    def dim_minus(self) -> int:
        return self.minus_h.shape[1]

    def basis(self) -> np.ndarray:
        return np.hstack([self.plus_h, self.minus_h])

    def coordinates(self, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Split ambient columns into (plus, minus) h-basis coefficients."""
        c = np.linalg.solve(self.basis(), np.asarray(vectors, dtype=complex))
        return c[: self.dim_plus], c[self.dim_plus:]


def _finish_splitting(space: SymplecticSpace, plus_h, minus_h, tol) -> Splitting:
    n = space.dim
    w = np.hstack([plus_h, minus_h])
    if w.shape[1] != n:
        raise InvalidSplitting(
            f"components of dimensions {plus_h.shape[1]}+{minus_h.shape[1]} do not sum to {n}"
        )
    if np.linalg.matrix_rank(w) < n:
        raise InvalidSplitting("components are not transversal")
    p = plus_h.shape[1]
    sel = np.zeros((n, n), dtype=complex)
    sel[:p, :p] = np.eye(p)
    proj = w @ sel @ np.linalg.inv(w)
    plus = orthonormalize(plus_h, space.ip, tol) if p else space.zero_frame()
    minus = orthonormalize(minus_h, space.ip, tol) if n - p else space.zero_frame()
    return Splitting(space, plus, minus, plus_h, minus_h, proj)


def compute_splitting(space: SymplecticSpace, tol: Tolerances | None = None) -> Splitting:
    """Canonical splitting from the spectral decomposition of -iJ.

    -i Omega is Hermitian, so the generalized eigenproblem
    -i Omega v = w ip v has real eigenvalues; positive/negative
    eigenvectors span X+/X-, rescaled to be h-orthonormal.
    """
    tol = tol or Tolerances()
    herm = -1j * space.omega
    herm = (herm + herm.conj().T) / 2.0
    w, v = scipy.linalg.eigh(herm, space.ip)
    amax = float(np.abs(w).max()) if w.size else 0.0
    if amax == 0.0 or np.abs(w).min() <= tol.rank_tol * amax:
        raise Degenerate("-iJ has a numerically zero eigenvalue")
    pos, neg = w > 0, w < 0
    plus_h = v[:, pos] / np.sqrt(w[pos])
    minus_h = v[:, neg] / np.sqrt(-w[neg])
    return _finish_splitting(space, plus_h, minus_h, tol)


def splitting_from_frames(
    space: SymplecticSpace, plus_vectors, minus_vectors, tol: Tolerances | None = None
) -> Splitting:
    """Validate user-supplied components and assemble the splitting.

    Each component must be definite for -i omega (positive on the plus
    part, negative on the minus part) and the two must be omega-orthogonal
    and transversal.
    """
    tol = tol or Tolerances()
    p = np.asarray(plus_vectors, dtype=complex).reshape(space.dim, -1)
    q = np.asarray(minus_vectors, dtype=complex).reshape(space.dim, -1)
    kp = -1j * space.form_gram(p, p)
    kq = 1j * space.form_gram(q, q)
    for name, k in (("plus", kp), ("minus", kq)):
        k_h = (k + k.conj().T) / 2.0
        if k.size and (np.abs(k - k.conj().T).max() > 1e-9 * max(1.0, np.abs(k).max())
                       or scipy.linalg.eigvalsh(k_h).min() <= 0.0):
            raise InvalidSplitting(f"-i omega is not definite of the right sign on the {name} part")
    cross = space.form_gram(p, q)
    if cross.size and np.abs(cross).max() > 1e-9 * max(1.0, np.abs(space.omega).max()):
        raise InvalidSplitting("components are not omega-orthogonal")

    def h_orthonormalize(cols, k):
        if cols.shape[1] == 0:
            return cols
        chol = np.linalg.cholesky((k + k.conj().T) / 2.0)
        return cols @ np.linalg.inv(chol.conj().T)

    return _finish_splitting(space, h_orthonormalize(p, kp), h_orthonormalize(q, kq), tol)


def splitting_from_metric(
    space: SymplecticSpace, metric, tol: Tolerances | None = None
) -> Splitting:
    """Canonical splitting computed with respect to an alternate metric.

    Useful for exercising splitting independence: the eigenspaces of the
    operator induced by (metric, Omega) still satisfy the splitting axioms
    for the original space.
    """
    tol = tol or Tolerances()
    metric = check_inner_product(np.asarray(metric, dtype=complex))
    herm = -1j * space.omega
    herm = (herm + herm.conj().T) / 2.0
    w, v = scipy.linalg.eigh(herm, metric)
    amax = float(np.abs(w).max()) if w.size else 0.0
    if amax == 0.0 or np.abs(w).min() <= tol.rank_tol * amax:
        raise Degenerate("-iJ has a numerically zero eigenvalue in the alternate metric")
    return splitting_from_frames(space, v[:, w > 0], v[:, w < 0], tol)


def annihilator(space: SymplecticSpace, lam: Frame, tol: Tolerances | None = None) -> Frame:
    """The omega-annihilator {y : omega(x, y) = 0 for all x in lam}."""
    tol = tol or Tolerances()
    if lam.ambient_dim != space.dim:
        raise ValueError("frame does not match the space dimension")
    if lam.is_zero:
        return space.full_frame()
    a = (space.omega @ lam.matrix).conj().T
    return null_space_frame(a, space.ip, tol)


def classify(space: SymplecticSpace, lam: Frame, tol: Tolerances | None = None) -> str:
    """Sort a subspace into symplectic/isotropic/coisotropic/lagrangian/none."""
    tol = tol or Tolerances()
    ann = annihilator(space, lam, tol)
    lam_inside = directed_gap(lam, ann) < tol.rank_tol if not lam.is_zero else True
    ann_inside = directed_gap(ann, lam) < tol.rank_tol if not ann.is_zero else True
    if lam_inside and ann_inside:
        return LAGRANGIAN
    if lam_inside:
        return ISOTROPIC
    if ann_inside:
        return COISOTROPIC
    if intersect_subspaces(lam, ann, tol).rank == 0:
        return SYMPLECTIC
    return NONE


def normalize_strong(space: SymplecticSpace, tol: Tolerances | None = None) -> SymplecticSpace:
    """Deform the metric so that the induced J squares to -I.

    The new inner product is <x, y>' = <Sx, y> with S the metric square
    root of J*J = -J^2; the form is unchanged, so annihilators and
    classifications are preserved exactly.
    """
    tol = tol or Tolerances()
    t = -space.j @ space.j
    b = space.ip @ t
    b = (b + b.conj().T) / 2.0
    w, v = scipy.linalg.eigh(b, space.ip)
    wmax = float(np.abs(w).max()) if w.size else 0.0
    if wmax == 0.0 or w.min() <= tol.rank_tol * wmax:
        raise Degenerate("J*J is singular; cannot normalize")
    s = v @ np.diag(np.sqrt(w)) @ v.conj().T @ space.ip
    ip2 = space.ip @ s
    ip2 = (ip2 + ip2.conj().T) / 2.0
    return make_space(ip2, space.omega, tol)
