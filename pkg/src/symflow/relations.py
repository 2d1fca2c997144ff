"""Closed linear relations in X x X stored as column pairs (matrix pencils).

A relation is the subspace {(Ec, Fc)} with [E; F] column-orthonormal.
Operators embed as graphs (E = I), the inverse swaps the two blocks, and
spectra/resolvents/spectral projections come from the pencil F - zeta E.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .contours import BoxWindow, DiskWindow
from .errors import SingularOnContour, SpectralPoint
from .linalg import Frame, Tolerances, contour_quadrature, orthonormalize, rank

__all__ = [
    "PencilRelation",
    "SpectrumDescription",
    "relation_sum",
    "relation_compose",
    "relation_inverse",
    "relation_spectrum",
    "resolvent",
    "spectral_projection",
    "spectral_projector_eig",
    "relation_fredholm",
]


@dataclass(frozen=True, eq=False)
class PencilRelation:
    """The relation {(Ec, Fc) : c in C^d} inside C^n x C^n."""

    e: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.e, dtype=complex)
        f = np.asarray(self.f, dtype=complex)
        if e.ndim == 1:
            e = e[:, None]
        if f.ndim == 1:
            f = f[:, None]
        if e.shape != f.shape:
            raise ValueError("E and F must have identical shapes")
        stacked = orthonormalize(np.vstack([e, f]))
        n = e.shape[0]
        object.__setattr__(self, "e", stacked.matrix[:n])
        object.__setattr__(self, "f", stacked.matrix[n:])

    @property
    def ambient_dim(self) -> int:
        return self.e.shape[0]

    @property
    def coord_dim(self) -> int:
        return self.e.shape[1]

    @staticmethod
    def from_operator(a) -> "PencilRelation":
        a = np.asarray(a, dtype=complex)
        return PencilRelation(np.eye(a.shape[0]), a)

    def subspace_frame(self) -> Frame:
        return Frame(np.vstack([self.e, self.f]))

    def domain(self, tol: Tolerances | None = None) -> Frame:
        return orthonormalize(self.e, None, tol)

    def range(self, tol: Tolerances | None = None) -> Frame:
        return orthonormalize(self.f, None, tol)

    def kernel(self, tol: Tolerances | None = None) -> Frame:
        tol = tol or Tolerances()
        ns = scipy.linalg.null_space(self.f, rcond=tol.rank_tol)
        return orthonormalize(self.e @ ns, None, tol) if ns.size else Frame.zero(self.ambient_dim)

    def indeterminant_part(self, tol: Tolerances | None = None) -> Frame:
        """A(0) = {y : (0, y) in A}, the multi-valued directions."""
        tol = tol or Tolerances()
        ns = scipy.linalg.null_space(self.e, rcond=tol.rank_tol)
        return orthonormalize(self.f @ ns, None, tol) if ns.size else Frame.zero(self.ambient_dim)

    def is_operator(self, tol: Tolerances | None = None) -> bool:
        return self.indeterminant_part(tol).rank == 0


def relation_sum(a: PencilRelation, b: PencilRelation, tol: Tolerances | None = None) -> PencilRelation:
    """A + B = {(x, y + z) : (x, y) in A, (x, z) in B}."""
    tol = tol or Tolerances()
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    k = scipy.linalg.null_space(np.hstack([a.e, -b.e]), rcond=tol.rank_tol)
    if k.size == 0:
        k = np.zeros((a.coord_dim + b.coord_dim, 0))
    ka, kb = k[: a.coord_dim], k[a.coord_dim:]
    return PencilRelation(a.e @ ka, a.f @ ka + b.f @ kb)


def relation_compose(c: PencilRelation, a: PencilRelation, tol: Tolerances | None = None) -> PencilRelation:
    """C A = {(x, z) : exists y with (x, y) in A and (y, z) in C}."""
    tol = tol or Tolerances()
    if c.ambient_dim != a.ambient_dim:
        raise ValueError("ambient dimensions differ")
    k = scipy.linalg.null_space(np.hstack([a.f, -c.e]), rcond=tol.rank_tol)
    if k.size == 0:
        k = np.zeros((a.coord_dim + c.coord_dim, 0))
    ka, kc = k[: a.coord_dim], k[a.coord_dim:]
    return PencilRelation(a.e @ ka, c.f @ kc)


def relation_inverse(a: PencilRelation) -> PencilRelation:
    return PencilRelation(a.f, a.e)


@dataclass(frozen=True)
class SpectrumDescription:
    """Spectrum of a relation; possibly all of C (reported symbolically)."""

    all_of_c: bool = False
    reason: str = ""
    eigenvalues: tuple = ()          # ((value, algebraic multiplicity), ...)
    infinite_multiplicity: int = 0   # E-kernel directions, the A(0) part

    def finite_values(self) -> np.ndarray:
        out = []
        for v, m in self.eigenvalues:
            out.extend([v] * m)
        return np.array(out, dtype=complex)

    def distance(self, z: complex) -> float:
        vals = self.finite_values()
        if vals.size == 0:
            return np.inf
        return float(np.abs(vals - z).min())


def _pencil_eigs(a: PencilRelation) -> tuple[np.ndarray, int, bool]:
    """Finite eigenvalues (with multiplicity), infinite count, singular flag."""
    ab = scipy.linalg.eig(a.f, a.e, right=False, homogeneous_eigvals=True)
    alpha, beta = ab[0], ab[1]
    mag = np.hypot(np.abs(alpha), np.abs(beta))
    bad = mag <= 1e-12
    if np.any(bad):
        return np.zeros(0, dtype=complex), 0, True
    infinite = np.abs(beta) <= 1e-12 * mag
    finite = alpha[~infinite] / beta[~infinite]
    return finite, int(np.count_nonzero(infinite)), False


def relation_spectrum(a: PencilRelation, tol: Tolerances | None = None) -> SpectrumDescription:
    tol = tol or Tolerances()
    n, d = a.ambient_dim, a.coord_dim
    if d != n:
        return SpectrumDescription(
            all_of_c=True,
            reason=f"coordinate dimension {d} != ambient dimension {n}; "
            "the resolvent is never bounded invertible",
        )
    finite, n_inf, singular = _pencil_eigs(a)
    if singular or _pencil_is_singular(a, tol):
        return SpectrumDescription(all_of_c=True, reason="singular pencil: det(F - zeta E) vanishes identically")
    scale = max(1.0, float(np.abs(finite).max()) if finite.size else 1.0)
    groups: list[list[complex]] = []
    for z in sorted(finite, key=lambda v: (v.real, v.imag)):
        if groups and abs(z - np.mean(groups[-1])) <= 1e-6 * scale:
            groups[-1].append(z)
        else:
            groups.append([z])
    eigs = tuple((complex(np.mean(g)), len(g)) for g in groups)
    return SpectrumDescription(eigenvalues=eigs, infinite_multiplicity=n_inf)


def _pencil_is_singular(a: PencilRelation, tol: Tolerances) -> bool:
    rng = np.random.default_rng(7)
    for _ in range(3):
        z = complex(rng.standard_normal(), rng.standard_normal()) * 2.0
        if rank(a.f - z * a.e, tol.rank_tol) == a.ambient_dim:
            return False
    return True


def resolvent(a: PencilRelation, zeta: complex, tol: Tolerances | None = None) -> np.ndarray:
    """R(zeta, A) = (A - zeta I)^{-1} = E (F - zeta E)^{-1}."""
    tol = tol or Tolerances()
    spec = relation_spectrum(a, tol)
    if spec.all_of_c:
        raise SpectralPoint(f"spectrum is all of C ({spec.reason})")
    if spec.distance(zeta) < tol.cross_tol:
        raise SpectralPoint(f"zeta={zeta} is within cross_tol of the spectrum")
    return a.e @ np.linalg.inv(a.f - zeta * a.e)


def spectral_projection(
    a: PencilRelation, window, tol: Tolerances | None = None
) -> tuple[np.ndarray, int]:
    """Riesz projection for the part of the spectrum inside the window.

    Quadrature of the resolvent over the window boundary; the rank equals
    the total algebraic multiplicity inside, and the kernel of the
    resolvent (the A(0) directions) is annihilated.
    """
    tol = tol or Tolerances()
    spec = relation_spectrum(a, tol)
    if spec.all_of_c:
        raise SpectralPoint(f"spectrum is all of C ({spec.reason})")
    vals = spec.finite_values()
    for z in vals:
        if window.boundary_distance(complex(z)) < tol.cross_tol:
            raise SingularOnContour(
                f"spectral point {z} lies within cross_tol of the window boundary"
            )
    p = contour_quadrature(lambda z: a.e @ np.linalg.inv(a.f - z * a.e), window.path(), tol.quad_nodes)
    inside = int(sum(m for v, m in spec.eigenvalues if window.contains(complex(v))))
    return p, inside


def spectral_projector_eig(a: PencilRelation, window, tol: Tolerances | None = None) -> np.ndarray:
    """Eigendecomposition route to the same projector (diagonalizable pencils).

    Independent of the quadrature path: with right eigenvectors v_i of the
    pencil, W = [E v_finite | F v_infinite] reduces the resolvent to partial
    fractions, and the projector is W 1_window W^{-1}.
    """
    tol = tol or Tolerances()
    n = a.ambient_dim
    if a.coord_dim != n:
        raise SpectralPoint("projector requires a square pencil")
    ab, vr = scipy.linalg.eig(a.f, a.e, homogeneous_eigvals=True)
    alpha, beta = ab[0], ab[1]
    mag = np.hypot(np.abs(alpha), np.abs(beta))
    infinite = np.abs(beta) <= 1e-12 * mag
    w = np.zeros((n, n), dtype=complex)
    indicator = np.zeros(n)
    for i in range(n):
        if infinite[i]:
            w[:, i] = a.f @ vr[:, i]
        else:
            lam = alpha[i] / beta[i]
            w[:, i] = a.e @ vr[:, i]
            indicator[i] = 1.0 if window.contains(complex(lam)) else 0.0
    return w @ np.diag(indicator) @ np.linalg.inv(w)


def relation_fredholm(a: PencilRelation, tol: Tolerances | None = None) -> tuple[int, int, int]:
    """(kernel dim, cokernel dim, index); the index is d - n for pencils."""
    tol = tol or Tolerances()
    rf = rank(a.f, tol.rank_tol)
    kernel = a.coord_dim - rf
    coker = a.ambient_dim - rf
    return kernel, coker, kernel - coker
