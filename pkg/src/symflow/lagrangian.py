"""Generating operators of isotropic subspaces and Fredholm pair indices.

In the h-orthonormal coordinates of a splitting, the generator of an
isotropic subspace is determined by a pair of matrices (D, U) with
orthonormal columns: D selects the domain inside X+, U gives the images
in X-, and the subspace is { F+ D c + F- U c }.  Orthonormality of U is
exactly the h-unitarity omega(x, y) = -omega(Ux, Uy) of the operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import HypothesisFailed, NotIsotropic, SplitCollision, VNotInvertible
from .gap import gap, intersect_subspaces, sum_subspaces
from .linalg import Frame, Tolerances, orthonormalize, rank
from .symplectic import (
    ISOTROPIC,
    LAGRANGIAN,
    Splitting,
    SymplecticSpace,
    _finish_splitting,
    annihilator,
    classify,
    make_space,
)

__all__ = [
    "LagrangianGenerator",
    "PairIndexReport",
    "IsoToLagReport",
    "generator_of",
    "pair_index",
    "check_iso_to_lag",
    "fredholm_via_generators",
    "boxplus",
    "boxplus_pair",
    "boxplus_splitting",
    "block_generator_matrix",
]


@dataclass(frozen=True, eq=False)
class LagrangianGenerator:
    """Graph data of the injective operator U with Gamma(U) = subspace."""

    splitting: Splitting
    dom_coeff: np.ndarray  # (p, r), orthonormal columns: domain inside X+
    umat: np.ndarray       # (q, r), orthonormal columns when source is isotropic

    @property
    def domain_dim(self) -> int:
        return self.dom_coeff.shape[1]

    @property
    def full_domain(self) -> bool:
        return self.domain_dim == self.splitting.dim_plus

    @property
    def unitarity_defect(self) -> float:
        g = self.umat.conj().T @ self.umat - np.eye(self.domain_dim)
        return float(np.abs(g).max()) if g.size else 0.0

    def matrix(self) -> np.ndarray:
        """U as a (q, p) matrix in h-coordinates; requires a full domain."""
        if not self.full_domain:
            raise VNotInvertible("generator is not defined on all of X+")
        return self.umat @ np.linalg.inv(self.dom_coeff)

    def dom_frame(self, tol: Tolerances | None = None) -> Frame:
        return orthonormalize(
            self.splitting.plus_h @ self.dom_coeff, self.splitting.space.ip, tol
        )

    def graph_frame(self, tol: Tolerances | None = None) -> Frame:
        cols = self.splitting.plus_h @ self.dom_coeff + self.splitting.minus_h @ self.umat
        return orthonormalize(cols, self.splitting.space.ip, tol)


def generator_of(
    splitting: Splitting, lam: Frame, tol: Tolerances | None = None
) -> LagrangianGenerator:
    """Graph representation of an isotropic subspace over the splitting.

    Raises NotIsotropic when the input is not isotropic/Lagrangian and
    SplitCollision when the subspace meets X- (graph form impossible).
    """
    tol = tol or Tolerances()
    space = splitting.space
    kind = classify(space, lam, tol)
    if kind not in (ISOTROPIC, LAGRANGIAN):
        raise NotIsotropic(f"subspace classifies as '{kind}'")
    k = lam.rank
    a, b = splitting.coordinates(lam.matrix)
    if k == 0:
        return LagrangianGenerator(
            splitting,
            np.zeros((splitting.dim_plus, 0), dtype=complex),
            np.zeros((splitting.dim_minus, 0), dtype=complex),
        )
    ra = rank(a, tol.rank_tol)
    if ra < k:
        raise SplitCollision(k - ra)
    q_a, r_a = np.linalg.qr(a)
    umat = b @ np.linalg.inv(r_a)
    return LagrangianGenerator(splitting, q_a, umat)


@dataclass(frozen=True)
class PairIndexReport:
    dim_intersection: int
    codim_sum: int
    index: int


def pair_index(
    space: SymplecticSpace, lam: Frame, mu: Frame, tol: Tolerances | None = None
) -> PairIndexReport:
    """dim(lam & mu) - codim(lam + mu), all via rank with tolerance."""
    tol = tol or Tolerances()
    stacked = np.hstack([lam.euclid_matrix(), mu.euclid_matrix()])
    r_sum = rank(stacked, tol.rank_tol)
    dim_int = lam.rank + mu.rank - r_sum
    codim = space.dim - r_sum
    return PairIndexReport(dim_int, codim, dim_int - codim)


@dataclass(frozen=True)
class IsoToLagReport:
    index: int
    annihilator_of_sum_matches_intersection: bool
    double_annihilator_matches_sum: bool
    lam_lagrangian: bool
    mu_lagrangian: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.index == 0
            and self.annihilator_of_sum_matches_intersection
            and self.double_annihilator_matches_sum
            and self.lam_lagrangian
            and self.mu_lagrangian
        )


def check_iso_to_lag(
    space: SymplecticSpace, lam: Frame, mu: Frame, tol: Tolerances | None = None
) -> IsoToLagReport:
    """Isotropic pair with nonnegative index: verify both become Lagrangian.

    Checks index == 0, (lam+mu)^omega == lam & mu, the double annihilator
    of the sum reproduces the sum, and both inputs classify Lagrangian.
    """
    tol = tol or Tolerances()
    for name, f in (("lam", lam), ("mu", mu)):
        kind = classify(space, f, tol)
        if kind not in (ISOTROPIC, LAGRANGIAN):
            raise HypothesisFailed(f"{name} is not isotropic (classified '{kind}')")
    report = pair_index(space, lam, mu, tol)
    if report.index < 0:
        raise HypothesisFailed(f"pair index {report.index} is negative")
    sum_f = sum_subspaces(lam, mu, tol)
    ann_sum = annihilator(space, sum_f, tol)
    inter = intersect_subspaces(lam, mu, tol)
    double = annihilator(space, ann_sum, tol)
    eq_tol = 1e-8
    return IsoToLagReport(
        index=report.index,
        annihilator_of_sum_matches_intersection=gap(ann_sum, inter).gap < eq_tol,
        double_annihilator_matches_sum=gap(double, sum_f).gap < eq_tol,
        lam_lagrangian=classify(space, lam, tol) == LAGRANGIAN,
        mu_lagrangian=classify(space, mu, tol) == LAGRANGIAN,
    )


def fredholm_via_generators(
    splitting: Splitting, lam: Frame, mu: Frame, tol: Tolerances | None = None
) -> tuple[int, int]:
    """Index and kernel dimension of U V^{-1} - I on X-.

    Requires the generator V of mu to be bounded invertible; the result
    must agree with the pair index and with dim(lam & mu).
    """
    tol = tol or Tolerances()
    gu = generator_of(splitting, lam, tol)
    gv = generator_of(splitting, mu, tol)
    p, q = splitting.dim_plus, splitting.dim_minus
    if p != q or not gv.full_domain:
        raise VNotInvertible("V is not a square generator with full domain")
    vmat = gv.matrix()
    sv = scipy.linalg.svdvals(vmat) if vmat.size else np.zeros(0)
    if sv.size and sv[-1] <= tol.rank_tol * sv[0]:
        raise VNotInvertible("V is numerically singular")
    # h-coordinates make both sides isometries, so the natural scale is 1;
    # a relative threshold alone would misread t = 0 as full rank
    t = gu.umat - vmat @ gu.dom_coeff
    rt = rank(t, tol.rank_tol, scale=1.0)
    r = gu.domain_dim
    return r - q, r - rt


def boxplus(space: SymplecticSpace, tol: Tolerances | None = None) -> SymplecticSpace:
    """Product space carrying omega (+) (-omega)."""
    ip = scipy.linalg.block_diag(space.ip, space.ip)
    omega = scipy.linalg.block_diag(space.omega, -space.omega)
    return make_space(ip, omega, tol)


def boxplus_pair(
    space: SymplecticSpace, lam: Frame, mu: Frame, tol: Tolerances | None = None
) -> tuple[Frame, Frame]:
    """(lam boxplus mu, diagonal) as frames in the product space."""
    tol = tol or Tolerances()
    prod = boxplus(space, tol)
    n = space.dim
    lm = np.zeros((2 * n, lam.rank + mu.rank), dtype=complex)
    lm[:n, : lam.rank] = lam.matrix
    lm[n:, lam.rank:] = mu.matrix
    base = Frame.full(n, space.ip).matrix
    diag = np.vstack([base, base]) / np.sqrt(2.0)
    return (
        Frame(lm, prod.ip),
        Frame(diag, prod.ip),
    )


def boxplus_splitting(splitting: Splitting, tol: Tolerances | None = None) -> Splitting:
    """Splitting of the product: the minus part of X flips sign of omega."""
    tol = tol or Tolerances()
    prod = boxplus(splitting.space, tol)
    plus_h = scipy.linalg.block_diag(splitting.plus_h, splitting.minus_h)
    minus_h = scipy.linalg.block_diag(splitting.minus_h, splitting.plus_h)
    return _finish_splitting(prod, plus_h, minus_h, tol)


def block_generator_matrix(gu: LagrangianGenerator, gv: LagrangianGenerator) -> np.ndarray:
    """Matrix of [[0, U], [V^{-1}, 0]] on X- (+) X+ in h-coordinates.

    This is the operator whose spectral flow through the positive real
    axis defines the Maslov index of the pair of curves.
    """
    u = gu.matrix()
    v = gv.matrix()
    q, p = u.shape
    vinv = np.linalg.inv(v)
    out = np.zeros((q + p, q + p), dtype=complex)
    out[:q, q:] = u
    out[q:, :q] = vinv
    return out
