"""Maslov index of curves of Fredholm pairs of Lagrangian subspaces.

A curve supplies, per parameter value, a symplectic form, a splitting and
the two Lagrangian frames.  The index is the spectral flow through the
positive real axis (upward co-orientation) of the block family
[[0, U_s], [V_s^{-1}, 0]] built from the generating operators, together
with the U V^{-1} route when the second generator is invertible -- at
finite dimension it always is, and the two integers must agree.

The real-category comparison uses the interval around -1: its net sign
convention is fixed so that the comparison identity with the
complexified pair holds exactly (see the flipped-at-minus-one bookkeeping
in ``mas_bf``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .curves import PositiveRealAxis, RealAxisInterval
from .errors import (
    BadRealStructure,
    GeneratorMismatch,
    HypothesisFailed,
    IndexNonZeroAt,
    NotLagrangianAt,
    NotStrong,
    ProjectionsTooFar,
    RefinementExceeded,
    SymflowError,
    VNotInvertibleAt,
)
from .flow import FlowResult, SampledFamily, spectral_flow
from .gap import gap, intersect_subspaces
from .lagrangian import (
    block_generator_matrix,
    boxplus,
    boxplus_pair,
    boxplus_splitting,
    generator_of,
    pair_index,
)
from .linalg import Frame, Tolerances, orthonormalize
from .symplectic import (
    LAGRANGIAN,
    Splitting,
    SymplecticSpace,
    _finish_splitting,
    classify,
    compute_splitting,
    make_space,
    splitting_from_frames,
)

__all__ = [
    "CurveSample",
    "SplitCurve",
    "MaslovResult",
    "lagrangian_retract",
    "maslov_index",
    "transport_frame",
    "catenate",
    "reverse",
    "flip",
    "transform",
    "with_splitting",
    "maslov_boxplus",
    "splitting_independence_check",
    "maslov_properties_check",
    "real_complexify",
    "complexified_pair_splitting",
    "mas_bf",
    "MasBFResult",
    "maslov_embedding_check",
]

_ELL = PositiveRealAxis()


@dataclass(frozen=True, eq=False)
class CurveSample:
    space: SymplecticSpace
    splitting: Splitting
    lam: Frame
    mu: Frame


@dataclass(eq=False)
class SplitCurve:
    """A sampled curve s -> (omega_s, splitting_s, lambda_s, mu_s).

    The evaluator may be asked for intermediate parameter values during
    refinement; ``interpolated`` marks curves whose evaluator interpolates
    between explicitly given samples.
    """

    ip: np.ndarray
    samples: list
    evaluator: object
    interpolated: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def a(self) -> float:
        return float(self.samples[0])

    @property
    def b(self) -> float:
        return float(self.samples[-1])

    def at(self, s: float) -> CurveSample:
        if s not in self._cache:
            self._cache[s] = self.evaluator(s)
        return self._cache[s]

    @staticmethod
    def from_samples(
        ip, samples, omegas, lam_columns, mu_columns, splitting_frames=None,
        tol: Tolerances | None = None,
    ) -> "SplitCurve":
        """Curve through explicit per-sample data, refined by linear
        interpolation of matrices/columns plus reorthonormalization."""
        tol = tol or Tolerances()
        ip = np.asarray(ip, dtype=complex)
        ss = [float(s) for s in samples]
        omegas = [np.asarray(o, dtype=complex) for o in omegas]
        lam_columns = [np.asarray(c, dtype=complex) for c in lam_columns]
        mu_columns = [np.asarray(c, dtype=complex) for c in mu_columns]

        def interp(seq, s):
            if s <= ss[0]:
                return seq[0]
            if s >= ss[-1]:
                return seq[-1]
            k = int(np.searchsorted(ss, s, side="right")) - 1
            if ss[k] == s:
                return seq[k]
            t = (s - ss[k]) / (ss[k + 1] - ss[k])
            return (1.0 - t) * seq[k] + t * seq[k + 1]

        def ev(s: float) -> CurveSample:
            space = make_space(ip, interp(omegas, s), tol)
            if splitting_frames is None:
                split = compute_splitting(space, tol)
            else:
                plus = interp([p for p, _ in splitting_frames], s)
                minus = interp([m for _, m in splitting_frames], s)
                split = splitting_from_frames(space, plus, minus, tol)
            if s in ss:
                lam = orthonormalize(interp(lam_columns, s), ip, tol)
                mu = orthonormalize(interp(mu_columns, s), ip, tol)
            else:
                # interpolated subspaces drift off the Lagrangian
                # Grassmannian; retract through the generator
                lam = lagrangian_retract(split, interp(lam_columns, s), tol)
                mu = lagrangian_retract(split, interp(mu_columns, s), tol)
            return CurveSample(space, split, lam, mu)

        return SplitCurve(ip, ss, ev, interpolated=True)


def lagrangian_retract(splitting: Splitting, columns, tol: Tolerances | None = None) -> Frame:
    """Nearest-Lagrangian projection of almost-Lagrangian spanning columns.

    Reads off the graph coordinates over the splitting and replaces the
    generator by its unitary polar factor; used to bring interpolated
    frames back onto the Lagrangian Grassmannian.
    """
    tol = tol or Tolerances()
    cols = np.asarray(columns, dtype=complex)
    a, b = splitting.coordinates(cols)
    u = b @ np.linalg.pinv(a)
    w, _, vh = np.linalg.svd(u)
    uu = w @ vh
    graph = splitting.plus_h + splitting.minus_h @ uu
    return orthonormalize(graph, splitting.space.ip, tol)


def _validated_generators(curve: SplitCurve, s: float, tol: Tolerances):
    cs = curve.at(s)
    for name, f in (("lambda", cs.lam), ("mu", cs.mu)):
        kind = classify(cs.space, f, tol)
        if kind != LAGRANGIAN:
            raise NotLagrangianAt(s, name, kind)
    idx = pair_index(cs.space, cs.lam, cs.mu, tol)
    if idx.index != 0:
        raise IndexNonZeroAt(s, idx.index)
    gu = generator_of(cs.splitting, cs.lam, tol)
    gv = generator_of(cs.splitting, cs.mu, tol)
    if not gv.full_domain:
        raise VNotInvertibleAt(s, "(partial domain)")
    vm = gv.matrix()
    sv = scipy.linalg.svdvals(vm) if vm.size else np.zeros(0)
    if sv.size and sv[-1] <= tol.rank_tol * sv[0]:
        raise VNotInvertibleAt(s, f"(smallest singular value {sv[-1]:.2e})")
    return cs, gu, gv


def _refine_for_continuity(curve: SplitCurve, tol: Tolerances, refine_max: int) -> list:
    """Insert samples until splittings and both Lagrangian curves move slowly."""
    ss = sorted(float(s) for s in curve.samples)

    def too_far(s1: float, s2: float) -> bool:
        c1, c2 = curve.at(s1), curve.at(s2)
        if gap(c1.splitting.plus, c2.splitting.plus).gap > 0.5:
            return True
        return (
            gap(c1.lam, c2.lam).gap > 0.6 or gap(c1.mu, c2.mu).gap > 0.6
        )

    out = [ss[0]]
    for s1, s2 in zip(ss[:-1], ss[1:]):
        stack = [(s1, s2, 0)]
        seg: list[float] = []
        while stack:
            a, b, depth = stack.pop()
            if not too_far(a, b):
                seg.append(b)
                continue
            if depth >= refine_max:
                raise RefinementExceeded(a, b, "curve is not gap-continuous at this resolution")
            mid = 0.5 * (a + b)
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))
        out.extend(sorted(seg))
    return out


@dataclass(frozen=True)
class MaslovResult:
    value: int
    flow: FlowResult
    via_uv: int | None = None
    uv_flow: FlowResult | None = None

    def __post_init__(self):
        if self.via_uv is not None and self.via_uv != self.value:
            raise SymflowError(
                f"block spectral flow {self.value} disagrees with the "
                f"U V^-1 route {self.via_uv}"
            )


def maslov_index(
    curve: SplitCurve,
    tol: Tolerances | None = None,
    refine_max: int = 20,
    compute_uv: bool = True,
) -> MaslovResult:
    """Maslov index of the pair of Lagrangian curves with the given splittings."""
    tol = tol or Tolerances()
    grid = _refine_for_continuity(curve, tol, refine_max)
    dims = None
    gen_cache: dict = {}

    def gens(s: float):
        nonlocal dims
        if s not in gen_cache:
            cs, gu, gv = _validated_generators(curve, s, tol)
            d = (cs.splitting.dim_plus, cs.splitting.dim_minus)
            if dims is None:
                dims = d
            elif dims != d:
                raise HypothesisFailed(
                    f"splitting dimensions jump from {dims} to {d} at s={s}"
                )
            gen_cache[s] = (gu, gv)
        return gen_cache[s]

    def block_of(s: float) -> np.ndarray:
        gu, gv = gens(s)
        return block_generator_matrix(gu, gv)

    flow = spectral_flow(
        SampledFamily(list(grid), block_of), _ELL, tol, refine_max,
        interpolated=curve.interpolated,
    )
    if not compute_uv:
        return MaslovResult(flow.total, flow)

    def uv_of(s: float) -> np.ndarray:
        gu, gv = gens(s)
        return gu.matrix() @ np.linalg.inv(gv.matrix())

    uv_flow = spectral_flow(
        SampledFamily(list(grid), uv_of), _ELL, tol, refine_max,
        interpolated=curve.interpolated,
    )
    return MaslovResult(flow.total, flow, uv_flow.total, uv_flow)


def transport_frame(p_s, p_s0, frame: Frame, tol: Tolerances | None = None) -> Frame:
    """Identify ran P_s with ran P_s0 when the projections are close.

    Uses S = [P_s0 P_s + (I - P_s0)(I - P_s)] (I - R)^{-1/2} with
    R = (P_s - P_s0)^2; requires the projection difference to have norm
    below 1.
    """
    tol = tol or Tolerances()
    p_s = np.asarray(p_s, dtype=complex)
    p_s0 = np.asarray(p_s0, dtype=complex)
    ip = frame.ip
    delta = p_s - p_s0
    if ip is None:
        nrm = float(np.linalg.norm(delta, 2))
    else:
        L = np.linalg.cholesky(np.asarray(ip, dtype=complex))
        nrm = float(np.linalg.norm(L.conj().T @ delta @ np.linalg.inv(L.conj().T), 2))
    if nrm >= 1.0 - 1e-12:
        raise ProjectionsTooFar(f"|P_s - P_s0| = {nrm:.6f} >= 1")
    r = delta @ delta
    s_prime = p_s0 @ p_s + (np.eye(p_s.shape[0]) - p_s0) @ (np.eye(p_s.shape[0]) - p_s)
    iroot = np.linalg.inv(scipy.linalg.sqrtm(np.eye(p_s.shape[0]) - r))
    s_map = s_prime @ iroot
    return orthonormalize(s_map @ frame.matrix, ip, tol)


def reverse(curve: SplitCurve) -> SplitCurve:
    a, b = curve.a, curve.b
    return SplitCurve(
        curve.ip,
        [a + b - s for s in reversed(curve.samples)],
        lambda s: curve.at(a + b - s),
        curve.interpolated,
    )


def flip(curve: SplitCurve) -> SplitCurve:
    def ev(s: float) -> CurveSample:
        cs = curve.at(s)
        return CurveSample(cs.space, cs.splitting, cs.mu, cs.lam)

    return SplitCurve(curve.ip, list(curve.samples), ev, curve.interpolated)


def catenate(c1: SplitCurve, c2: SplitCurve, tol: Tolerances | None = None) -> SplitCurve:
    """Concatenate two curves into one over [0, 1] (halves reparametrized)."""
    tol = tol or Tolerances()
    end, start = c1.at(c1.b), c2.at(c2.a)
    for name, f1, f2 in (("lambda", end.lam, start.lam), ("mu", end.mu, start.mu),
                         ("splitting", end.splitting.plus, start.splitting.plus)):
        if gap(f1, f2).gap > 1e-8:
            raise HypothesisFailed(f"curves do not match at the junction ({name})")

    a1, b1, a2, b2 = c1.a, c1.b, c2.a, c2.b

    def ev(s: float) -> CurveSample:
        if s <= 0.5:
            return c1.at(a1 + 2.0 * s * (b1 - a1))
        return c2.at(a2 + (2.0 * s - 1.0) * (b2 - a2))

    left = [0.5 * (s - a1) / (b1 - a1) for s in c1.samples]
    right = [0.5 + 0.5 * (s - a2) / (b2 - a2) for s in c2.samples]
    ss = sorted(set(left + right))
    return SplitCurve(c1.ip, ss, ev, c1.interpolated or c2.interpolated)


def transform(curve: SplitCurve, l_of_s, tol: Tolerances | None = None) -> SplitCurve:
    """Push the curve through a family of symplectic maps L_s.

    The target form is omega_s(L^{-1} x, L^{-1} y), under which the moved
    splitting frames stay h-orthonormal and the moved pairs stay
    Lagrangian; the Maslov index is invariant under this action.
    """
    tol = tol or Tolerances()

    def ev(s: float) -> CurveSample:
        cs = curve.at(s)
        L = np.asarray(l_of_s(s), dtype=complex)
        linv = np.linalg.inv(L)
        omega2 = linv.conj().T @ cs.space.omega @ linv
        space2 = make_space(curve.ip, omega2, tol)
        split2 = _finish_splitting(
            space2, L @ cs.splitting.plus_h, L @ cs.splitting.minus_h, tol
        )
        lam2 = orthonormalize(L @ cs.lam.matrix, curve.ip, tol)
        mu2 = orthonormalize(L @ cs.mu.matrix, curve.ip, tol)
        return CurveSample(space2, split2, lam2, mu2)

    return SplitCurve(curve.ip, list(curve.samples), ev, curve.interpolated)


def with_splitting(curve: SplitCurve, splitting_provider) -> SplitCurve:
    def ev(s: float) -> CurveSample:
        cs = curve.at(s)
        return CurveSample(cs.space, splitting_provider(s, cs), cs.lam, cs.mu)

    return SplitCurve(curve.ip, list(curve.samples), ev, curve.interpolated)


@dataclass(frozen=True)
class BoxplusReport:
    product_value: int
    direct_value: int
    flipped_value: int

    @property
    def all_equal(self) -> bool:
        return self.product_value == self.direct_value == self.flipped_value


def maslov_boxplus(curve: SplitCurve, tol: Tolerances | None = None,
                   refine_max: int = 20) -> BoxplusReport:
    """Three independent routes to one integer.

    The pair against the diagonal in X boxplus X, the pair itself, and the
    swapped pair in (X, -omega) with the complementary splitting must all
    give the same Maslov index.
    """
    tol = tol or Tolerances()

    def prod_ev(s: float) -> CurveSample:
        cs = curve.at(s)
        prod = boxplus(cs.space, tol)
        split = boxplus_splitting(cs.splitting, tol)
        lm, diag = boxplus_pair(cs.space, cs.lam, cs.mu, tol)
        return CurveSample(prod, split, lm, diag)

    ip_prod = scipy.linalg.block_diag(curve.ip, curve.ip)
    prod_curve = SplitCurve(ip_prod, list(curve.samples), prod_ev, curve.interpolated)

    def neg_ev(s: float) -> CurveSample:
        cs = curve.at(s)
        space_neg = make_space(curve.ip, -cs.space.omega, tol)
        split_neg = _finish_splitting(
            space_neg, cs.splitting.minus_h, cs.splitting.plus_h, tol
        )
        return CurveSample(space_neg, split_neg, cs.mu, cs.lam)

    neg_curve = SplitCurve(curve.ip, list(curve.samples), neg_ev, curve.interpolated)

    mp = maslov_index(prod_curve, tol, refine_max).value
    md = maslov_index(curve, tol, refine_max).value
    mf = maslov_index(neg_curve, tol, refine_max).value
    return BoxplusReport(mp, md, mf)


def splitting_independence_check(
    curve: SplitCurve, alt_splitting_provider,
    tol: Tolerances | None = None, refine_max: int = 20,
    cond_bound: float = 100.0, strict: bool = True,
) -> tuple[int, int, bool]:
    """Maslov index with the curve's splitting versus an alternative one.

    For strong forms (conditioning of J below ``cond_bound``) the two
    integers must agree; with ``strict`` the conditioning is enforced,
    otherwise weak-surrogate discrepancies are merely reported.
    """
    tol = tol or Tolerances()
    worst = max(curve.at(float(s)).space.cond_j for s in curve.samples)
    if strict and worst > cond_bound:
        raise NotStrong(
            f"cond(J) reaches {worst:.1f} > {cond_bound}; "
            "splitting independence is only asserted for strong forms"
        )
    m0 = maslov_index(curve, tol, refine_max).value
    m1 = maslov_index(with_splitting(curve, alt_splitting_provider), tol, refine_max).value
    return m0, m1, m0 == m1


@dataclass(frozen=True)
class PropertyReport:
    value: int
    reparametrized: int
    catenation_left: int
    catenation_right: int
    flipped: int
    dims_at_ends: tuple
    vanishing_applicable: bool

    @property
    def reparametrization_invariant(self) -> bool:
        return self.value == self.reparametrized

    @property
    def catenation_additive(self) -> bool:
        return self.value == self.catenation_left + self.catenation_right

    @property
    def flipping_identity_holds(self) -> bool:
        d0, d1 = self.dims_at_ends
        return self.value + self.flipped == d0 - d1

    @property
    def vanishing_holds(self) -> bool:
        return (not self.vanishing_applicable) or self.value == 0


def maslov_properties_check(
    curve: SplitCurve, tol: Tolerances | None = None, refine_max: int = 20
) -> PropertyReport:
    """Exercise the basic property suite on one curve.

    Reparametrization invariance, additivity under catenation at the
    midpoint, the flipping identity against the endpoint intersection
    dimensions, and vanishing whenever dim(lam & mu) is constant on the
    sample grid.
    """
    tol = tol or Tolerances()
    a, b = curve.a, curve.b
    value = maslov_index(curve, tol, refine_max).value

    def phi(s: float) -> float:
        t = (s - a) / (b - a)
        return a + (b - a) * t * t

    reparam = SplitCurve(curve.ip, list(curve.samples),
                         lambda s: curve.at(phi(s)), curve.interpolated)
    rep_val = maslov_index(reparam, tol, refine_max).value

    mid = 0.5 * (a + b)
    left_samples = sorted({s for s in curve.samples if s < mid} | {a, mid})
    right_samples = sorted({s for s in curve.samples if s > mid} | {mid, b})
    left = SplitCurve(curve.ip, left_samples, curve.at, curve.interpolated)
    right = SplitCurve(curve.ip, right_samples, curve.at, curve.interpolated)
    lv = maslov_index(left, tol, refine_max).value
    rv = maslov_index(right, tol, refine_max).value

    fv = maslov_index(flip(curve), tol, refine_max).value
    ca, cb = curve.at(a), curve.at(b)
    d0 = intersect_subspaces(ca.lam, ca.mu, tol).rank
    d1 = intersect_subspaces(cb.lam, cb.mu, tol).rank

    dims = [intersect_subspaces(curve.at(float(s)).lam, curve.at(float(s)).mu, tol).rank
            for s in curve.samples]
    return PropertyReport(
        value=value,
        reparametrized=rep_val,
        catenation_left=lv,
        catenation_right=rv,
        flipped=fv,
        dims_at_ends=(d0, d1),
        vanishing_applicable=len(set(dims)) == 1,
    )


# -- real category -------------------------------------------------------------


def _check_real_structure(j) -> np.ndarray:
    j = np.asarray(j)
    if np.iscomplexobj(j) and np.abs(j.imag).max() > 1e-12:
        raise BadRealStructure("J must be a real matrix")
    j = j.real.astype(float)
    n = j.shape[0]
    if j.shape != (n, n) or n % 2:
        raise BadRealStructure("J must be square of even dimension")
    if np.abs(j @ j + np.eye(n)).max() > 1e-10:
        raise BadRealStructure("J^2 != -I")
    if np.abs(j + j.T).max() > 1e-10:
        raise BadRealStructure("J^T != -J")
    return j


def real_complexify(j_real, tol: Tolerances | None = None):
    """Complexify a real symplectic structure.

    Returns the complex strong symplectic space on C^{2m} whose form
    matrix is J itself, together with the canonical splitting; the plus
    and minus parts are the images of (I -+ iJ).
    """
    tol = tol or Tolerances()
    j = _check_real_structure(j_real)
    n = j.shape[0]
    space = make_space(np.eye(n), j.astype(complex), tol)
    return space, compute_splitting(space, tol)


def _real_lagrangian_basis(j: np.ndarray, lam_basis) -> np.ndarray:
    b = np.asarray(lam_basis, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    q, _ = np.linalg.qr(b)
    m = j.shape[0] // 2
    if q.shape[1] != m:
        raise BadRealStructure(
            f"real Lagrangian must have dimension {m}, got {q.shape[1]}"
        )
    if np.abs(q.T @ j @ q).max() > 1e-10:
        raise BadRealStructure("subspace is not Lagrangian for the real form")
    return q


def complexified_pair_splitting(j_real, lam_basis, tol: Tolerances | None = None):
    """Space, splitting and frame data adapted to one real Lagrangian.

    The splitting bases are e_j = (I - iJ) b_j / sqrt(2) and
    f_j = (I + iJ) b_j / sqrt(2) for a real orthonormal basis b of the
    Lagrangian; in these coordinates the generator of its
    complexification is the identity.
    """
    tol = tol or Tolerances()
    j = _check_real_structure(j_real)
    b = _real_lagrangian_basis(j, lam_basis)
    n = j.shape[0]
    space = make_space(np.eye(n), j.astype(complex), tol)
    jc = j.astype(complex)
    plus_h = (b - 1j * (jc @ b)) / np.sqrt(2.0)
    minus_h = (b + 1j * (jc @ b)) / np.sqrt(2.0)
    split = _finish_splitting(space, plus_h, minus_h, tol)
    return space, split, b


@dataclass(frozen=True)
class MasBFResult:
    value: int
    flow: FlowResult
    eps: float


def mas_bf(
    vtilde_family: SampledFamily, lam_basis, j_real,
    tol: Tolerances | None = None, eps: float = 0.25, refine_max: int = 20,
) -> MasBFResult:
    """Real-category Maslov index of mu_s = V~_s (J lam) against fixed lam.

    The unitaries S_s = phi(V~_s) phi(V~_s^t) flow through the interval
    around -1; per sample the identity V U^{-1} = -conj(S_s) against the
    complexified generators is verified to 1e-8.  The interval halfwidth
    shrinks adaptively if spectrum approaches its endpoints.
    """
    tol = tol or Tolerances()
    j = _check_real_structure(j_real)
    space, split, b = complexified_pair_splitting(j, lam_basis, tol)
    jc = j.astype(complex)
    m = b.shape[1]

    def s_matrix(s: float) -> np.ndarray:
        vt = np.asarray(vtilde_family.value(s))
        if np.iscomplexobj(vt) and np.abs(vt.imag).max() > 1e-12:
            raise GeneratorMismatch(f"at s={s}: generator is not real")
        vt = vt.real.astype(float)
        if np.abs(vt @ j - j @ vt).max() > 1e-10 * max(1.0, np.abs(vt).max()):
            raise GeneratorMismatch(f"at s={s}: generator does not commute with J")
        xh = b.T @ vt @ b
        yh = -b.T @ j @ vt @ b
        phi = xh + 1j * yh
        if np.abs(phi.conj().T @ phi - np.eye(m)).max() > 1e-8:
            raise GeneratorMismatch(f"at s={s}: phi(V~) is not unitary")
        s_mat = phi @ (xh.T + 1j * yh.T)

        mu_cols = (vt @ jc @ b).astype(complex)
        gu = generator_of(split, orthonormalize(b.astype(complex)), tol)
        gv = generator_of(split, orthonormalize(mu_cols), tol)
        lhs = gv.matrix() @ np.linalg.inv(gu.matrix())
        if np.abs(lhs + np.conj(s_mat)).max() > 1e-8:
            raise GeneratorMismatch(
                f"at s={s}: V U^-1 deviates from -conj(S) by "
                f"{np.abs(lhs + np.conj(s_mat)).max():.2e}"
            )
        return s_mat

    fam = SampledFamily(list(vtilde_family.samples), s_matrix)
    current = float(eps)
    last_exc = None
    for _ in range(6):
        # net sign fixed by the comparison with the complexified pair:
        # arrivals at -1 from the lower half-plane count -1
        ell = RealAxisInterval(-1.0, current, positive_side_up=True)
        try:
            flow = spectral_flow(fam, ell, tol, refine_max)
            return MasBFResult(flow.total, flow, current)
        except SymflowError as exc:
            last_exc = exc
            current /= 2.0
    raise last_exc


def maslov_embedding_check(
    curve: SplitCurve, y_frame: Frame,
    tol: Tolerances | None = None, refine_max: int = 20,
) -> tuple[int, int, bool]:
    """Maslov index of a curve versus its restriction to a symplectic subspace.

    Y must carry a nondegenerate restricted form, meet the splitting in a
    splitting of Y, and keep dim(lam & mu) - dim(lam & mu & Y) constant;
    under these hypotheses the two indices agree.
    """
    tol = tol or Tolerances()
    by = y_frame.matrix

    def coords(f: Frame) -> np.ndarray:
        if curve.ip is None or np.allclose(curve.ip, np.eye(by.shape[0])):
            return by.conj().T @ f.matrix
        return by.conj().T @ curve.ip @ f.matrix

    def restrict(s: float) -> CurveSample:
        cs = curve.at(s)
        omega_y = by.conj().T @ cs.space.omega @ by
        try:
            space_y = make_space(np.eye(by.shape[1]), omega_y, tol)
        except SymflowError as exc:
            raise HypothesisFailed(f"restricted form degenerate: {exc}") from exc
        yplus = intersect_subspaces(cs.splitting.plus, y_frame, tol)
        yminus = intersect_subspaces(cs.splitting.minus, y_frame, tol)
        try:
            split_y = splitting_from_frames(space_y, coords(yplus), coords(yminus), tol)
        except SymflowError as exc:
            raise HypothesisFailed(f"splitting does not restrict to Y: {exc}") from exc
        lam_y = orthonormalize(coords(intersect_subspaces(cs.lam, y_frame, tol)))
        mu_y = orthonormalize(coords(intersect_subspaces(cs.mu, y_frame, tol)))
        return CurveSample(space_y, split_y, lam_y, mu_y)

    offsets = []
    for s in curve.samples:
        cs = curve.at(float(s))
        full = intersect_subspaces(cs.lam, cs.mu, tol)
        inside = intersect_subspaces(full, y_frame, tol)
        offsets.append(full.rank - inside.rank)
    if len(set(offsets)) > 1:
        raise HypothesisFailed(
            f"dim(lam & mu) - dim(lam & mu & Y) varies along the curve: {sorted(set(offsets))}"
        )

    sub_curve = SplitCurve(np.eye(by.shape[1]), list(curve.samples), restrict,
                           curve.interpolated)
    mx = maslov_index(curve, tol, refine_max).value
    my = maslov_index(sub_curve, tol, refine_max).value
    return mx, my, mx == my
