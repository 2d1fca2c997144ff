"""Spectral flow of sampled families through a co-oriented curve.

The flow is a sum of rank differences of "negative side" spectral
projections over an adaptive partition.  Each segment gets test windows
around the active crossing sites, sized so that no eigenvalue can reach
the window boundary between the two endpoint samples; when that cannot
be certified the segment is bisected and the evaluator is asked for a
new sample.  Eigenvalues within ``cross_tol`` of the curve belong to the
on-curve slice of the window and count for neither side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import (
    NonConstantM,
    NotAdmissibleAt,
    NotInvariant,
    NotUnitary,
    RefinementExceeded,
)
from .linalg import Frame, Tolerances, rank
from .relations import PencilRelation, relation_spectrum

__all__ = [
    "TestDomainTriple",
    "SampledFamily",
    "family_from_matrices",
    "FlowResult",
    "SegmentRecord",
    "SampleRecord",
    "spectral_flow",
    "AdmissibilityReport",
    "check_admissible",
    "UnitaryAdmissibilityReport",
    "check_unitary_admissible",
    "EmbeddingReport",
    "sf_embedding_check",
]

_NEAR_RADIUS = 0.35  # reporting radius for "eigenvalue arcs near the curve"


@dataclass(frozen=True)
class TestDomainTriple:
    """A test window split by the curve into positive/negative sides."""

    __test__ = False  # not a pytest class, despite the name

    curve: object
    window: object

    def classify(self, z: complex, cross_tol: float) -> str:
        if not self.window.contains(z):
            return "outside"
        if self.curve.distance(z) < cross_tol:
            return "0"
        return "+" if self.curve.side(z) > 0 else "-"

    def valid(self) -> bool:
        return not any(
            self.window.contains(lp) for lp in self.curve.limit_points()
        )


@dataclass
class SampledFamily:
    """A parametrized family s -> matrix or PencilRelation with caching.

    The evaluator may be called at new parameter values during refinement.
    """

    samples: list
    evaluator: object
    _cache: dict = field(default_factory=dict, repr=False)

    def value(self, s: float):
        if s not in self._cache:
            self._cache[s] = self.evaluator(s)
        return self._cache[s]

    def evaluated_points(self) -> list:
        return sorted(self._cache)


def family_from_matrices(samples, matrices) -> SampledFamily:
    """Family backed by linear interpolation between explicit samples."""
    ss = [float(s) for s in samples]
    mats = [np.asarray(m, dtype=complex) for m in matrices]
    if len(ss) != len(mats) or len(ss) < 1:
        raise ValueError("need one matrix per sample")

    def ev(s: float) -> np.ndarray:
        if s <= ss[0]:
            return mats[0]
        if s >= ss[-1]:
            return mats[-1]
        k = int(np.searchsorted(ss, s, side="right")) - 1
        if ss[k] == s:
            return mats[k]
        t = (s - ss[k]) / (ss[k + 1] - ss[k])
        return (1.0 - t) * mats[k] + t * mats[k + 1]

    return SampledFamily(ss, ev)


@dataclass(frozen=True)
class SegmentRecord:
    s_lo: float
    s_hi: float
    windows: tuple
    rank_lo: int
    rank_hi: int

    @property
    def contribution(self) -> int:
        return self.rank_lo - self.rank_hi


@dataclass(frozen=True)
class SampleRecord:
    s: float
    nu: int
    eigs_near: tuple
    rank_nminus: int
    segment_id: int


@dataclass(frozen=True)
class FlowResult:
    total: int
    segments: tuple
    samples: tuple
    partition: tuple
    interpolated: bool = False

    def nu_trace(self):
        return [(r.s, r.nu) for r in self.samples]


def _spectrum_values(value, curve, tol: Tolerances, s: float) -> np.ndarray:
    """Finite eigenvalues (with multiplicity) plus admissibility guards."""
    if isinstance(value, PencilRelation):
        spec = relation_spectrum(value, tol)
        if spec.all_of_c:
            raise NotAdmissibleAt(s, f"spectrum is all of C: {spec.reason}")
        vals = spec.finite_values()
    else:
        vals = scipy.linalg.eigvals(np.asarray(value, dtype=complex))
    bad = [complex(z) for z in vals
           if any(abs(z - lp) < tol.cross_tol for lp in curve.limit_points())]
    if bad:
        raise NotAdmissibleAt(
            s, "spectrum touches the closure of the curve outside the curve itself",
            bad,
        )
    return np.asarray(vals, dtype=complex)


def _match(za: np.ndarray, zb: np.ndarray):
    """Pair eigenvalues of consecutive samples by optimal assignment."""
    if za.size == 0 or zb.size == 0:
        return [], 0.0, list(za) + list(zb)
    cost = np.abs(za[:, None] - zb[None, :])
    ri, ci = linear_sum_assignment(cost)
    pairs = [(complex(za[i]), complex(zb[j])) for i, j in zip(ri, ci)]
    m_max = float(max(abs(u - v) for u, v in pairs))
    unmatched = [complex(z) for k, z in enumerate(za) if k not in set(ri)]
    unmatched += [complex(z) for k, z in enumerate(zb) if k not in set(ci)]
    return pairs, m_max, unmatched


def _sites(curve, za, zb, pairs, m_max, tol: Tolerances) -> list:
    sites = []
    for z in list(za) + list(zb):
        if curve.distance(z) < tol.cross_tol:
            sites.append(curve.coord(z))
    for u, v in pairs:
        du, dv = curve.distance(u), curve.distance(v)
        if du < tol.cross_tol or dv < tol.cross_tol:
            continue
        if curve.side(u) != curve.side(v):
            t = du / (du + dv)
            c = curve.coord(u + t * (v - u))
            if curve.contains_coord(c):
                sites.append(c)
        elif min(du, dv) <= 2.0 * m_max:
            c = curve.coord(u if du <= dv else v)
            if curve.contains_coord(c):
                sites.append(c)
    return sorted(sites)


def _windows_overlap(w1, w2) -> bool:
    d1, d2 = w1.describe(), w2.describe()
    if d1["kind"] == "box" and d2["kind"] == "box":
        return not (
            d1["re"][1] <= d2["re"][0] or d2["re"][1] <= d1["re"][0]
            or d1["im"][1] <= d2["im"][0] or d2["im"][1] <= d1["im"][0]
        )
    c1 = complex(*d1["center"]) if "center" in d1 else None
    c2 = complex(*d2["center"]) if "center" in d2 else None
    if c1 is not None and c2 is not None:
        return abs(c1 - c2) < d1["radius"] + d2["radius"]
    return True  # mixed kinds: be conservative


def _build_windows(curve, all_vals, sites, m_max, tol: Tolerances):
    """Choose disjoint test windows covering the sites, or None if impossible."""
    if not sites:
        return []
    clusters = [[sites[0], sites[0]]]
    for c in sites[1:]:
        if c - clusters[-1][1] <= 16.0 * tol.cross_tol:
            clusters[-1][1] = c
        else:
            clusters.append([c, c])

    for _ in range(len(sites) + 1):
        windows = []
        failed = False
        for lo, hi in clusters:
            center, halfspan = (lo + hi) / 2.0, (hi - lo) / 2.0
            cap = curve.window_cap(center)
            if cap <= 0.0:
                return None
            chosen = None
            size = cap
            while size > max(8.0 * tol.cross_tol, halfspan * 1e-3 if halfspan else 0.0):
                win = curve.make_window(center, halfspan + size, size)
                triple = TestDomainTriple(curve, win)
                if triple.valid() and all(
                    win.boundary_distance(lp) >= size / 2.0
                    for lp in curve.limit_points()
                ):
                    margin = min(
                        (win.boundary_distance(z) for z in all_vals), default=np.inf
                    )
                    if margin >= size / 5.0 and m_max <= size / 10.0:
                        chosen = win
                        break
                size /= 2.0
            if chosen is None:
                failed = True
                break
            windows.append(chosen)
        if not failed:
            overlap = None
            for i in range(len(windows)):
                for j in range(i + 1, len(windows)):
                    if _windows_overlap(windows[i], windows[j]):
                        overlap = (i, j)
                        break
                if overlap:
                    break
            if overlap is None:
                return windows
            i, j = overlap
            clusters[i] = [min(clusters[i][0], clusters[j][0]),
                           max(clusters[i][1], clusters[j][1])]
            del clusters[j]
            continue
        if len(clusters) > 1:
            gaps = [clusters[k + 1][0] - clusters[k][1] for k in range(len(clusters) - 1)]
            k = int(np.argmin(gaps))
            clusters[k] = [clusters[k][0], clusters[k + 1][1]]
            del clusters[k + 1]
            continue
        return None
    return None


def _count_minus(curve, windows, vals, tol: Tolerances) -> int:
    total = 0
    for win in windows:
        t = TestDomainTriple(curve, win)
        total += sum(1 for z in vals if t.classify(complex(z), tol.cross_tol) == "-")
    return total


def _try_segment(curve, za, zb, tol: Tolerances):
    pairs, m_max, unmatched = _match(za, zb)
    for z in unmatched:
        if curve.distance(z) < 2.0 * _NEAR_RADIUS:
            return None  # finite/infinite exchange near the curve: refine
    sites = _sites(curve, za, zb, pairs, m_max, tol)
    if not sites:
        return SegmentRecord(0.0, 0.0, (), 0, 0)
    windows = _build_windows(curve, np.concatenate([za, zb]), sites, m_max, tol)
    if windows is None:
        return None
    for u, v in pairs:
        inside = any(w.contains(u) or w.contains(v) for w in windows)
        if not inside and any(w.segment_intersects(u, v) for w in windows):
            return None
    rank_lo = _count_minus(curve, windows, za, tol)
    rank_hi = _count_minus(curve, windows, zb, tol)
    return SegmentRecord(0.0, 0.0, tuple(windows), rank_lo, rank_hi)


def spectral_flow(
    family: SampledFamily, curve, tol: Tolerances | None = None, refine_max: int = 20,
    interpolated: bool = False,
) -> FlowResult:
    """Spectral flow of the family through the co-oriented curve.

    The partition is refined by bisection (new samples requested from the
    family evaluator) until every segment carries test windows with no
    eigenvalue on their boundaries throughout; raises RefinementExceeded
    when ``refine_max`` bisections cannot isolate the crossings.
    """
    tol = tol or Tolerances()
    ss = sorted(float(s) for s in family.samples)
    if len(ss) != len(set(ss)):
        raise ValueError("sample parameters must be distinct")
    data = {s: _spectrum_values(family.value(s), curve, tol, s) for s in ss}
    segments: list[SegmentRecord] = []

    def process(s_lo: float, s_hi: float, depth: int):
        rec = _try_segment(curve, data[s_lo], data[s_hi], tol)
        if rec is not None:
            segments.append(
                SegmentRecord(s_lo, s_hi, rec.windows, rec.rank_lo, rec.rank_hi)
            )
            return
        if depth >= refine_max:
            raise RefinementExceeded(s_lo, s_hi)
        mid = 0.5 * (s_lo + s_hi)
        if mid <= s_lo or mid >= s_hi:
            raise RefinementExceeded(s_lo, s_hi, "interval too small to bisect")
        data[mid] = _spectrum_values(family.value(mid), curve, tol, mid)
        process(s_lo, mid, depth + 1)
        process(mid, s_hi, depth + 1)

    for a, b in zip(ss[:-1], ss[1:]):
        process(a, b, 0)

    total = int(sum(seg.contribution for seg in segments))
    partition = tuple(sorted(data))
    samples = []
    for k, s in enumerate(partition):
        vals = data[s]
        nu = int(sum(1 for z in vals if curve.distance(complex(z)) < tol.cross_tol))
        near = tuple(
            complex(z) for z in vals if curve.distance(complex(z)) < _NEAR_RADIUS
        )
        if k < len(segments):
            seg_id, rk = k, segments[k].rank_lo
        else:
            seg_id, rk = len(segments) - 1, (segments[-1].rank_hi if segments else 0)
        samples.append(SampleRecord(s, nu, near, rk, seg_id))
    return FlowResult(total, tuple(segments), tuple(samples), partition, interpolated)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    nu: int
    witness: tuple
    offending: tuple = ()
    reason: str = ""


def check_admissible(value, curve, tol: Tolerances | None = None, window=None) -> AdmissibilityReport:
    """Can the spectrum near the curve be captured by a finite test domain?

    At finite dimension this fails only when the spectrum is all of C,
    when spectrum sits on the closure of the curve outside the curve, or
    when a user-imposed window fails to capture all of sigma(A) on the
    curve (the offending points are reported).
    """
    tol = tol or Tolerances()
    if isinstance(value, PencilRelation):
        spec = relation_spectrum(value, tol)
        if spec.all_of_c:
            return AdmissibilityReport(False, 0, (), (), spec.reason)
        vals = spec.finite_values()
    else:
        vals = scipy.linalg.eigvals(np.asarray(value, dtype=complex))
    bad = [complex(z) for z in vals
           if any(abs(z - lp) < tol.cross_tol for lp in curve.limit_points())]
    if bad:
        return AdmissibilityReport(
            False, 0, (), tuple(bad),
            "spectrum touches the closure of the curve off the curve itself",
        )
    on = [complex(z) for z in vals if curve.distance(complex(z)) < tol.cross_tol]
    nu = len(on)
    if window is not None:
        missed = [z for z in on if not window.contains(z)]
        extra = [
            complex(z) for z in vals
            if window.contains(complex(z)) and curve.distance(complex(z)) >= tol.cross_tol
        ]
        if missed:
            return AdmissibilityReport(
                False, nu, (window,), tuple(sorted(on, key=lambda z: (z.real, z.imag))),
                "window does not capture all spectrum on the curve",
            )
        if extra:
            return AdmissibilityReport(
                False, nu, (window,), tuple(extra),
                "window contains spectrum that is not on the curve",
            )
        return AdmissibilityReport(True, nu, (window,))
    sites = sorted(curve.coord(z) for z in on)
    witness = _build_windows(curve, vals, sites, 0.0, tol)
    if witness is None:
        return AdmissibilityReport(
            False, nu, (), tuple(on), "no isolating window could be constructed"
        )
    return AdmissibilityReport(True, nu, tuple(witness))


@dataclass(frozen=True)
class UnitaryAdmissibilityReport:
    h_unitary: bool
    h_contractive: bool
    nu: int
    kernel_dim: int
    isolation_radius: float
    s1_deviation: float


def check_unitary_admissible(a, h=None, tol: Tolerances | None = None) -> UnitaryAdmissibilityReport:
    """Admissibility of an h-unitary (or h-contractive) operator at 1.

    Verifies the inner-product compatibility, that no eigenvalue sits off
    the unit circle beyond tolerance (h-unitary case), and isolates 1 with
    total multiplicity equal to dim ker(A - I).
    """
    tol = tol or Tolerances()
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    h = np.eye(n) if h is None else np.asarray(h, dtype=complex)
    hh = a.conj().T @ h @ a
    scale = max(1.0, float(np.abs(h).max()))
    unitary = bool(np.abs(hh - h).max() <= 1e-8 * scale)
    gap_mat = (h - hh + (h - hh).conj().T) / 2.0
    contractive = bool(scipy.linalg.eigvalsh(gap_mat).min() >= -1e-8 * scale)
    if not (unitary or contractive):
        raise NotUnitary("operator is neither h-unitary nor an h-contraction")
    vals = scipy.linalg.eigvals(a)
    s1_dev = float(np.abs(np.abs(vals) - 1.0).max()) if vals.size else 0.0
    if unitary and s1_dev > 1e-8:
        raise NotUnitary(
            f"h-unitary operator has spectrum off the unit circle (deviation {s1_dev:.2e})"
        )
    near_one = np.abs(vals - 1.0) < tol.cross_tol
    nu = int(np.count_nonzero(near_one))
    others = vals[~near_one]
    radius = float(np.abs(others - 1.0).min() / 2.0) if others.size else np.inf
    kernel_dim = n - rank(a - np.eye(n), tol.rank_tol, scale=max(1.0, float(np.abs(a).max())))
    return UnitaryAdmissibilityReport(unitary, contractive, nu, kernel_dim, radius, s1_dev)


@dataclass(frozen=True)
class EmbeddingReport:
    sf_ambient: int
    sf_restricted: int
    m: int
    equal: bool


def sf_embedding_check(
    family: SampledFamily, invariant: Frame, curve,
    tol: Tolerances | None = None, refine_max: int = 20,
) -> EmbeddingReport:
    """Spectral flow of a family versus its restriction to an invariant subspace.

    Requires A_s to preserve the subspace at every evaluated sample; the
    multiplicity excess m = nu(A_s) - nu(A_s|_X) must be constant (then
    m >= 0 and the two flows agree).
    """
    tol = tol or Tolerances()
    fx = invariant.matrix

    def restricted(s: float) -> np.ndarray:
        a = np.asarray(family.value(s), dtype=complex)
        image = a @ fx
        resid = image - fx @ (fx.conj().T @ image)
        scale = max(1.0, float(np.abs(a).max()))
        if resid.size and np.abs(resid).max() > 1e-9 * scale:
            raise NotInvariant(
                f"at s={s}: family does not preserve the subspace "
                f"(residual {np.abs(resid).max():.2e})"
            )
        return fx.conj().T @ a @ fx

    sub = SampledFamily(list(family.samples), restricted)
    flow_amb = spectral_flow(family, curve, tol, refine_max)
    flow_sub = spectral_flow(sub, curve, tol, refine_max)

    def nu_of(mat) -> int:
        vals = scipy.linalg.eigvals(np.asarray(mat, dtype=complex))
        return int(sum(1 for z in vals if curve.distance(complex(z)) < tol.cross_tol))

    points = sorted(set(family.evaluated_points()) | set(sub.evaluated_points()))
    ms = [nu_of(family.value(s)) - nu_of(restricted(s)) for s in points]
    if len(set(ms)) > 1:
        raise NonConstantM(f"multiplicity excess varies along the path: {sorted(set(ms))}")
    m = ms[0] if ms else 0
    return EmbeddingReport(flow_amb.total, flow_sub.total, m, flow_amb.total == flow_sub.total)
