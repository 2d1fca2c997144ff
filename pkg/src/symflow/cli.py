"""Command-line harness: scenario ingestion, dispatch, and report emission.

Scenarios are single JSON documents; complex scalars are [re, im] pairs,
matrices are row-major nested arrays, frames are lists of column vectors.
Exit codes: 0 success, 2 scenario parse error, 3 hypothesis failure
(with the owning module's diagnostic), 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .contours import BoxWindow, DiskWindow
from .curves import ImaginaryAxisInterval, PositiveRealAxis, RealAxisInterval
from .errors import (
    NoConvergence,
    RefinementExceeded,
    ScenarioError,
    SymflowError,
)
from .flow import FlowResult, SampledFamily, spectral_flow
from .gap import gap
from .lagrangian import pair_index
from .linalg import Frame, Tolerances, orthonormalize
from .maslov import (
    CurveSample,
    SplitCurve,
    catenate,
    lagrangian_retract,
    maslov_boxplus,
    maslov_index,
    maslov_properties_check,
    reverse,
)
from .relations import (
    PencilRelation,
    relation_fredholm,
    relation_inverse,
    relation_spectrum,
    spectral_projection,
    spectral_projector_eig,
)
from .symplectic import (
    classify,
    compute_splitting,
    make_space,
    make_space_from_j,
    splitting_from_frames,
)

_FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FLOAT_FMT % float(x)


# -- scenario parsing ----------------------------------------------------------


def _complex(v, where: str) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise ScenarioError(f"{where}: expected a number or [re, im] pair, got {v!r}")


def _matrix(rows, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ScenarioError(f"{where}: expected a nested array of rows")
    width = len(rows[0])
    out = np.zeros((len(rows), width), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ScenarioError(f"{where}: ragged rows")
        for j, v in enumerate(row):
            out[i, j] = _complex(v, f"{where}[{i}][{j}]")
    return out


def _vector(entries, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise ScenarioError(f"{where}: expected a vector (list)")
    return np.array([_complex(v, f"{where}[{k}]") for k, v in enumerate(entries)])


def _frame_columns(cols, dim: int, where: str) -> np.ndarray:
    if not isinstance(cols, list):
        raise ScenarioError(f"{where}: expected a list of column vectors")
    if not cols:
        return np.zeros((dim, 0), dtype=complex)
    mat = np.column_stack([_vector(c, f"{where}[{k}]") for k, c in enumerate(cols)])
    if mat.shape[0] != dim:
        raise ScenarioError(f"{where}: column length {mat.shape[0]} != dim {dim}")
    return mat


def _encode_complex(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _encode_matrix(m: np.ndarray) -> list:
    return [[_encode_complex(complex(v)) for v in row] for row in np.asarray(m)]


def _encode_frame(f: Frame) -> list:
    return [[_encode_complex(complex(v)) for v in f.matrix[:, j]] for j in range(f.rank)]


def _tolerances(doc: dict, args) -> Tolerances:
    t = doc.get("tolerances", {})
    if not isinstance(t, dict):
        raise ScenarioError("tolerances: expected an object")
    rank_tol = args.tol_rank if args.tol_rank is not None else t.get("rank_tol", 1e-9)
    cross_tol = args.tol_cross if args.tol_cross is not None else t.get("cross_tol", 1e-7)
    quad = args.quad_nodes if args.quad_nodes is not None else t.get("quad_nodes", 64)
    try:
        return Tolerances(float(rank_tol), float(cross_tol), int(quad))
    except ValueError as exc:
        raise ScenarioError(f"tolerances: {exc}") from exc


def _space_of(doc: dict, tol: Tolerances):
    spec = doc.get("space")
    if not isinstance(spec, dict) or "dim" not in spec:
        raise ScenarioError("space: expected an object with 'dim' and 'J' or 'Omega'")
    dim = int(spec["dim"])
    ip = _matrix(spec["ip"], "space.ip") if "ip" in spec else np.eye(dim, dtype=complex)
    if "J" in spec:
        return make_space_from_j(ip, _matrix(spec["J"], "space.J"), tol)
    if "Omega" in spec:
        return make_space(ip, _matrix(spec["Omega"], "space.Omega"), tol)
    raise ScenarioError("space: one of 'J' or 'Omega' is required")


def _curve_spec(doc, dim: int, samples: list, ip, tol, name: str):
    """Return s -> raw columns for one curve of subspaces."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ScenarioError(f"{name}: expected an object with 'kind'")
    kind = doc["kind"]
    if kind == "fixed":
        mat = _frame_columns(doc.get("frame"), dim, f"{name}.frame")
        return lambda s: mat
    if kind == "rotation":
        base = _vector(doc.get("base"), f"{name}.base")
        partner = _vector(doc.get("partner"), f"{name}.partner")
        theta = doc.get("theta")
        if not isinstance(theta, list) or len(theta) < 2:
            raise ScenarioError(f"{name}.theta: expected a list of sampled angles")
        thetas = [float(t) for t in theta]
        # the angle samples live on their own uniform grid over [0, 1], so
        # the curve can be resampled freely (--samples)
        grid = np.linspace(0.0, 1.0, len(thetas))

        def angle(s: float) -> float:
            return float(np.interp(s, grid, thetas))

        return lambda s: (base + np.exp(1j * angle(s)) * partner).reshape(dim, 1)
    if kind == "frames":
        frames = doc.get("frames")
        if not isinstance(frames, list) or len(frames) != len(samples):
            raise ScenarioError(f"{name}.frames: expected one frame per sample")
        mats = [_frame_columns(f, dim, f"{name}.frames[{k}]") for k, f in enumerate(frames)]
        ss = [float(s) for s in samples]

        def interp(s: float) -> np.ndarray:
            if s <= ss[0]:
                return mats[0]
            if s >= ss[-1]:
                return mats[-1]
            k = int(np.searchsorted(ss, s, side="right")) - 1
            if ss[k] == s:
                return mats[k]
            t = (s - ss[k]) / (ss[k + 1] - ss[k])
            return (1.0 - t) * mats[k] + t * mats[k + 1]

        return interp
    raise ScenarioError(f"{name}.kind: unknown curve kind {kind!r}")


def build_split_curve(doc: dict, tol: Tolerances, n_samples: int | None = None) -> SplitCurve:
    space = _space_of(doc, tol)
    count = n_samples or int(doc.get("samples", 17))
    if count < 2:
        raise ScenarioError("samples: need at least 2")
    samples = list(np.linspace(0.0, 1.0, count))
    lam_fn = _curve_spec(doc.get("lambda"), space.dim, samples, space.ip, tol, "lambda")
    mu_fn = _curve_spec(doc.get("mu"), space.dim, samples, space.ip, tol, "mu")

    split_spec = doc.get("splitting", "auto")
    if split_spec == "auto":
        fixed_split = compute_splitting(space, tol)
        split_fn = lambda s: fixed_split
    elif isinstance(split_spec, dict):
        plus = _frame_columns(split_spec.get("plus"), space.dim, "splitting.plus")
        minus = _frame_columns(split_spec.get("minus"), space.dim, "splitting.minus")
        fixed_split = splitting_from_frames(space, plus, minus, tol)
        split_fn = lambda s: fixed_split
    else:
        raise ScenarioError("splitting: expected 'auto' or {plus, minus}")

    lam_interp = doc.get("lambda", {}).get("kind") == "frames"
    mu_interp = doc.get("mu", {}).get("kind") == "frames"
    grid = set(samples)

    def ev(s: float) -> CurveSample:
        split = split_fn(s)
        if lam_interp and s not in grid:
            lam = lagrangian_retract(split, lam_fn(s), tol)
        else:
            lam = orthonormalize(lam_fn(s), space.ip, tol)
        if mu_interp and s not in grid:
            mu = lagrangian_retract(split, mu_fn(s), tol)
        else:
            mu = orthonormalize(mu_fn(s), space.ip, tol)
        return CurveSample(space, split, lam, mu)

    return SplitCurve(space.ip, samples, ev, interpolated=lam_interp or mu_interp)


def _window_of(doc, where: str):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ScenarioError(f"{where}: expected an object with 'kind'")
    if doc["kind"] == "disk":
        return DiskWindow(_complex(doc.get("center"), f"{where}.center"),
                          float(doc.get("radius", 0.0)))
    if doc["kind"] == "box":
        re, im = doc.get("re"), doc.get("im")
        if not (isinstance(re, list) and isinstance(im, list)):
            raise ScenarioError(f"{where}: box needs 're' and 'im' ranges")
        return BoxWindow(float(re[0]), float(re[1]), float(im[0]), float(im[1]))
    raise ScenarioError(f"{where}.kind: unknown window kind")


def _ell_of(doc) -> object:
    if doc is None:
        return PositiveRealAxis()
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ScenarioError("ell: expected an object with 'kind'")
    kind = doc["kind"]
    orient = doc.get("coorientation", "up")
    if kind == "positive-real-axis":
        return PositiveRealAxis(positive_side_up=(orient != "down"))
    if kind == "real-interval":
        return RealAxisInterval(float(doc.get("center", -1.0)),
                                float(doc.get("halfwidth", 0.25)),
                                positive_side_up=(orient != "down"))
    if kind == "imaginary-interval":
        return ImaginaryAxisInterval(float(doc.get("lo", -1.0)), float(doc.get("hi", 1.0)),
                                     positive_side_right=(orient != "left"))
    raise ScenarioError(f"ell.kind: unknown curve kind {kind!r}")


def build_family(doc: dict, tol: Tolerances) -> SampledFamily:
    fam = doc.get("family")
    if not isinstance(fam, dict) or "kind" not in fam:
        raise ScenarioError("family: expected an object with 'kind'")
    samples = fam.get("samples")
    if not isinstance(samples, list) or len(samples) < 2:
        raise ScenarioError("family.samples: need at least two sample parameters")
    ss = [float(s) for s in samples]
    if fam["kind"] == "matrices":
        values = fam.get("values")
        if not isinstance(values, list) or len(values) != len(ss):
            raise ScenarioError("family.values: one matrix per sample required")
        mats = [_matrix(v, f"family.values[{k}]") for k, v in enumerate(values)]
        from .flow import family_from_matrices

        return family_from_matrices(ss, mats)
    if fam["kind"] == "pencils":
        es = fam.get("E")
        fs = fam.get("F")
        if not (isinstance(es, list) and isinstance(fs, list)
                and len(es) == len(fs) == len(ss)):
            raise ScenarioError("family.E/family.F: one pencil per sample required")
        e_mats = [_matrix(v, f"family.E[{k}]") for k, v in enumerate(es)]
        f_mats = [_matrix(v, f"family.F[{k}]") for k, v in enumerate(fs)]

        def ev(s: float) -> PencilRelation:
            k = int(np.searchsorted(ss, s, side="right")) - 1
            k = max(0, min(k, len(ss) - 2))
            if ss[k + 1] == s:
                k += 1
            t = 0.0 if ss[k] == s else (s - ss[k]) / (ss[k + 1] - ss[k])
            return PencilRelation((1 - t) * e_mats[k] + t * e_mats[min(k + 1, len(ss) - 1)],
                                  (1 - t) * f_mats[k] + t * f_mats[min(k + 1, len(ss) - 1)])

        return SampledFamily(ss, ev)
    raise ScenarioError(f"family.kind: unknown family kind {fam['kind']!r}")


# -- report emission -----------------------------------------------------------


def _flow_report(flow: FlowResult) -> dict:
    return {
        "total": flow.total,
        "interpolated": flow.interpolated,
        "segments": [
            {
                "s": [seg.s_lo, seg.s_hi],
                "windows": [w.describe() for w in seg.windows],
                "rank_minus": [seg.rank_lo, seg.rank_hi],
                "contribution": seg.contribution,
            }
            for seg in flow.segments
        ],
        "nu_trace": [[r.s, r.nu] for r in flow.samples],
    }


def _crossings_csv(flow: FlowResult) -> str:
    width = max((len(r.eigs_near) for r in flow.samples), default=0)
    header = ["s"]
    for k in range(width):
        header += [f"re_eig_{k + 1}", f"im_eig_{k + 1}"]
    header += ["rank_P_Nminus", "segment_id"]
    lines = [",".join(header)]
    for r in flow.samples:
        row = [_fmt(r.s)]
        eigs = sorted(r.eigs_near, key=lambda z: (z.real, z.imag))
        for k in range(width):
            if k < len(eigs):
                row += [_fmt(eigs[k].real), _fmt(eigs[k].imag)]
            else:
                row += ["nan", "nan"]
        row += [str(r.rank_nminus), str(r.segment_id)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _emit(args, report: dict, flow: FlowResult | None = None):
    out = Path(args.out) if args.out else None
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    if args.emit in ("json", "both"):
        (out / "report.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if flow is not None and args.emit in ("csv", "both"):
        (out / "crossings.csv").write_text(_crossings_csv(flow), encoding="utf-8")


# -- commands ------------------------------------------------------------------


def _cmd_maslov(doc: dict, args) -> int:
    tol = _tolerances(doc, args)
    curve = build_split_curve(doc, tol, args.samples)
    res = maslov_index(curve, tol, refine_max=args.refine_max)
    print(f"Mas = {res.value}")
    if res.via_uv is not None:
        print(f"via UV^-1 = {res.via_uv}")
    report = {
        "command": "maslov",
        "value": res.value,
        "via_uv": res.via_uv,
        "flow": _flow_report(res.flow),
        "cond_trace": [
            [float(s), curve.at(float(s)).space.cond_j] for s in curve.samples
        ],
    }
    _emit(args, report, res.flow)
    return 0


def _cmd_sf(doc: dict, args) -> int:
    tol = _tolerances(doc, args)
    fam = build_family(doc, tol)
    ell = _ell_of(doc.get("ell"))
    flow = spectral_flow(fam, ell, tol, refine_max=args.refine_max)
    print(f"SF = {flow.total}")
    report = {"command": "sf", "value": flow.total, "ell": ell.describe(),
              "flow": _flow_report(flow)}
    _emit(args, report, flow)
    return 0


def _cmd_gap(doc: dict, args) -> int:
    tol = _tolerances(doc, args)
    pairs = doc.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise ScenarioError("pairs: expected a nonempty list of {M, N} objects")
    dim = int(doc.get("dim", 0)) or None
    reports = []
    for k, pair in enumerate(pairs):
        if not isinstance(pair, dict):
            raise ScenarioError(f"pairs[{k}]: expected an object")
        mcols = pair.get("M")
        ncols = pair.get("N")
        if mcols is None or ncols is None:
            raise ScenarioError(f"pairs[{k}]: both 'M' and 'N' are required")
        d = dim or (len(mcols[0]) if mcols else len(ncols[0]))
        m = orthonormalize(_frame_columns(mcols, d, f"pairs[{k}].M"), None, tol) \
            if mcols else Frame.zero(d)
        n = orthonormalize(_frame_columns(ncols, d, f"pairs[{k}].N"), None, tol) \
            if ncols else Frame.zero(d)
        g = gap(m, n)
        print(f"gap = {g.gap:.6f}")
        reports.append({"delta_MN": g.delta_mn, "delta_NM": g.delta_nm, "gap": g.gap})
    _emit(args, {"command": "gap", "pairs": reports})
    return 0


def _cmd_relations(doc: dict, args) -> int:
    tol = _tolerances(doc, args)
    e = _matrix(doc.get("E"), "E")
    f = _matrix(doc.get("F"), "F")
    pencil = PencilRelation(e, f)
    spec = relation_spectrum(pencil, tol)
    kernel, coker, index = relation_fredholm(pencil, tol)
    report = {
        "command": "relations",
        "fredholm": {"kernel_dim": kernel, "coker_dim": coker, "index": index},
        "indeterminant_dim": pencil.indeterminant_part(tol).rank,
    }
    if spec.all_of_c:
        print("spectrum = C (" + spec.reason + ")")
        report["spectrum"] = {"all_of_c": True, "reason": spec.reason}
    else:
        vals = ", ".join(
            f"{v.real:+.6f}{v.imag:+.6f}j (x{m})" for v, m in spec.eigenvalues
        )
        print(f"spectrum = {{{vals}}}; infinite multiplicity {spec.infinite_multiplicity}")
        report["spectrum"] = {
            "all_of_c": False,
            "eigenvalues": [[_encode_complex(v), m] for v, m in spec.eigenvalues],
            "infinite_multiplicity": spec.infinite_multiplicity,
        }
    if "window" in doc:
        window = _window_of(doc["window"], "window")
        p, rk = spectral_projection(pencil, window, tol)
        p_eig = spectral_projector_eig(pencil, window, tol)
        agree = float(np.abs(p - p_eig).max())
        idem = float(np.abs(p @ p - p).max())
        print(f"projection rank = {rk}; idempotency defect = {idem:.3e}; "
              f"eig-route agreement = {agree:.3e}")
        report["projection"] = {
            "rank": rk,
            "idempotency_defect": idem,
            "eig_route_agreement": agree,
            "matrix": _encode_matrix(p),
        }
    _emit(args, report)
    return 0


def _check_maslov(doc: dict, args, tol: Tolerances) -> tuple[int, dict]:
    curve = build_split_curve(doc, tol, args.samples)
    lines = []
    report: dict = {"command": "check", "scenario": "maslov"}

    for s in curve.samples:
        cs = curve.at(float(s))
        for name, f in (("lambda", cs.lam), ("mu", cs.mu)):
            kind = classify(cs.space, f, tol)
            if kind != "lagrangian":
                raise SymflowError(f"at s={s}: {name} classifies '{kind}'")
        idx = pair_index(cs.space, cs.lam, cs.mu, tol)
        if idx.index != 0:
            raise SymflowError(f"at s={s}: index {idx.index} != 0")
    lines.append("per-sample lagrangian + index-0 checks: pass")

    props = maslov_properties_check(curve, tol, args.refine_max)
    checks = {
        "block vs UV route": True,  # maslov_index raises on mismatch
        "reparametrization invariance": props.reparametrization_invariant,
        "catenation additivity": props.catenation_additive,
        "flipping identity": props.flipping_identity_holds,
        "vanishing (constant intersection)": props.vanishing_holds,
    }
    bp = maslov_boxplus(curve, tol, args.refine_max)
    checks["boxplus triple equality"] = bp.all_equal
    cat0 = catenate(curve, reverse(curve), tol)
    checks["loop + reverse = 0"] = maslov_index(cat0, tol, args.refine_max).value == 0

    rng = np.random.default_rng(args.seed)
    dim = curve.at(curve.a).space.dim
    tri_ok = True
    for _ in range(5):
        fr = [
            orthonormalize(
                rng.standard_normal((dim, 1)) + 1j * rng.standard_normal((dim, 1)),
                curve.ip, tol,
            )
            for _ in range(3)
        ]
        g01, g12, g02 = gap(fr[0], fr[1]).gap, gap(fr[1], fr[2]).gap, gap(fr[0], fr[2]).gap
        tri_ok = tri_ok and (g02 <= g01 + g12 + 1e-10)
    checks["gap triangle inequality (seeded)"] = tri_ok

    failures = [k for k, ok in checks.items() if not ok]
    for name, ok in checks.items():
        lines.append(f"{name}: {'pass' if ok else 'FAIL'}")
    for ln in lines:
        print(ln)
    report["value"] = props.value
    report["checks"] = {k: bool(v) for k, v in checks.items()}

    if args.dump_normalized:
        norm = _normalized_scenario(doc, curve, tol)
        Path(args.dump_normalized).write_text(
            json.dumps(norm, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return (3 if failures else 0), report


def _normalized_scenario(doc: dict, curve: SplitCurve, tol: Tolerances) -> dict:
    cs0 = curve.at(curve.a)
    out = {
        "kind": "maslov",
        "space": {
            "dim": cs0.space.dim,
            "ip": _encode_matrix(cs0.space.ip),
            "Omega": _encode_matrix(cs0.space.omega),
        },
        "splitting": {
            "plus": [
                [_encode_complex(complex(v)) for v in cs0.splitting.plus_h[:, j]]
                for j in range(cs0.splitting.dim_plus)
            ],
            "minus": [
                [_encode_complex(complex(v)) for v in cs0.splitting.minus_h[:, j]]
                for j in range(cs0.splitting.dim_minus)
            ],
        },
        "samples": len(curve.samples),
        "lambda": {"kind": "frames",
                   "frames": [_encode_frame(curve.at(float(s)).lam) for s in curve.samples]},
        "mu": {"kind": "frames",
               "frames": [_encode_frame(curve.at(float(s)).mu) for s in curve.samples]},
        "tolerances": {"rank_tol": tol.rank_tol, "cross_tol": tol.cross_tol,
                       "quad_nodes": tol.quad_nodes},
    }
    return out


def _check_sf(doc: dict, args, tol: Tolerances) -> tuple[int, dict]:
    fam = build_family(doc, tol)
    ell = _ell_of(doc.get("ell"))
    base = spectral_flow(fam, ell, tol, args.refine_max)
    ss = sorted(fam.samples)
    mid = ss[len(ss) // 2]
    left = SampledFamily([s for s in ss if s <= mid], fam.evaluator)
    right = SampledFamily([s for s in ss if s >= mid], fam.evaluator)
    add_ok = (
        spectral_flow(left, ell, tol, args.refine_max).total
        + spectral_flow(right, ell, tol, args.refine_max).total
        == base.total
    )
    dense = SampledFamily(
        sorted(set(ss) | {0.5 * (a + b) for a, b in zip(ss[:-1], ss[1:])}), fam.evaluator
    )
    part_ok = spectral_flow(dense, ell, tol, args.refine_max).total == base.total
    rev_ok = spectral_flow(fam, ell.reversed(), tol, args.refine_max).total == -base.total
    checks = {
        "path additivity": add_ok,
        "partition independence": part_ok,
        "co-orientation reversal negates": rev_ok,
    }
    for name, ok in checks.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    code = 0 if all(checks.values()) else 3
    return code, {"command": "check", "scenario": "sf", "value": base.total,
                  "checks": {k: bool(v) for k, v in checks.items()}}


def _check_gap(doc: dict, args, tol: Tolerances) -> tuple[int, dict]:
    rng = np.random.default_rng(args.seed)
    pairs = doc.get("pairs") or []
    frames = []
    for k, pair in enumerate(pairs):
        for key in ("M", "N"):
            cols = pair.get(key)
            if cols:
                d = len(cols[0])
                frames.append(orthonormalize(
                    _frame_columns(cols, d, f"pairs[{k}].{key}"), None, tol))
    dim = frames[0].ambient_dim if frames else int(doc.get("dim", 4))
    while len(frames) < 6:
        frames.append(orthonormalize(
            rng.standard_normal((dim, max(1, dim // 2)))
            + 1j * rng.standard_normal((dim, max(1, dim // 2))), None, tol))
    sym_ok = tri_ok = True
    for a in frames:
        for b in frames:
            sym_ok = sym_ok and gap(a, b).gap == gap(b, a).gap
            for c in frames:
                tri_ok = tri_ok and (
                    gap(a, c).gap <= gap(a, b).gap + gap(b, c).gap + 1e-10
                )
    checks = {"gap symmetry": sym_ok, "gap triangle inequality": tri_ok}
    for name, ok in checks.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    code = 0 if all(checks.values()) else 3
    return code, {"command": "check", "scenario": "gap",
                  "checks": {k: bool(v) for k, v in checks.items()}}


def _check_relations(doc: dict, args, tol: Tolerances) -> tuple[int, dict]:
    pencil = PencilRelation(_matrix(doc.get("E"), "E"), _matrix(doc.get("F"), "F"))
    checks = {}
    double = relation_inverse(relation_inverse(pencil))
    checks["double inverse is identity"] = (
        gap(double.subspace_frame(), pencil.subspace_frame()).gap < tol.rank_tol * 10
    )
    spec = relation_spectrum(pencil, tol)
    if "window" in doc and not spec.all_of_c:
        window = _window_of(doc["window"], "window")
        p, rk = spectral_projection(pencil, window, tol)
        p_eig = spectral_projector_eig(pencil, window, tol)
        checks["projector idempotent"] = bool(np.abs(p @ p - p).max() < 1e-8)
        checks["quadrature matches eigendecomposition"] = bool(
            np.abs(p - p_eig).max() < 1e-8
        )
        checks["rank equals interior multiplicity"] = rk == int(
            round(float(np.trace(p).real))
        )
    for name, ok in checks.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    code = 0 if all(checks.values()) else 3
    return code, {"command": "check", "scenario": "relations",
                  "checks": {k: bool(v) for k, v in checks.items()}}


def _cmd_check(doc: dict, args) -> int:
    tol = _tolerances(doc, args)
    kind = doc.get("kind")
    if kind == "maslov":
        code, report = _check_maslov(doc, args, tol)
    elif kind == "sf":
        code, report = _check_sf(doc, args, tol)
    elif kind == "gap":
        code, report = _check_gap(doc, args, tol)
    elif kind == "relations":
        code, report = _check_relations(doc, args, tol)
    else:
        raise ScenarioError(f"check: unsupported scenario kind {kind!r}")
    _emit(args, report)
    return code


_COMMANDS = {
    "maslov": _cmd_maslov,
    "sf": _cmd_sf,
    "gap": _cmd_gap,
    "relations": _cmd_relations,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="symflow",
        description="Maslov index / spectral flow scenario runner",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("scenario", nargs="+",
                        help="scenario JSON path (an optional leading verb like "
                             "'compute' is ignored)")
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--refine-max", type=int, default=20)
    parser.add_argument("--tol-rank", type=float, default=None)
    parser.add_argument("--tol-cross", type=float, default=None)
    parser.add_argument("--quad-nodes", type=int, default=None)
    parser.add_argument("--emit", choices=["csv", "json", "both"], default="both")
    parser.add_argument("--out", default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dump-normalized", default=None,
                        help="(check) write the normalized explicit-frame scenario here")
    args = parser.parse_args(argv)

    path = args.scenario[-1]
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return 2
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: scenario parse failed at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 2
    if not isinstance(doc, dict):
        print("error: scenario must be a JSON object", file=sys.stderr)
        return 2

    try:
        return _COMMANDS[args.command](doc, args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoConvergence, RefinementExceeded) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except SymflowError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
