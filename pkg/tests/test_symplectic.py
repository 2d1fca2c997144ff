import numpy as np
import pytest

from symflow import (
    HForm,
    Tolerances,
    annihilator,
    classify,
    compute_splitting,
    gap,
    make_space,
    make_space_from_j,
    normalize_strong,
    orthonormalize,
    splitting_from_frames,
    splitting_from_metric,
)
from symflow.errors import BadInnerProduct, Degenerate, InvalidSplitting, NotSkew
from symflow.sampling import canonical_space, random_hpd, random_lagrangian_frame


def canonical_c2():
    return make_space_from_j(np.eye(2), np.diag([1j, -1j]))


class TestMakeSpace:
    def test_canonical(self):
        sp = canonical_c2()
        assert sp.dim == 2
        assert abs(sp.cond_j - 1.0) < 1e-12

    def test_definite_j_is_valid_form(self):
        # J = diag(i, i) is a fine form; the splitting has empty minus part
        sp = make_space_from_j(np.eye(2), np.diag([1j, 1j]))
        split = compute_splitting(sp)
        assert split.dim_plus == 2 and split.dim_minus == 0

    def test_degenerate(self):
        with pytest.raises(Degenerate):
            make_space_from_j(np.eye(2), np.zeros((2, 2)))

    def test_not_skew(self):
        with pytest.raises(NotSkew):
            make_space(np.eye(2), np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_bad_inner_product(self):
        with pytest.raises(BadInnerProduct):
            make_space(np.array([[1.0, 2.0], [0.0, 1.0]]), np.diag([1j, -1j]))

    def test_skew_symmetry_of_form_values(self, rng):
        sp, _ = canonical_space(2)
        for _ in range(5):
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            y = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            assert abs(sp.form(y, x) + np.conj(sp.form(x, y))) < 1e-12

    def test_j_skew_adjoint_for_metric(self, rng):
        n = 4
        ip = random_hpd(rng, n)
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        omega = (a - a.conj().T) / 2.0
        sp = make_space(ip, omega)
        # <Jx, y> = -<x, Jy> for the ambient metric
        for _ in range(5):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            lhs = y.conj() @ ip @ (sp.j @ x)
            rhs = -(sp.j @ y).conj() @ ip @ x
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


class TestSplitting:
    def test_canonical_c2(self):
        split = compute_splitting(canonical_c2())
        assert gap(split.plus, orthonormalize(np.eye(2)[:, [0]])).gap < 1e-12
        assert gap(split.minus, orthonormalize(np.eye(2)[:, [1]])).gap < 1e-12

    def test_ill_scaled_j_rescales_h_basis(self):
        # J = diag(i, -i/4): same eigenspaces, but the h-orthonormal basis
        # of the minus part carries the 1/4 scale as a factor 2
        sp = make_space_from_j(np.eye(2), np.diag([1j, -0.25j]))
        split = compute_splitting(sp)
        assert gap(split.plus, orthonormalize(np.eye(2)[:, [0]])).gap < 1e-12
        assert gap(split.minus, orthonormalize(np.eye(2)[:, [1]])).gap < 1e-12
        assert abs(np.abs(split.minus_h[1, 0]) - 2.0) < 1e-10
        assert abs(sp.cond_j - 4.0) < 1e-10

    def test_splitting_invariants_random(self, rng):
        for _ in range(6):
            n = 2 * int(rng.integers(1, 4))
            ip = random_hpd(rng, n)
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            omega = (a - a.conj().T) / 2.0
            try:
                sp = make_space(ip, omega)
            except Degenerate:
                continue
            split = compute_splitting(sp)
            assert split.dim_plus + split.dim_minus == n
            # omega(X+, X-) = 0
            cross = sp.form_gram(split.plus_h, split.minus_h)
            assert np.abs(cross).max() < 1e-9
            # -i omega definite on each part (h-orthonormal bases: gram = I)
            kp = -1j * sp.form_gram(split.plus_h, split.plus_h)
            km = 1j * sp.form_gram(split.minus_h, split.minus_h)
            assert np.abs(kp - np.eye(split.dim_plus)).max() < 1e-9
            assert np.abs(km - np.eye(split.dim_minus)).max() < 1e-9
            # projection: idempotent with the right range
            p = split.proj_plus
            assert np.abs(p @ p - p).max() < 1e-9
            assert np.abs(p @ split.plus_h - split.plus_h).max() < 1e-9
            assert np.abs(p @ split.minus_h).max() < 1e-9

    def test_user_override_validation(self):
        sp = canonical_c2()
        split = splitting_from_frames(sp, np.eye(2)[:, [0]], np.eye(2)[:, [1]])
        assert split.dim_plus == 1
        with pytest.raises(InvalidSplitting):
            splitting_from_frames(sp, np.eye(2)[:, [1]], np.eye(2)[:, [0]])

    def test_oblique_override(self):
        # a valid splitting need not be metric-orthogonal
        sp = canonical_c2()
        eps = 0.5
        plus = np.array([[1.0], [eps]], dtype=complex)
        minus = np.array([[np.conj(eps)], [1.0]], dtype=complex)
        split = splitting_from_frames(sp, plus, minus)
        p = split.proj_plus
        assert np.abs(p @ p - p).max() < 1e-9

    def test_splitting_from_metric(self, rng):
        sp, _ = canonical_space(2)
        metric = random_hpd(rng, 4)
        split = splitting_from_metric(sp, metric)
        kp = -1j * sp.form_gram(split.plus_h, split.plus_h)
        assert np.abs(kp - np.eye(split.dim_plus)).max() < 1e-9


class TestAnnihilator:
    def test_zero_gives_whole_space(self):
        sp = canonical_c2()
        ann = annihilator(sp, sp.zero_frame())
        assert ann.rank == 2

    def test_line_annihilator_canonical(self):
        # omega(e1 + e2, y) = 0 solves to y1 = y2 for J = diag(i, -i)
        sp = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        ann = annihilator(sp, lam)
        assert gap(ann, lam).gap < 1e-12

    def test_full_space_gives_zero(self):
        sp = canonical_c2()
        assert annihilator(sp, sp.full_frame()).rank == 0


class TestClassify:
    def test_examples(self):
        sp = canonical_c2()
        assert classify(sp, sp.frame(np.array([[1.0], [1.0]]))) == "lagrangian"
        assert classify(sp, sp.frame(np.array([[1.0], [0.0]]))) == "symplectic"
        assert classify(sp, sp.zero_frame()) == "isotropic"

    def test_coisotropic_and_none_in_c4(self):
        sp, split = canonical_space(2)
        lam = random_lagrangian_frame(np.random.default_rng(5), split)
        # a lagrangian plus a symplectic line is coisotropic
        co = orthonormalize(np.hstack([lam.matrix, np.eye(4)[:, [0]]]), sp.ip)
        assert classify(sp, co) == "coisotropic"

    def test_lagrangian_annihilator_is_lagrangian(self, rng):
        sp, split = canonical_space(3)
        for _ in range(5):
            lam = random_lagrangian_frame(rng, split)
            assert classify(sp, lam) == "lagrangian"
            ann = annihilator(sp, lam)
            assert classify(sp, ann) == "lagrangian"
            assert gap(ann, lam).gap < 1e-9

    def test_lagrangian_half_dimension(self, rng):
        for m in (1, 2, 3, 4):
            sp, split = canonical_space(m)
            lam = random_lagrangian_frame(rng, split)
            assert 2 * lam.rank == sp.dim


class TestNormalizeStrong:
    def test_already_normalized(self):
        sp = canonical_c2()
        sp2 = normalize_strong(sp)
        assert np.abs(sp2.j @ sp2.j + np.eye(2)).max() < 1e-9
        assert np.abs(sp2.ip - sp.ip).max() < 1e-9

    def test_rescaling_example(self):
        sp = make_space_from_j(np.eye(2), np.diag([2j, -0.5j]))
        sp2 = normalize_strong(sp)
        assert np.abs(sp2.j - np.diag([1j, -1j])).max() < 1e-9

    def test_degenerate(self):
        with pytest.raises((Degenerate, NotSkew)):
            normalize_strong(make_space_from_j(np.eye(2), np.zeros((2, 2))))

    def test_idempotent_and_preserves_classification(self, rng):
        n = 4
        ip = random_hpd(rng, n)
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        omega = (a - a.conj().T) / 2.0
        sp = make_space(ip, omega)
        sp1 = normalize_strong(sp)
        assert np.abs(sp1.j @ sp1.j + np.eye(n)).max() < 1e-9
        sp2 = normalize_strong(sp1)
        assert np.abs(sp2.ip - sp1.ip).max() < 1e-9 * max(1.0, np.abs(sp1.ip).max())
        # omega unchanged: annihilators, hence classifications, agree exactly
        assert np.abs(sp1.omega - sp.omega).max() == 0.0
        split = compute_splitting(sp)
        lam_cols = split.plus_h + split.minus_h  # a lagrangian-like guess
        lam_old = orthonormalize(lam_cols, sp.ip)
        lam_new = orthonormalize(lam_cols, sp1.ip)
        assert classify(sp, lam_old) == classify(sp1, lam_new)


def test_hform_definite(rng):
    sp, split = canonical_space(2)
    hp = HForm(sp, +1)
    hm = HForm(sp, -1)
    gp = hp.gram(split.plus_h)
    gm = hm.gram(split.minus_h)
    assert np.abs(gp - np.eye(2)).max() < 1e-10
    assert np.abs(gm - np.eye(2)).max() < 1e-10
    v = split.plus_h[:, 0]
    assert hp.value(v, v).real > 0
