import numpy as np
import pytest

from symflow import (
    Frame,
    annihilator,
    block_generator_matrix,
    boxplus,
    boxplus_pair,
    boxplus_splitting,
    check_iso_to_lag,
    classify,
    fredholm_via_generators,
    gap,
    generator_of,
    intersect_subspaces,
    make_space_from_j,
    orthonormalize,
    pair_index,
)
from symflow.errors import HypothesisFailed, NotIsotropic, SplitCollision
from symflow.sampling import (
    canonical_space,
    lagrangian_from_unitary,
    random_lagrangian_frame,
    random_unitary,
)
from symflow.symplectic import compute_splitting


def canonical_c2():
    sp = make_space_from_j(np.eye(2), np.diag([1j, -1j]))
    return sp, compute_splitting(sp)


class TestGeneratorOf:
    def test_diagonal_line_has_unit_generator(self):
        sp, split = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        g = generator_of(split, lam)
        assert g.full_domain
        assert np.abs(g.matrix() - np.eye(1)).max() < 1e-12

    def test_plus_component_is_not_isotropic(self):
        sp, split = canonical_c2()
        with pytest.raises(NotIsotropic):
            generator_of(split, sp.frame(np.eye(2)[:, [0]]))

    def test_zero_subspace(self):
        sp, split = canonical_c2()
        g = generator_of(split, sp.zero_frame())
        assert g.domain_dim == 0
        assert g.graph_frame().rank == 0

    def test_roundtrip_and_h_unitarity(self, rng):
        for m in (1, 2, 3, 4):
            sp, split = canonical_space(m)
            lam = random_lagrangian_frame(rng, split)
            g = generator_of(split, lam)
            assert gap(g.graph_frame(), lam).gap < 1e-9
            assert g.unitarity_defect < 1e-9

    def test_isotropic_partial_domain(self, rng):
        # a one-dimensional isotropic subspace of C^4: dom(U) is a line
        sp, split = canonical_space(2)
        lam_full = random_lagrangian_frame(rng, split)
        lam = orthonormalize(lam_full.matrix[:, [0]], sp.ip)
        assert classify(sp, lam) == "isotropic"
        g = generator_of(split, lam)
        assert g.domain_dim == 1 and not g.full_domain
        assert gap(g.graph_frame(), lam).gap < 1e-9
        assert g.unitarity_defect < 1e-9

    def test_weak_surrogate_generators(self, rng):
        # ill-conditioned J: the identical pipeline applies
        sp, split = canonical_space(2, minus_scale=40.0)
        lam = random_lagrangian_frame(rng, split)
        g = generator_of(split, lam)
        assert gap(g.graph_frame(), lam).gap < 1e-8
        assert g.unitarity_defect < 1e-8


class TestPairIndex:
    def test_equal_lines(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        rep = pair_index(sp, lam, lam)
        assert (rep.dim_intersection, rep.codim_sum, rep.index) == (1, 1, 0)

    def test_transversal_lines(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        mu = sp.frame(np.array([[1.0], [-1.0]]))
        rep = pair_index(sp, lam, mu)
        assert (rep.dim_intersection, rep.codim_sum, rep.index) == (0, 0, 0)

    def test_zero_and_full(self):
        sp, _ = canonical_c2()
        rep = pair_index(sp, sp.zero_frame(), sp.full_frame())
        assert (rep.dim_intersection, rep.codim_sum, rep.index) == (0, 0, 0)

    def test_lagrangian_pairs_have_index_zero(self, rng):
        for _ in range(12):
            m = int(rng.integers(1, 5))
            sp, split = canonical_space(m)
            lam = random_lagrangian_frame(rng, split)
            mu = random_lagrangian_frame(rng, split)
            assert pair_index(sp, lam, mu).index == 0

    def test_double_annihilator_of_finite_subspace(self, rng):
        # mu^{omega omega} = mu and dim mu = codim mu^omega
        for _ in range(6):
            m = int(rng.integers(1, 4))
            sp, _ = canonical_space(m)
            k = int(rng.integers(1, 2 * m + 1))
            mu = sp.frame(rng.standard_normal((2 * m, k))
                          + 1j * rng.standard_normal((2 * m, k)))
            ann = annihilator(sp, mu)
            assert ann.rank == sp.dim - mu.rank
            assert gap(annihilator(sp, ann), mu).gap < 1e-9


class TestIsoToLag:
    def test_transversal_isotropic_lines(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        mu = sp.frame(np.array([[1.0], [-1.0]]))
        rep = check_iso_to_lag(sp, lam, mu)
        assert rep.all_hold

    def test_equal_lagrangians(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        rep = check_iso_to_lag(sp, lam, lam)
        assert rep.all_hold

    def test_negative_index_hypothesis_fails(self):
        # lam an isotropic line, mu = {0} in C^4: index = -codim < 0
        sp, split = canonical_space(2)
        lam = orthonormalize(
            (split.plus_h[:, [0]] + split.minus_h[:, [0]]) / np.sqrt(2.0), sp.ip
        )
        with pytest.raises(HypothesisFailed):
            check_iso_to_lag(sp, lam, sp.zero_frame())

    def test_non_isotropic_input_fails(self):
        sp, _ = canonical_c2()
        with pytest.raises(HypothesisFailed):
            check_iso_to_lag(sp, sp.frame(np.eye(2)[:, [0]]), sp.zero_frame())


class TestFredholmViaGenerators:
    def test_equal_lines(self):
        sp, split = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        index, kernel = fredholm_via_generators(split, lam, lam)
        assert (index, kernel) == (0, 1)

    def test_rotated_line(self):
        sp, split = canonical_c2()
        lam = sp.frame(np.array([[1.0], [np.exp(0.7j)]]))
        mu = sp.frame(np.array([[1.0], [1.0]]))
        index, kernel = fredholm_via_generators(split, lam, mu)
        assert (index, kernel) == (0, 0)

    def test_partial_domain_matches_pair_index(self, rng):
        # brute force on 4-dim examples: isotropic lam with dom(U) a line
        sp, split = canonical_space(2)
        for _ in range(8):
            lam_full = random_lagrangian_frame(rng, split)
            lam = orthonormalize(lam_full.matrix[:, [0]], sp.ip)
            mu = random_lagrangian_frame(rng, split)
            index, kernel = fredholm_via_generators(split, lam, mu)
            rep = pair_index(sp, lam, mu)
            assert index == rep.index
            assert kernel == rep.dim_intersection
            assert kernel == intersect_subspaces(lam, mu).rank

    def test_matches_pair_index_random(self, rng):
        for _ in range(10):
            m = int(rng.integers(1, 5))
            sp, split = canonical_space(m)
            lam = random_lagrangian_frame(rng, split)
            mu = random_lagrangian_frame(rng, split)
            index, kernel = fredholm_via_generators(split, lam, mu)
            rep = pair_index(sp, lam, mu)
            assert (index, kernel) == (rep.index, rep.dim_intersection)


class TestBoxplus:
    def test_product_structure(self):
        sp, _ = canonical_c2()
        prod = boxplus(sp)
        assert prod.dim == 4
        assert np.abs(prod.j - np.diag([1j, -1j, -1j, 1j])).max() < 1e-12

    def test_diagonal_intersection_carries_pair_intersection(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        lm, diag = boxplus_pair(sp, lam, lam)
        inter = intersect_subspaces(lm, diag)
        assert inter.rank == 1

    def test_transversal_pair_misses_diagonal(self):
        sp, _ = canonical_c2()
        lam = sp.frame(np.array([[1.0], [1.0]]))
        mu = sp.frame(np.array([[1.0], [-1.0]]))
        lm, diag = boxplus_pair(sp, lam, mu)
        assert intersect_subspaces(lm, diag).rank == 0

    def test_index_identity_random(self, rng):
        for _ in range(10):
            m = int(rng.integers(1, 4))
            sp, split = canonical_space(m)
            prod = boxplus(sp)
            lam = random_lagrangian_frame(rng, split)
            mu = random_lagrangian_frame(rng, split)
            lm, diag = boxplus_pair(sp, lam, mu)
            rep = pair_index(sp, lam, mu)
            rep_box = pair_index(prod, lm, diag)
            assert rep.index == rep_box.index
            assert intersect_subspaces(lm, diag).rank == rep.dim_intersection

    def test_boxplus_frames_are_lagrangian(self, rng):
        sp, split = canonical_space(2)
        prod = boxplus(sp)
        lam = random_lagrangian_frame(rng, split)
        mu = random_lagrangian_frame(rng, split)
        lm, diag = boxplus_pair(sp, lam, mu)
        assert classify(prod, lm) == "lagrangian"
        assert classify(prod, diag) == "lagrangian"
        split_prod = boxplus_splitting(split)
        assert split_prod.dim_plus == split_prod.dim_minus == sp.dim


class TestBlockGenerator:
    def test_block_is_h_unitary(self, rng):
        # [[0, U], [V^{-1}, 0]] has orthonormal columns in the h-coordinates
        for _ in range(8):
            m = int(rng.integers(1, 5))
            sp, split = canonical_space(m)
            gu = generator_of(split, random_lagrangian_frame(rng, split))
            gv = generator_of(split, random_lagrangian_frame(rng, split))
            b = block_generator_matrix(gu, gv)
            assert np.abs(b.conj().T @ b - np.eye(2 * m)).max() < 1e-9

    def test_block_squares_to_uv(self):
        sp, split = canonical_c2()
        lam = sp.frame(np.array([[1.0], [np.exp(0.3j)]]))
        mu = sp.frame(np.array([[1.0], [1.0]]))
        gu = generator_of(split, lam)
        gv = generator_of(split, mu)
        b = block_generator_matrix(gu, gv)
        uv = gu.matrix() @ np.linalg.inv(gv.matrix())
        assert np.abs(np.linalg.eigvals(b @ b) - np.linalg.eigvals(uv)).max() < 1e-10
