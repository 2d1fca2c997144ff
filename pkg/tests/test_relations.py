import numpy as np
import pytest

from symflow import (
    BoxWindow,
    DiskWindow,
    PencilRelation,
    gap,
    relation_compose,
    relation_fredholm,
    relation_inverse,
    relation_spectrum,
    relation_sum,
    resolvent,
    spectral_projection,
    spectral_projector_eig,
)
from symflow.errors import SingularOnContour, SpectralPoint
from symflow.lagrangian import pair_index
from symflow.linalg import Frame, orthonormalize
from symflow.symplectic import make_space_from_j


def graph(a):
    return PencilRelation.from_operator(np.asarray(a, dtype=complex))


def frames_equal(a: PencilRelation, b: PencilRelation, tol=1e-9) -> bool:
    return gap(a.subspace_frame(), b.subspace_frame()).gap < tol


class TestRelationAlgebra:
    def test_inverse_of_scaling(self):
        assert frames_equal(relation_inverse(graph(2.0 * np.eye(1))), graph(0.5 * np.eye(1)))

    def test_compose_operator_case(self, rng):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert frames_equal(relation_compose(graph(b), graph(a)), graph(b @ a))

    def test_sum_operator_case(self, rng):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert frames_equal(relation_sum(graph(a), graph(b)), graph(a + b))

    def test_vertical_relation_swaps_domain_and_range(self):
        # {(0, y)}: the inverse is {(y, 0)}
        vert = PencilRelation(np.zeros((1, 1)), np.eye(1))
        inv = relation_inverse(vert)
        assert inv.domain().rank == 1
        assert inv.range().rank == 0
        assert vert.domain().rank == 0
        assert vert.indeterminant_part().rank == 1
        assert inv.kernel().rank == 1

    def test_double_inverse_identity(self, rng):
        for _ in range(6):
            n, d = 3, int(rng.integers(1, 5))
            e = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
            f = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
            p = PencilRelation(e, f)
            assert frames_equal(relation_inverse(relation_inverse(p)), p)

    def test_derived_sets_consistent(self):
        p = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        assert p.domain().rank == 1
        assert p.range().rank == 2
        assert p.kernel().rank == 0
        assert p.indeterminant_part().rank == 1
        assert not p.is_operator()
        assert graph(np.diag([1.0, 2.0])).is_operator()


class TestSpectrum:
    def test_graph_of_diagonal(self):
        spec = relation_spectrum(graph(np.diag([2.0, 3.0])))
        assert not spec.all_of_c
        assert [(round(v.real), m) for v, m in spec.eigenvalues] == [(2, 1), (3, 1)]
        assert spec.infinite_multiplicity == 0

    def test_pencil_with_indeterminant_part(self):
        p = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        spec = relation_spectrum(p)
        assert [(round(v.real), m) for v, m in spec.eigenvalues] == [(2, 1)]
        assert spec.infinite_multiplicity == 1

    def test_nonsquare_spectrum_is_symbolic(self):
        p = PencilRelation(np.array([[1.0], [0.0]]), np.array([[0.0], [1.0]]))
        spec = relation_spectrum(p)
        assert spec.all_of_c

    def test_singular_square_pencil_is_symbolic(self):
        p = PencilRelation(np.array([[1.0, 0.0], [0.0, 0.0]]),
                           np.array([[0.0, 0.0], [1.0, 0.0]]))
        assert relation_spectrum(p).all_of_c

    def test_inverse_spectrum_reciprocal(self, rng):
        for _ in range(6):
            n = int(rng.integers(2, 7))
            e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            p = PencilRelation(e, f)
            spec = relation_spectrum(p)
            spec_inv = relation_spectrum(relation_inverse(p))
            if spec.all_of_c or spec_inv.all_of_c:
                continue
            fwd = sorted(
                (1.0 / v for v, m in spec.eigenvalues for _ in range(m) if abs(v) > 1e-8),
                key=lambda z: (z.real, z.imag),
            )
            bwd = sorted(
                (v for v, m in spec_inv.eigenvalues for _ in range(m) if abs(v) > 1e-8),
                key=lambda z: (z.real, z.imag),
            )
            assert len(fwd) == len(bwd)
            assert all(abs(a - b) < 1e-6 * max(1.0, abs(a)) for a, b in zip(fwd, bwd))
            # 0 <-> infinity exchange mirrors E <-> F swap
            zero_mult = sum(m for v, m in spec.eigenvalues if abs(v) <= 1e-8)
            assert zero_mult == spec_inv.infinite_multiplicity


class TestResolvent:
    def test_zero_operator(self):
        r = resolvent(graph(np.zeros((1, 1))), 1.0)
        assert np.abs(r + np.eye(1)).max() < 1e-12

    def test_pencil_closed_form(self):
        p = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        r = resolvent(p, 0.0)
        assert np.abs(r - np.diag([0.5, 0.0])).max() < 1e-12

    def test_spectral_point_rejected(self):
        p = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        with pytest.raises(SpectralPoint):
            resolvent(p, 2.0)

    def test_resolvent_identity(self, rng):
        for _ in range(5):
            n = 4
            e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            p = PencilRelation(e, f)
            if relation_spectrum(p).all_of_c:
                continue
            z1, z2 = 5.0 + 3.0j, -4.0 - 2.0j
            r1, r2 = resolvent(p, z1), resolvent(p, z2)
            lhs = r1 - r2
            rhs = (z1 - z2) * (r1 @ r2)
            assert np.abs(lhs - rhs).max() < 1e-8 * max(1.0, np.abs(lhs).max())


class TestSpectralProjection:
    def test_diagonal_window(self):
        p, rk = spectral_projection(graph(np.diag([1.0, 5.0])), DiskWindow(1.0, 0.5))
        assert rk == 1
        assert np.abs(p - np.diag([1.0, 0.0])).max() < 1e-10

    def test_empty_window(self):
        p, rk = spectral_projection(graph(np.diag([1.0, 5.0])), DiskWindow(-3.0, 0.5))
        assert rk == 0
        assert np.abs(p).max() < 1e-10

    def test_projection_kills_indeterminant_direction(self):
        pencil = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        p, rk = spectral_projection(pencil, DiskWindow(2.0, 0.5))
        assert rk == 1
        a0 = pencil.indeterminant_part()
        assert np.abs(p @ a0.matrix).max() < 1e-10

    def test_boundary_proximity_rejected(self):
        with pytest.raises(SingularOnContour):
            spectral_projection(graph(np.diag([1.0, 5.0])), DiskWindow(0.5, 0.5))

    def test_quadrature_matches_eig_route(self, rng):
        # both routes to 1e-8 with 64 nodes, spectrum at distance >= 0.3
        for _ in range(8):
            n = int(rng.integers(2, 7))
            v = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            w = w + np.sign(w.real + 1e-9) * 0.5  # push away from 0-ish clustering
            a = v @ np.diag(w) @ np.linalg.inv(v)
            pencil = graph(a)
            center = complex(w[0])
            radius = 0.5 * min(abs(z - center) for z in w if abs(z - center) > 1e-9)
            radius = min(max(radius, 0.31), 10.0)
            if any(abs(abs(z - center) - radius) < 0.3 for z in w):
                continue
            window = DiskWindow(center, radius)
            p, rk = spectral_projection(pencil, window)
            p_eig = spectral_projector_eig(pencil, window)
            assert np.abs(p - p_eig).max() < 1e-8
            assert np.abs(p @ p - p).max() < 1e-8
            assert rk == sum(1 for z in w if abs(z - center) < radius)

    def test_projection_commutes_with_resolvent(self):
        pencil = PencilRelation(np.diag([1.0, 0.0, 1.0]),
                                np.array([[2.0, 0.3, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]))
        window = DiskWindow(2.0, 0.5)
        p, _ = spectral_projection(pencil, window)
        r = resolvent(pencil, 10.0 + 1.0j)
        assert np.abs(p @ r - r @ p).max() < 1e-8

    def test_box_window_agrees(self):
        a = np.diag([1.0, -1.0, 3.0])
        window = BoxWindow(0.4, 1.6, -0.6, 0.6)
        p, rk = spectral_projection(graph(a), window)
        assert rk == 1
        assert np.abs(p - np.diag([1.0, 0.0, 0.0])).max() < 1e-8

    def test_compressed_spectrum_inside_window(self, rng):
        # sigma(A) inside N equals the spectrum of P A P on ran P
        a = np.diag([1.0, 1.5, 5.0])
        window = DiskWindow(1.25, 0.75)
        pencil = graph(a)
        p, rk = spectral_projection(pencil, window)
        assert rk == 2
        from symflow.linalg import contour_quadrature

        pap = contour_quadrature(
            lambda z: z * (pencil.e @ np.linalg.inv(pencil.f - z * pencil.e)),
            window.path(), 64,
        )
        q = orthonormalize(p)
        compressed = q.matrix.conj().T @ pap @ q.matrix
        got = sorted(np.linalg.eigvals(compressed).real)
        assert np.allclose(got, [1.0, 1.5], atol=1e-8)


class TestFredholm:
    def test_identity_graph(self):
        assert relation_fredholm(graph(np.eye(2))) == (0, 0, 0)

    def test_rank_deficient_graph(self):
        assert relation_fredholm(graph(np.diag([1.0, 0.0]))) == (1, 1, 0)

    def test_pencil_case(self):
        p = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
        assert relation_fredholm(p) == (0, 0, 0)

    def test_matches_subspace_pair_formulation(self, rng):
        # index A = index(A, X x {0}) inside X x X
        sp = make_space_from_j(np.eye(4), np.diag([1j, 1j, -1j, -1j]))
        for _ in range(6):
            d = int(rng.integers(1, 4))
            e = rng.standard_normal((2, d)) + 1j * rng.standard_normal((2, d))
            f = rng.standard_normal((2, d)) + 1j * rng.standard_normal((2, d))
            p = PencilRelation(e, f)
            kernel, coker, index = relation_fredholm(p)
            horizontal = orthonormalize(np.vstack([np.eye(2), np.zeros((2, 2))]))
            rep = pair_index(sp, p.subspace_frame(), horizontal)
            assert rep.index == index
            assert rep.dim_intersection == kernel
