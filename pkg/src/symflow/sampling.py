"""Random instances: spaces, Lagrangian frames, and curves of pairs.

Shared by the test suite and the CLI's randomized check command so that
results are reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .linalg import Frame, Tolerances, orthonormalize
from .maslov import CurveSample, SplitCurve
from .symplectic import Splitting, SymplecticSpace, compute_splitting, make_space_from_j

__all__ = [
    "random_unitary",
    "random_anti_hermitian",
    "random_hpd",
    "canonical_space",
    "lagrangian_from_unitary",
    "random_lagrangian_frame",
    "random_unitary_path",
    "random_pair_curve",
]


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_anti_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (z - z.conj().T) / 2.0


def random_hpd(rng: np.random.Generator, n: int, spread: float = 3.0) -> np.ndarray:
    """Random Hermitian positive definite matrix with moderate conditioning."""
    q = random_unitary(rng, n)
    d = np.exp(rng.uniform(-np.log(spread) / 2, np.log(spread) / 2, n))
    return q @ np.diag(d) @ q.conj().T


def canonical_space(m: int, minus_scale: float = 1.0,
                    tol: Tolerances | None = None) -> tuple[SymplecticSpace, Splitting]:
    """C^{2m} with Euclidean metric and J = diag(i I_m, -i I_m / scale).

    ``minus_scale`` > 1 produces an ill-conditioned J, the finite
    surrogate of a weak symplectic structure.
    """
    j = np.diag(np.concatenate([1j * np.ones(m), -1j * np.ones(m) / minus_scale]))
    space = make_space_from_j(np.eye(2 * m), j, tol)
    return space, compute_splitting(space, tol)


def lagrangian_from_unitary(splitting: Splitting, u: np.ndarray,
                            tol: Tolerances | None = None) -> Frame:
    """The Lagrangian with generator u in the splitting's h-coordinates."""
    cols = (splitting.plus_h + splitting.minus_h @ u) / np.sqrt(2.0)
    return orthonormalize(cols, splitting.space.ip, tol)


def random_lagrangian_frame(rng: np.random.Generator, splitting: Splitting,
                            tol: Tolerances | None = None) -> Frame:
    return lagrangian_from_unitary(splitting, random_unitary(rng, splitting.dim_plus), tol)


def random_unitary_path(rng: np.random.Generator, n: int, speed: float = 2.0):
    """s -> U0 expm(s K) with a random anti-Hermitian generator K."""
    u0 = random_unitary(rng, n)
    k = random_anti_hermitian(rng, n, speed)

    def path(s: float) -> np.ndarray:
        return u0 @ scipy.linalg.expm(s * k)

    return path


def random_pair_curve(
    rng: np.random.Generator, m: int, n_samples: int = 9,
    moving_mu: bool = False, minus_scale: float = 1.0,
    tol: Tolerances | None = None,
) -> SplitCurve:
    """Random curve of Lagrangian pairs in the canonical C^{2m}."""
    space, split = canonical_space(m, minus_scale, tol)
    upath = random_unitary_path(rng, m)
    vpath = random_unitary_path(rng, m) if moving_mu else None
    v_fixed = random_unitary(rng, m)

    def ev(s: float) -> CurveSample:
        lam = lagrangian_from_unitary(split, upath(s), tol)
        v = vpath(s) if vpath is not None else v_fixed
        mu = lagrangian_from_unitary(split, v, tol)
        return CurveSample(space, split, lam, mu)

    samples = list(np.linspace(0.0, 1.0, n_samples))
    return SplitCurve(space.ip, samples, ev)
