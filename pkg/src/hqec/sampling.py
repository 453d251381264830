"""Seeded random generators for states, quaternions, and unitaries.

Every randomized check owns a generator derived from (seed, stream ids), so
batches can run in any order or concurrently and still reproduce bit for bit.
"""

from __future__ import annotations

import numpy as np

from .linalg import ScalarField, StateVector
from .quaternion import Quaternion


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed) & (2**64 - 1), *stream])


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(scale * rng.standard_normal(4))


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    """Uniform on the 3-sphere: four standard Gaussians, normalized."""
    while True:
        q = Quaternion.from_array(rng.standard_normal(4))
        if q.norm() > 1e-6:
            return q.normalized()


def random_state(field: ScalarField, n_sites: int,
                 rng: np.random.Generator, normalize: bool = True) -> StateVector:
    dim = field.site_dim ** n_sites
    if field.is_complex:
        amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    else:
        amps = rng.standard_normal(dim)
    if normalize:
        amps = amps / np.linalg.norm(amps)
    return StateVector(field, n_sites, amps)


def random_coefficients(field: ScalarField, count: int,
                        rng: np.random.Generator, normalize: bool = True) -> np.ndarray:
    if field.is_complex:
        c = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    else:
        c = rng.standard_normal(count)
    if normalize:
        c = c / np.linalg.norm(c)
    return c


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from Gram-Schmidt (QR) of a random complex matrix."""
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    # Fix the column phases so the result is independent of QR sign choices.
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    return q * np.sign(np.diagonal(r))
