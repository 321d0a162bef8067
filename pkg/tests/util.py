"""Shared random-matrix generators for the test suite (all explicitly seeded)."""

from __future__ import annotations

import numpy as np


def rand_herm(dim: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (G + G.conj().T) / 2


def rand_psd(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    return G @ G.conj().T


def rand_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    A = rand_psd(dim, rng, rank)
    return A / np.trace(A).real


def rand_spd(dim: int, rng: np.random.Generator, floor: float = 0.1) -> np.ndarray:
    """Strictly positive definite with eigenvalues bounded away from zero."""
    return rand_psd(dim, rng) + floor * np.eye(dim)


def rand_density_bounded(
    dim: int, rng: np.random.Generator, rank: int | None = None, floor: float = 0.2
) -> np.ndarray:
    """Density matrix whose nonzero eigenvalues are uniform in [floor, 1].

    Keeps the conditioning of every draw mild (ratio at most 1/floor), which
    makes predicate tests insensitive to the tolerance grey zone.
    """
    rank = dim if rank is None else rank
    w = np.zeros(dim)
    w[:rank] = rng.uniform(floor, 1.0, size=rank)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q = np.linalg.qr(G)[0]
    A = (Q * w) @ Q.conj().T
    A = (A + A.conj().T) / 2
    return A / np.trace(A).real


def rand_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def rel_err(got: np.ndarray, want: np.ndarray) -> float:
    denom = max(np.linalg.norm(want), 1e-300)
    return float(np.linalg.norm(np.asarray(got) - np.asarray(want)) / denom)
