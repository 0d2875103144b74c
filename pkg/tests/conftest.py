"""Shared random-object builders for the test suite (all explicitly seeded)."""
import numpy as np


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pure(rng, dim):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_density(rng, dim, rank=None):
    """Random full-rank (by default) density operator via a random spectrum."""
    rank = dim if rank is None else rank
    w = rng.dirichlet(np.ones(rank))
    u = random_unitary(rng, dim)
    eigs = np.zeros(dim)
    eigs[:rank] = w
    return (u * eigs) @ u.conj().T
