import math

import numpy as np
import pytest

from qswitch import SwitchSpec, UnitaryPair, pauli, ry, superposed_input


def haar_unitary(rng, dim=2):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pure_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def random_density(rng, n):
    psi = random_pure_state(rng, n)
    return np.outer(psi, psi.conj())


def default_pair():
    return UnitaryPair(pauli("z"), ry(math.pi / 2))


def random_spec(rng, protocol, n):
    pairs = [UnitaryPair(haar_unitary(rng), haar_unitary(rng)) for _ in range(n)]
    inputs = [random_pure_state(rng, 1) for _ in range(n)]
    return SwitchSpec(protocol, pairs, inputs)


def condition_spec(rng, protocol, n):
    """Random spec satisfying the per-qubit orthogonality condition.

    Conjugating the canonical (pauli_z, ry(pi/2), eta(1/2)) construction by a
    Haar unitary per qubit preserves the overlap scalar, which is zero there.
    """
    pairs, inputs = [], []
    for _ in range(n):
        a = haar_unitary(rng)
        pairs.append(UnitaryPair(a @ pauli("z") @ a.conj().T, a @ ry(math.pi / 2) @ a.conj().T))
        inputs.append(a @ superposed_input(0.5))
    return SwitchSpec(protocol, pairs, inputs)


def aligned_spec(rng, protocol, n, aligned_qubit=0):
    """Random spec with one qubit's pair commuting (overlap magnitude 1)."""
    spec = random_spec(rng, protocol, n)
    theta = rng.uniform(0, 2 * math.pi)
    commuting = UnitaryPair(
        np.diag([1.0, -1.0]).astype(complex),
        np.diag([1.0, np.exp(1j * theta)]),
    )
    spec.pairs[aligned_qubit] = commuting
    return spec


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
