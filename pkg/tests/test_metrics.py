import math

import numpy as np
import pytest

from conftest import default_pair, haar_unitary, random_pure_state
from qswitch import SwitchSpec, concurrence, gme_concurrence, purity, run, superposed_input
from qswitch.linalg import basis_state, density, kron, kron_all, reduced_density

PHI_PLUS = (np.array([1, 0, 0, 1], dtype=complex)) / math.sqrt(2)
W3 = (basis_state(3, 4) + basis_state(3, 2) + basis_state(3, 1)) / math.sqrt(3)
GHZ3 = (basis_state(3, 0) + basis_state(3, 7)) / math.sqrt(2)


def pure_concurrence_oracle(psi):
    # for pure two-qubit states, C = sqrt(2 (1 - Tr rho_A^2))
    rho_a = reduced_density(psi, [0])
    return math.sqrt(max(0.0, 2.0 * (1.0 - np.trace(rho_a @ rho_a).real)))


def test_concurrence_bell_state():
    assert abs(concurrence(density(PHI_PLUS)) - 1.0) <= 1e-9


def test_concurrence_product_state():
    assert concurrence(density(basis_state(2, 0))) <= 1e-9


def test_concurrence_partial_entanglement_vs_oracle():
    from qswitch import UnitaryPair, pauli, ry

    # an intermediate rotation gives a strictly partial entanglement value
    pair = UnitaryPair(pauli("z"), ry(math.pi / 4))
    spec = SwitchSpec("bell", [pair] * 2, [superposed_input(0.5)] * 2)
    psi = run(spec)["+"].state
    c = concurrence(density(psi))
    assert 0.0 < c < 1.0
    assert abs(c - pure_concurrence_oracle(psi)) <= 1e-9


def test_concurrence_rejects_invalid_input():
    with pytest.raises(ValueError):
        concurrence(np.eye(4, dtype=complex))  # trace 4
    with pytest.raises(ValueError):
        concurrence(np.eye(8, dtype=complex) / 8)


def test_concurrence_pure_state_oracle_random(rng):
    for _ in range(100):
        psi = random_pure_state(rng, 2)
        assert abs(concurrence(density(psi)) - pure_concurrence_oracle(psi)) <= 1e-9


def test_concurrence_local_unitary_invariance(rng):
    for _ in range(25):
        psi = random_pure_state(rng, 2)
        rotated = kron(haar_unitary(rng), haar_unitary(rng)) @ psi
        assert abs(concurrence(density(psi)) - concurrence(density(rotated))) <= 1e-9


def test_concurrence_zero_iff_rank_one(rng):
    for _ in range(25):
        psi = random_pure_state(rng, 2)
        svals = np.linalg.svd(psi.reshape(2, 2), compute_uv=False)
        rank_one = svals[1] / svals[0] < 1e-9
        assert (concurrence(density(psi)) < 1e-9) == rank_one
    product = kron(random_pure_state(rng, 1), random_pure_state(rng, 1))
    assert concurrence(density(product)) < 1e-9


def test_gme_ghz_state():
    assert abs(gme_concurrence(GHZ3).value - 1.0) <= 1e-9


def test_gme_biseparable_vanishes():
    state = kron(basis_state(1, 0), PHI_PLUS)
    report = gme_concurrence(state)
    assert report.value <= 1e-9
    assert report.subsystem_values["0"] <= 1e-12  # the qubit-0 cut is pure


def test_gme_w_state():
    report = gme_concurrence(W3)
    assert abs(report.value - 2 * math.sqrt(2) / 3) <= 1e-9
    for cut_value in report.subsystem_values.values():
        assert abs(cut_value - 4 / 9) <= 1e-9


def test_gme_local_unitary_invariance(rng):
    for _ in range(10):
        psi = random_pure_state(rng, 3)
        rotated = kron_all([haar_unitary(rng) for _ in range(3)]) @ psi
        assert abs(gme_concurrence(psi).value - gme_concurrence(rotated).value) <= 1e-9


def test_gme_all_bipartitions_flag():
    # a pair of Bell pairs is not GME although every single-qubit cut is mixed
    state = kron(PHI_PLUS, PHI_PLUS)
    assert gme_concurrence(state).value > 0.9
    assert gme_concurrence(state, all_bipartitions=True).value <= 1e-9


def test_gme_rejects_unnormalized():
    with pytest.raises(ValueError):
        gme_concurrence(2.0 * GHZ3)


def test_purity_examples(rng):
    psi = random_pure_state(rng, 2)
    assert abs(purity(density(psi)) - 1.0) <= 1e-10
    assert abs(purity(np.eye(2) / 2) - 0.5) <= 1e-12
    assert abs(purity(reduced_density(W3, [0])) - 5 / 9) <= 1e-10


def test_metric_range(rng):
    for _ in range(50):
        psi = random_pure_state(rng, 2)
        assert 0.0 <= concurrence(density(psi)) <= 1.0
        assert 0.0 <= gme_concurrence(random_pure_state(rng, 3)).value <= 1.0
