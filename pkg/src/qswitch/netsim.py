"""Network-level simulations: control-driven entanglement mapping and the
hierarchical coordinator/edge-entangler architecture.

Both operations share the same skeleton: a control register whose basis
states select, per client qubit, one of the two composition orders of its
gate pair; every control qubit is then measured in the coherent basis and
each branch is reported with its probability, client state and fidelity to
the canonical all-|0> / all-|1> superposition in the constructed local-unitary
frame.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

import numpy as np

from . import gates
from .gates import UnitaryPair, backward_order, forward_order
from .linalg import basis_state, kron, kron_all
from .switch import SwitchSpec, UNREACHABLE_TOL, canonical_phase, superposed_input
from .verify import apply_local_unitaries, canonical_lu, check_max_entanglement

MAX_TOTAL_QUBITS = 12


@dataclass(frozen=True)
class BranchResult:
    control_outcome: str
    probability: float
    client_state: Optional[np.ndarray]
    ghz_fidelity: Optional[float]

    @property
    def reachable(self) -> bool:
        return self.client_state is not None


@dataclass
class Topology:
    """Coordinator plus edge entanglers, each serving a cluster of clients."""

    entanglers: list[tuple[str, int]]  # (node id, client count)
    pair_template: UnitaryPair
    alpha: float = 0.5
    coordinator: str = "e0"
    control: str = "ghz"  # 'ghz' | 'plus_product'
    link_loss: dict[str, float] = field(default_factory=dict)  # reserved, must be 0

    def __post_init__(self):
        if len(self.entanglers) < 2:
            raise ValueError("topology needs at least two entanglers")
        if any(k < 2 for _, k in self.entanglers):
            raise ValueError("each entangler must serve at least 2 clients")
        if self.control not in ("ghz", "plus_product"):
            raise ValueError(f"unknown control preparation {self.control!r}")
        if any(abs(v) > 0 for v in self.link_loss.values()):
            raise ValueError("link loss is reserved for future use and must be zero")
        total = self.total_clients + len(self.entanglers)
        if total > MAX_TOTAL_QUBITS:
            raise ValueError(
                f"topology needs {total} simulated qubits, cap is {MAX_TOTAL_QUBITS}"
            )

    @property
    def total_clients(self) -> int:
        return sum(k for _, k in self.entanglers)


def topology_from_json(doc: dict) -> Topology:
    gate_doc = doc.get("gates", {"u": "pauli_z", "u_tilde": f"ry({math.pi / 2})"})
    pair = UnitaryPair(gates.parse_gate(gate_doc["u"]), gates.parse_gate(gate_doc["u_tilde"]))
    return Topology(
        entanglers=[(e["id"], int(e["clients"])) for e in doc["entanglers"]],
        pair_template=pair,
        alpha=float(doc.get("alpha", 0.5)),
        coordinator=doc.get("coordinator", "e0"),
        control=doc.get("control", "ghz"),
        link_loss={k: float(v) for k, v in doc.get("link_loss", {}).items()},
    )


def ghz_fidelity_in_frame(state: np.ndarray, lus: Optional[list[np.ndarray]]) -> float:
    """Best fidelity with (|0...0> + e^{i theta}|1...1>)/sqrt(2), phase optimized.

    The state is first rotated by the constructed per-qubit unitaries when
    they are available.
    """
    state = np.asarray(state, dtype=complex)
    if lus is not None:
        state = apply_local_unitaries(lus, state)
    return float((abs(state[0]) + abs(state[-1])) ** 2 / 2.0)


def _control_signs(label: str, b: int, m: int) -> float:
    sign = 1.0
    for k, s in enumerate(label):
        if s == "-" and (b >> (m - 1 - k)) & 1:
            sign = -sign
    return sign


def _branch_results(
    control_amps: np.ndarray,
    cluster_of_qubit: list[int],
    pairs: list[UnitaryPair],
    inputs: list[np.ndarray],
    lus: Optional[list[np.ndarray]],
) -> list[BranchResult]:
    m = len(control_amps).bit_length() - 1
    fwd = [forward_order(p) @ s for p, s in zip(pairs, inputs)]
    bwd = [backward_order(p) @ s for p, s in zip(pairs, inputs)]
    branch_vectors = {}
    for b in range(2**m):
        if abs(control_amps[b]) <= UNREACHABLE_TOL:
            continue
        factors = []
        for q, cluster in enumerate(cluster_of_qubit):
            bit = (b >> (m - 1 - cluster)) & 1
            factors.append(bwd[q] if bit else fwd[q])
        branch_vectors[b] = kron_all(factors)
    results = []
    scale = 2.0 ** (-m / 2.0)
    for bits in product("+-", repeat=m):
        label = "".join(bits)
        raw = scale * sum(
            control_amps[b] * _control_signs(label, b, m) * vec
            for b, vec in branch_vectors.items()
        )
        prob = float(np.vdot(raw, raw).real)
        if prob < UNREACHABLE_TOL:
            results.append(BranchResult(label, max(prob, 0.0), None, None))
        else:
            state = canonical_phase(raw / math.sqrt(prob))
            results.append(
                BranchResult(label, prob, state, ghz_fidelity_in_frame(state, lus))
            )
    return results


def _frame_unitaries(
    pairs: list[UnitaryPair], inputs: list[np.ndarray]
) -> Optional[list[np.ndarray]]:
    spec = SwitchSpec(protocol="ghz", pairs=list(pairs), inputs=list(inputs))
    try:
        return canonical_lu(spec)
    except ValueError:
        return None  # condition not met; report fidelities in the raw frame


def map_entanglement(
    control: np.ndarray, pairs: list[UnitaryPair], inputs: list[np.ndarray]
) -> list[BranchResult]:
    """Drive n independent single-qubit switches from an n-qubit control state.

    Control qubit i selects the order of pair i on input i; all control
    qubits are measured in the coherent basis, enumerating all 2^n branches.
    """
    control = np.asarray(control, dtype=complex)
    n = len(pairs)
    if len(inputs) != n:
        raise ValueError("pairs and inputs must have the same length")
    if control.shape != (2**n,):
        raise ValueError(f"control must be an {n}-qubit state")
    return _branch_results(control, list(range(n)), pairs, inputs, _frame_unitaries(pairs, inputs))


def run_hierarchy(topo: Topology) -> list[BranchResult]:
    """Coordinator-fed edge entanglers distributing one network-wide GHZ state.

    Each entangler's control qubit selects the order of its cluster's local
    tensor; the coordinator supplies the shared control state. Requires the
    per-qubit orthogonality condition, since the construction is only
    meaningful when every branch succeeds.
    """
    pairs = [topo.pair_template] * topo.total_clients
    inputs = [superposed_input(topo.alpha)] * topo.total_clients
    report = check_max_entanglement(
        SwitchSpec(protocol="ghz", pairs=pairs, inputs=inputs)
    )
    for idx, z in enumerate(report.per_qubit_overlap):
        if abs(z) >= report.tol:
            raise ValueError(
                f"generation condition violated at client qubit {idx}: |overlap|={abs(z):.3g}"
            )
    m = len(topo.entanglers)
    if topo.control == "ghz":
        control = (basis_state(m, 0) + basis_state(m, 2**m - 1)) / math.sqrt(2.0)
    else:
        control = kron_all([np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)] * m)
    cluster_of_qubit = [j for j, (_, k) in enumerate(topo.entanglers) for _ in range(k)]
    lus = _frame_unitaries(pairs, inputs)
    return _branch_results(control, cluster_of_qubit, pairs, inputs, lus)


# -- structural audit ------------------------------------------------------


def controlled_order_operator(
    pairs: list[UnitaryPair], cluster_of_qubit: list[int], m: int
) -> np.ndarray:
    """Dense joint operator (clients x control) for small audit instances."""
    n = len(pairs)
    if n + m > MAX_TOTAL_QUBITS:
        raise ValueError("audit operator too large")
    dim_c = 2**m
    blocks = []
    for b in range(dim_c):
        factors = []
        for q, cluster in enumerate(cluster_of_qubit):
            bit = (b >> (m - 1 - cluster)) & 1
            factors.append(backward_order(pairs[q]) if bit else forward_order(pairs[q]))
        proj = np.zeros((dim_c, dim_c), dtype=complex)
        proj[b, b] = 1.0
        blocks.append(kron(kron_all(factors), proj))
    return sum(blocks)


def _nearest_kron_residual(mat: np.ndarray, n: int) -> float:
    # largest deviation of a 2^n x 2^n matrix from a chain of 2x2 factors
    if n == 1:
        return 0.0
    rest = 2 ** (n - 1)
    r = mat.reshape(2, rest, 2, rest).transpose(0, 2, 1, 3).reshape(4, rest * rest)
    u, s, vh = np.linalg.svd(r)
    residual = float(s[1]) if len(s) > 1 else 0.0
    tail = (s[0] * vh[0]).reshape(rest, rest)
    scale = np.max(np.abs(tail))
    if scale > 0:
        residual = max(residual, _nearest_kron_residual(tail / scale, n - 1) * scale)
    return residual


def max_cross_client_coupling(op: np.ndarray, n_clients: int, n_controls: int) -> float:
    """Largest coupling between client qubits in a joint operator.

    Zero (up to numerical dust) certifies the operator is a sum of control
    projectors times tensor products of single-qubit client operators.
    """
    dim_t, dim_c = 2**n_clients, 2**n_controls
    t = op.reshape(dim_t, dim_c, dim_t, dim_c)
    worst = 0.0
    for b in range(dim_c):
        for b2 in range(dim_c):
            if b != b2:
                worst = max(worst, float(np.max(np.abs(t[:, b, :, b2]))))
    for b in range(dim_c):
        worst = max(worst, _nearest_kron_residual(t[:, b, :, b], n_clients))
    return worst
