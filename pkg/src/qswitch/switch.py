"""The coherently-controlled-order engine.

Builds the controlled-order operator, applies it to product inputs, measures
the control register in the coherent {|+>, |->} basis and returns the
postselected outcome ensemble. Two families are supported:

* two-order protocols (Bell, GHZ-like): one control qubit selects between
  the two orders of the n-qubit local tensors;
* the W-like protocol: n cyclic terms, each reversing the order on exactly
  one qubit, steered by a control register of d = ceil(log2 n) qubits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

import numpy as np

from . import gates
from .gates import UnitaryPair, backward_order, forward_order, local_tensor
from .linalg import basis_state, kron, kron_all

UNREACHABLE_TOL = 1e-12

PROTOCOLS = ("bell", "ghz", "w")


def canonical_phase(state: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first nonzero amplitude is real positive."""
    state = np.asarray(state, dtype=complex)
    for a in state:
        if abs(a) > UNREACHABLE_TOL:
            return state * (a.conjugate() / abs(a))
    return state


def _as_qubit_state(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (2,):
        raise ValueError(f"input states must be single-qubit, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("input states must be normalized")
    return v


def superposed_input(alpha: float) -> np.ndarray:
    """sqrt(alpha)|0> + sqrt(1-alpha)|1>, the standard swept input family."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0,1], got {alpha}")
    return np.array([math.sqrt(alpha), math.sqrt(1.0 - alpha)], dtype=complex)


@dataclass(frozen=True)
class Outcome:
    """One coherent-basis measurement result of the control register."""

    label: str
    probability: float
    state: Optional[np.ndarray]  # None when the outcome is unreachable

    @property
    def reachable(self) -> bool:
        return self.state is not None


@dataclass(frozen=True)
class OutcomeEnsemble:
    outcomes: tuple[Outcome, ...]

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self.outcomes)

    def __getitem__(self, label: str) -> Outcome:
        for o in self.outcomes:
            if o.label == label:
                return o
        raise KeyError(label)

    def reachable(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.reachable]

    def total_probability(self) -> float:
        return sum(o.probability for o in self.outcomes)


@dataclass
class SwitchSpec:
    """Protocol descriptor: which unitaries act on which product input.

    Only the even control superposition is supported; the generation
    conditions all assume it, so anything else is rejected outright.
    """

    protocol: str
    pairs: list[UnitaryPair]
    inputs: list[np.ndarray]
    control: str = "even"
    gate_names: Optional[list[tuple[str, str]]] = field(default=None, repr=False)
    alpha: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}")
        if self.control != "even":
            raise ValueError("only the even control superposition is supported")
        self.inputs = [_as_qubit_state(v) for v in self.inputs]
        n = len(self.pairs)
        if len(self.inputs) != n:
            raise ValueError("pairs and inputs must have the same length")
        minimum = {"bell": 2, "ghz": 2, "w": 3}[self.protocol]
        if self.protocol == "bell" and n != 2:
            raise ValueError("bell protocol requires exactly 2 qubits")
        if n < minimum:
            raise ValueError(f"{self.protocol} protocol requires at least {minimum} qubits")

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def control_qubits(self) -> int:
        if self.protocol == "w":
            return max(1, math.ceil(math.log2(self.n)))
        return 1

    # -- JSON wire format (version 1) -------------------------------------

    @classmethod
    def from_document(cls, doc: dict) -> "SwitchSpec":
        version = doc.get("version", 1)
        if version != 1:
            raise ValueError(f"unsupported spec version {version}")
        protocol = doc["protocol"]
        n = doc.get("n", len(doc.get("pairs", [])))
        pair_docs = doc["pairs"]
        if len(pair_docs) == 1 and n > 1:
            pair_docs = pair_docs * n
        names = [(p["u"], p["u_tilde"]) for p in pair_docs]
        pairs = [UnitaryPair(gates.parse_gate(u), gates.parse_gate(ut)) for u, ut in names]
        inp = doc.get("input", {"alpha": 0.5})
        alpha = None
        if "alpha" in inp:
            alpha = float(inp["alpha"])
            inputs = [superposed_input(alpha) for _ in range(len(pairs))]
        elif "amplitudes" in inp:
            inputs = [_amplitudes_to_state(a) for a in inp["amplitudes"]]
        else:
            raise ValueError("input must provide 'alpha' or 'amplitudes'")
        return cls(
            protocol=protocol,
            pairs=pairs,
            inputs=inputs,
            control=doc.get("control", "even"),
            gate_names=names,
            alpha=alpha,
        )

    def to_document(self) -> dict:
        if self.gate_names is not None:
            pair_docs = [{"u": u, "u_tilde": ut} for u, ut in self.gate_names]
        else:
            pair_docs = [
                {"u": _matrix_literal(p.u), "u_tilde": _matrix_literal(p.u_tilde)}
                for p in self.pairs
            ]
        if self.alpha is not None:
            inp = {"alpha": self.alpha}
        else:
            inp = {"amplitudes": [[_complex_literal(a) for a in v] for v in self.inputs]}
        return {
            "version": 1,
            "protocol": self.protocol,
            "n": self.n,
            "pairs": pair_docs,
            "input": inp,
            "control": self.control,
        }


def _amplitudes_to_state(entries) -> np.ndarray:
    amps = []
    for e in entries:
        if isinstance(e, str):
            amps.append(complex(e.replace("i", "j")))
        elif isinstance(e, (list, tuple)):
            amps.append(complex(e[0], e[1]))
        else:
            amps.append(complex(e))
    v = np.asarray(amps, dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm < UNREACHABLE_TOL:
        raise ValueError("zero amplitude vector")
    return v / nrm


def _complex_literal(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _matrix_literal(m: np.ndarray) -> str:
    rows = ",".join("[" + ",".join(_complex_literal(z) for z in row) + "]" for row in m)
    return f"matrix([{rows}])"


def switch_operator(pair: UnitaryPair) -> np.ndarray:
    """The 4x4 controlled-order unitary on (target x control), target first."""
    p0 = np.array([[1, 0], [0, 0]], dtype=complex)
    p1 = np.array([[0, 0], [0, 1]], dtype=complex)
    return kron(forward_order(pair), p0) + kron(backward_order(pair), p1)


def _make_outcome(label: str, raw: np.ndarray, probability: float) -> Outcome:
    if probability < UNREACHABLE_TOL:
        return Outcome(label=label, probability=max(probability, 0.0), state=None)
    return Outcome(
        label=label,
        probability=probability,
        state=canonical_phase(raw / np.linalg.norm(raw)),
    )


def two_order_outcomes(pairs: list[UnitaryPair], inputs: list[np.ndarray]) -> OutcomeEnsemble:
    """Measure the single control of a two-order superposition of local tensors.

    Works for any n >= 1; the Bell and GHZ protocols are the n = 2 and
    n >= 2 instances.
    """
    if len(pairs) != len(inputs) or not pairs:
        raise ValueError("pairs and inputs must be nonempty and of equal length")
    phi = kron_all(inputs)
    v, v_tilde = local_tensor(pairs)
    fwd = v @ v_tilde @ phi
    bwd = v_tilde @ v @ phi
    outcomes = []
    for sign, label in ((1.0, "+"), (-1.0, "-")):
        raw = fwd + sign * bwd
        norm_sq = float(np.vdot(raw, raw).real)
        outcomes.append(_make_outcome(label, raw, norm_sq / 4.0))
    return OutcomeEnsemble(tuple(outcomes))


def _w_branch_vectors(pairs: list[UnitaryPair], inputs: list[np.ndarray]) -> list[np.ndarray]:
    n = len(pairs)
    fwd = [forward_order(p) @ s for p, s in zip(pairs, inputs)]
    bwd = [backward_order(p) @ s for p, s in zip(pairs, inputs)]
    return [kron_all([bwd[i] if i == j else fwd[i] for i in range(n)]) for j in range(n)]


def _w_sign(label: str, j: int, d: int) -> float:
    # control qubit k reads bit k of j, most significant bit first
    sign = 1.0
    for k, s in enumerate(label):
        if s == "-" and (j >> (d - 1 - k)) & 1:
            sign = -sign
    return sign


def w_outcomes(pairs: list[UnitaryPair], inputs: list[np.ndarray]) -> OutcomeEnsemble:
    """Measure the d-qubit control of the cyclic one-reversed-order superposition.

    The control starts in the uniform superposition over the first n basis
    directions of its 2^d-dimensional space; the remaining directions carry
    zero amplitude, so outcome probabilities need not be equal.
    """
    n = len(pairs)
    if n < 3:
        raise ValueError("the W protocol requires at least 3 qubits")
    if len(inputs) != n:
        raise ValueError("pairs and inputs must have the same length")
    d = math.ceil(math.log2(n))
    branches = _w_branch_vectors(pairs, inputs)
    outcomes = []
    for bits in product("+-", repeat=d):
        label = "".join(bits)
        raw = sum(_w_sign(label, j, d) * branches[j] for j in range(n))
        norm_sq = float(np.vdot(raw, raw).real)
        outcomes.append(_make_outcome(label, raw, norm_sq / (n * 2**d)))
    return OutcomeEnsemble(tuple(outcomes))


def run(spec: SwitchSpec) -> OutcomeEnsemble:
    """Run the protocol described by ``spec`` and return its outcome ensemble."""
    if spec.protocol == "w":
        return w_outcomes(spec.pairs, spec.inputs)
    return two_order_outcomes(spec.pairs, spec.inputs)


def joint_state(spec: SwitchSpec) -> np.ndarray:
    """The unmeasured (targets x control) state after the controlled-order unitary."""
    phi = kron_all(spec.inputs)
    if spec.protocol == "w":
        n, d = spec.n, spec.control_qubits
        branches = _w_branch_vectors(spec.pairs, spec.inputs)
        out = sum(kron(branches[j], basis_state(d, j)) for j in range(n))
        return out / math.sqrt(n)
    v, v_tilde = local_tensor(spec.pairs)
    fwd = v @ v_tilde @ phi
    bwd = v_tilde @ v @ phi
    return (kron(fwd, basis_state(1, 0)) + kron(bwd, basis_state(1, 1))) / math.sqrt(2.0)
