"""Entanglement quantification: two-qubit concurrence, GME concurrence, purity."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .linalg import (
    eigvals_hermitian,
    is_hermitian,
    num_qubits,
    reduced_density,
    spin_flip,
    sqrtm_psd,
)

_CLAMP_SLACK = 1e-8
_EIGEN_DUST = 1e-12  # eigenvalue dust zeroed before square roots


@dataclass(frozen=True)
class MetricReport:
    metric: str
    value: float
    subsystem_values: Optional[dict[str, float]] = None


def _validate_density(rho: np.ndarray, n: Optional[int] = None) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    qubits = num_qubits(rho.shape[0])
    if n is not None and qubits != n:
        raise ValueError(f"expected a {n}-qubit density matrix, got {qubits} qubits")
    if not is_hermitian(rho):
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError("density matrix must have unit trace")
    return rho


def _clamp_unit(value: float) -> float:
    if value > 1.0 + _CLAMP_SLACK:
        raise ValueError(f"metric value {value} above 1 beyond numerical slack")
    return min(max(value, 0.0), 1.0)


def concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence max{0, mu1 - mu2 - mu3 - mu4}.

    The mu_i are the square roots of the eigenvalues of rho @ spin_flip(rho)
    in decreasing order, computed via the Hermitian product
    sqrt(rho) @ spin_flip(rho) @ sqrt(rho).
    """
    rho = _validate_density(rho, n=2)
    root = sqrtm_psd(rho)
    vals = eigvals_hermitian(root @ spin_flip(rho) @ root)
    vals = np.where(vals < _EIGEN_DUST, 0.0, vals)  # sqrt would amplify dust
    mus = np.sqrt(vals)
    return _clamp_unit(float(mus[0] - mus[1] - mus[2] - mus[3]))


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2), between 1/2^n (maximally mixed) and 1 (pure)."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def gme_concurrence(state: np.ndarray, all_bipartitions: bool = False) -> MetricReport:
    """sqrt(2 * min over cuts of (1 - Tr rho_cut^2)) for a pure n-qubit state.

    By default the minimum runs over the n single-qubit cuts; set
    ``all_bipartitions`` to scan every bipartition instead.
    """
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state.shape[0])
    if abs(np.linalg.norm(state) - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    if all_bipartitions:
        cuts = [
            list(c)
            for size in range(1, n // 2 + 1)
            for c in combinations(range(n), size)
            if size < n / 2 or 0 in c  # each bipartition once
        ]
    else:
        cuts = [[q] for q in range(n)]
    per_cut = {}
    for cut in cuts:
        rho_cut = reduced_density(state, cut)
        per_cut[",".join(map(str, cut))] = 1.0 - purity(rho_cut)
    minimum = min(per_cut.values())
    if minimum < _EIGEN_DUST:  # a numerically pure cut: biseparable
        value = 0.0
    else:
        value = _clamp_unit(float(np.sqrt(2.0 * minimum)))
    return MetricReport(metric="gme_concurrence", value=value, subsystem_values=per_cut)
