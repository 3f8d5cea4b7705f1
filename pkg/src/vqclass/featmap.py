"""Second-order phase feature map: Hadamard layer plus single- and
pairwise-phase terms realized with CX-P-CX sandwiches.

Encodes a classical feature vector x (min-max normalized to [0, 1]) into
an n-qubit state, one qubit per feature. Each repetition applies H to
every qubit, a phase P(2*phi_single(x_j)) per qubit, and for every
entangled pair (j, k) the diagonal two-qubit phase
CX(j,k) P_k(2*phi_pair(x_j, x_k)) CX(j,k).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, EncodingError
from .statevec import Circuit, FeatureExpr, GateOp, StateVector, run_circuit

ENTANGLEMENTS = ("full", "linear")


@dataclass(frozen=True)
class FeatureMapSpec:
    """Shape of the encoding circuit: one qubit per feature."""

    n_qubits: int
    reps: int = 1
    entanglement: str = "full"

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ConfigError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.reps < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")
        if self.entanglement not in ENTANGLEMENTS:
            raise ConfigError(f"entanglement must be one of {ENTANGLEMENTS}")


@dataclass(frozen=True)
class DataMap:
    """Pure functions turning feature values into phase angles (radians)."""

    phi_single: Callable[[float], float]
    phi_pair: Callable[[float, float], float]


def _phi_single_default(x: float) -> float:
    return x


def _phi_pair_default(xj: float, xk: float) -> float:
    return (math.pi - xj) * (math.pi - xk)


DEFAULT_DATA_MAP = DataMap(_phi_single_default, _phi_pair_default)


def default_data_map() -> DataMap:
    """Conventional map: phi_j(x) = x_j, phi_jk(x) = (pi - x_j)(pi - x_k)."""
    return DEFAULT_DATA_MAP


def entangled_pairs(spec: FeatureMapSpec) -> list[tuple[int, int]]:
    """Qubit pairs receiving a pairwise phase term, in application order."""
    if spec.entanglement == "linear":
        return [(j, j + 1) for j in range(spec.n_qubits - 1)]
    return list(itertools.combinations(range(spec.n_qubits), 2))


def build_feature_map(spec: FeatureMapSpec, data_map: DataMap | None = None) -> Circuit:
    """Encoding circuit with symbolic feature slots (slot j = feature j)."""
    dm = data_map if data_map is not None else default_data_map()

    def single_angle(xj: float, _phi=dm.phi_single) -> float:
        return 2.0 * _phi(xj)

    def pair_angle(xj: float, xk: float, _phi=dm.phi_pair) -> float:
        return 2.0 * _phi(xj, xk)

    ops: list[GateOp] = []
    for _ in range(spec.reps):
        ops.extend(GateOp("H", (q,)) for q in range(spec.n_qubits))
        ops.extend(
            GateOp("P", (q,), FeatureExpr((q,), single_angle)) for q in range(spec.n_qubits)
        )
        for j, k in entangled_pairs(spec):
            ops.append(GateOp("CX", (j, k)))
            ops.append(GateOp("P", (k,), FeatureExpr((j, k), pair_angle)))
            ops.append(GateOp("CX", (j, k)))
    return Circuit(spec.n_qubits, tuple(ops), n_feature_slots=spec.n_qubits)


def encode(
    x: Sequence[float],
    spec: FeatureMapSpec,
    data_map: DataMap | None = None,
) -> StateVector:
    """Encode a normalized feature vector into the pure state it maps to.

    Features must already be min-max normalized: every entry in [0, 1].
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size != spec.n_qubits:
        raise EncodingError(
            f"feature vector must have length {spec.n_qubits}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise EncodingError("feature vector contains non-finite entries")
    if arr.min() < 0.0 or arr.max() > 1.0:
        bad = int(np.argmax((arr < 0.0) | (arr > 1.0)))
        raise EncodingError(
            f"feature {bad} = {arr[bad]} outside [0, 1]; normalize upstream"
        )
    return run_circuit(build_feature_map(spec, data_map), arr, ())
