"""The classifier: feature map + ansatz composition, parity readout,
cross-entropy loss, training, and batch prediction.

Readout measures the configured qubits (default the first two) and maps
each outcome by the parity of its '1' count: even (including zero) is
the positive AD class, odd is NON_AD. In exact mode the class-1
probability is the summed even-parity mass of the final state; in shot
mode it is an empirical frequency over seeded samples.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Sequence

import numpy as np

from .ansatz import AnsatzSpec, apply_ansatz, build_ansatz, init_params
from .errors import ConfigError
from .featmap import DataMap, FeatureMapSpec, encode
from .prep import Dataset
from .spsa import SpsaConfig, TrainingRun, spsa_minimize
from .statevec import StateVector, apply_ops, probabilities, sample_counts


class Label(IntEnum):
    NON_AD = 0
    AD = 1


@dataclass(frozen=True)
class VqcConfig:
    """Everything needed to evaluate the classifier on one sample.

    ``shots`` None means exact probabilities from the statevector; an
    integer means that many seeded measurement samples per forward pass.
    """

    feature_map: FeatureMapSpec
    ansatz: AnsatzSpec
    measured_qubits: tuple[int, ...] = (0, 1)
    shots: int | None = None
    seed: int = 0
    loss_clip_epsilon: float = 1e-9

    def __post_init__(self) -> None:
        object.__setattr__(self, "measured_qubits", tuple(int(q) for q in self.measured_qubits))
        if self.feature_map.n_qubits != self.ansatz.n_qubits:
            raise ConfigError(
                f"feature map has {self.feature_map.n_qubits} qubits but "
                f"ansatz has {self.ansatz.n_qubits}"
            )
        n = self.feature_map.n_qubits
        if not self.measured_qubits:
            raise ConfigError("measured_qubits must be non-empty")
        if len(set(self.measured_qubits)) != len(self.measured_qubits):
            raise ConfigError(f"measured_qubits must be distinct, got {self.measured_qubits}")
        if any(q < 0 or q >= n for q in self.measured_qubits):
            raise ConfigError(f"measured_qubits {self.measured_qubits} out of range for n={n}")
        if self.shots is not None and self.shots < 1:
            raise ConfigError(f"shots must be >= 1 or None, got {self.shots}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if not 0.0 < self.loss_clip_epsilon < 0.5:
            raise ConfigError(
                f"loss_clip_epsilon must be in (0, 0.5), got {self.loss_clip_epsilon}"
            )

    @property
    def n_qubits(self) -> int:
        return self.feature_map.n_qubits


@dataclass(frozen=True)
class Prediction:
    p_ad: float
    label: Label


def parity_decode(bits: str) -> Label:
    """AD when the bit string holds an even number of '1's, else NON_AD."""
    if not bits or set(bits) - {"0", "1"}:
        raise ConfigError(f"expected a non-empty 0/1 string, got {bits!r}")
    return Label.AD if bits.count("1") % 2 == 0 else Label.NON_AD


def _parity_vector(n_qubits: int, measured_qubits: Sequence[int], even: bool) -> np.ndarray:
    """0/1 mask over all 2^n basis indices selecting the given parity."""
    idx = np.arange(1 << n_qubits)
    acc = np.zeros_like(idx)
    for q in measured_qubits:
        acc ^= (idx >> (n_qubits - 1 - q)) & 1
    return (acc == 0).astype(np.float64) if even else (acc == 1).astype(np.float64)


def parity_mass(state: StateVector, measured_qubits: Sequence[int], even: bool = True) -> float:
    """Total probability of outcomes with the given parity on the
    measured qubits (the rest are marginalized)."""
    mask = _parity_vector(state.n_qubits, measured_qubits, even)
    return float(probabilities(state) @ mask)


def shot_seed(base_seed: int, sample_index: int, eval_counter: int) -> int:
    """Per-forward sampling seed, mixed with numpy's SeedSequence so the
    result is independent of evaluation order or parallelism."""
    seq = np.random.SeedSequence((base_seed, sample_index, eval_counter))
    return int(seq.generate_state(1, np.uint64)[0])


def _p_ad_from_counts(counts: dict[str, int], shots: int) -> float:
    even = sum(c for bits, c in counts.items() if parity_decode(bits) is Label.AD)
    return even / shots


def forward(
    x: Sequence[float],
    params: Sequence[float],
    cfg: VqcConfig,
    data_map: DataMap | None = None,
    sample_index: int = 0,
    eval_counter: int = 0,
) -> Prediction:
    """Encode, apply the ansatz, and read out the AD-class probability.

    ``sample_index`` and ``eval_counter`` only matter in shot mode,
    where they derive the per-call sampling seed.
    """
    state = encode(x, cfg.feature_map, data_map)
    apply_ansatz(state, cfg.ansatz, params)
    if cfg.shots is None:
        p_ad = parity_mass(state, cfg.measured_qubits)
    else:
        counts = sample_counts(
            state,
            cfg.shots,
            shot_seed(cfg.seed, sample_index, eval_counter),
            cfg.measured_qubits,
        )
        p_ad = _p_ad_from_counts(counts, cfg.shots)
    return Prediction(p_ad, Label.AD if p_ad >= 0.5 else Label.NON_AD)


def binary_cross_entropy(
    y: Sequence[int], p: Sequence[float], eps: float = 1e-9
) -> float:
    """Mean BCE with predictions clipped into [eps, 1 - eps]."""
    y_arr = np.asarray(y, dtype=np.float64)
    p_arr = np.clip(np.asarray(p, dtype=np.float64), eps, 1.0 - eps)
    return float(-np.mean(y_arr * np.log(p_arr) + (1.0 - y_arr) * np.log(1.0 - p_arr)))


class _LossEvaluator:
    """Loss over a dataset as a function of the parameter vector.

    Encodes every sample once up front (the feature-map states never
    change during training) and applies the ansatz to the whole batch
    with the shared strided kernels, which is bitwise identical to
    evolving each state separately. Each call increments an evaluation
    counter used only for shot-mode seed derivation.
    """

    def __init__(self, dataset: Dataset, cfg: VqcConfig, data_map: DataMap | None = None):
        if len(dataset) == 0:
            raise ConfigError("dataset must be non-empty")
        bad = set(np.unique(dataset.labels)) - {0, 1}
        if bad:
            raise ConfigError(f"labels must be 0 (NON_AD) or 1 (AD), got extras {sorted(bad)}")
        self._encoded = np.stack(
            [
                encode(row, cfg.feature_map, data_map).amplitudes
                for row in np.asarray(dataset.features, dtype=np.float64)
            ]
        )
        self._ansatz_ops = build_ansatz(cfg.ansatz).ops
        self._even = _parity_vector(cfg.n_qubits, cfg.measured_qubits, even=True)
        self._labels = np.asarray(dataset.labels, dtype=np.float64)
        self._cfg = cfg
        self.eval_counter = 0

    def p_ad(self, params: np.ndarray, eval_counter: int = 0) -> np.ndarray:
        cfg = self._cfg
        amps = self._encoded.copy()
        apply_ops(amps, cfg.n_qubits, self._ansatz_ops, (), params)
        if cfg.shots is None:
            return (amps.real * amps.real + amps.imag * amps.imag) @ self._even
        out = np.empty(amps.shape[0])
        for i in range(amps.shape[0]):
            counts = sample_counts(
                StateVector(cfg.n_qubits, amps[i]),
                cfg.shots,
                shot_seed(cfg.seed, i, eval_counter),
                cfg.measured_qubits,
            )
            out[i] = _p_ad_from_counts(counts, cfg.shots)
        return out

    def __call__(self, params: np.ndarray) -> float:
        counter = self.eval_counter
        self.eval_counter += 1
        p = self.p_ad(np.asarray(params, dtype=np.float64), counter)
        return binary_cross_entropy(self._labels, p, self._cfg.loss_clip_epsilon)


def loss(
    dataset: Dataset,
    params: Sequence[float],
    cfg: VqcConfig,
    data_map: DataMap | None = None,
) -> float:
    """Mean binary cross-entropy of the classifier over the dataset."""
    evaluator = _LossEvaluator(dataset, cfg, data_map)
    return evaluator(np.asarray(params, dtype=np.float64))


def train(
    train_set: Dataset,
    cfg: VqcConfig,
    spsa_cfg: SpsaConfig,
    data_map: DataMap | None = None,
) -> TrainingRun:
    """Minimize the training loss with the perturbation optimizer.

    Initial parameters are drawn from ``cfg.seed``; the optimizer's own
    draws come from ``spsa_cfg.seed``. Fully deterministic given both.
    """
    theta0 = init_params(cfg.ansatz, cfg.seed)
    evaluator = _LossEvaluator(train_set, cfg, data_map)
    run = spsa_minimize(evaluator, theta0, spsa_cfg)
    return replace(run, seeds_used={"init": cfg.seed, **run.seeds_used})


def predict_batch(
    samples: Sequence[Sequence[float]],
    params: Sequence[float],
    cfg: VqcConfig,
    data_map: DataMap | None = None,
) -> list[Prediction]:
    """Element-wise forward pass, order preserved."""
    return [
        forward(x, params, cfg, data_map, sample_index=i)
        for i, x in enumerate(samples)
    ]
