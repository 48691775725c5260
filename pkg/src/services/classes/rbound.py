"""Monte-Carlo lower bounds for the R-bound of a family of matrices."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ...config.defaults import RBOUND_CONFIG
from ..errors import DimensionMismatch
from ..linop import EUCLIDEAN, VectorNormSpec, stacked_norms

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class RademacherTrialSpec:
    """Sampling parameters for the Rademacher average ratio.

    Attributes:
        n: Members per trial (capped by the family size).
        trials: Number of random member subsets. Reported estimates use at least 100.
        probes: Random vector tuples per trial.
        seed: Generator seed; identical seeds give identical estimates.
    """
    n: int = RBOUND_CONFIG["subset_size"]
    trials: int = RBOUND_CONFIG["trials"]
    probes: int = RBOUND_CONFIG["probes"]
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.trials < 1 or self.probes < 1:
            raise ValueError(f"invalid Rademacher trial spec {self}")

    @property
    def reportable(self) -> bool:
        return self.trials >= 100


@dataclass(frozen=True, slots=True)
class RBoundEstimate:
    """Lower bound for R({T_k}).

    Attributes:
        estimate: Largest sampled ratio.
        sup_norm: max_k ‖T_k‖ (the estimate never exceeds it for p=2).
        hilbert_bound: sup_k ‖T_k‖₂ when the norm is Euclidean, else None.
        exhaustive: All 2^n sign patterns were averaged.
        trials: Trials actually run.
        patterns: Sign patterns per average.
    """
    estimate: float
    sup_norm: float
    hilbert_bound: Optional[float]
    exhaustive: bool
    trials: int
    patterns: int

    def __float__(self) -> float:
        return self.estimate


def _sign_patterns(n: int, trials: int, rng: np.random.Generator) -> tuple[np.ndarray, bool]:
    if 2**n * trials <= RBOUND_CONFIG["exhaustive_limit"]:
        return np.array(list(itertools.product((1.0, -1.0), repeat=n))), True
    return rng.choice((1.0, -1.0), size=(RBOUND_CONFIG["sampled_signs"], n)), False


def _ratios(AX: np.ndarray, X: np.ndarray, signs: np.ndarray, norm: VectorNormSpec) -> np.ndarray:
    """Ratio of Rademacher averages for stacks AX, X of shape (b, probes, n, d)."""
    if norm.is_euclidean:
        # Rademacher sums are orthogonal in L²(Ω; ℓ²).
        num = np.sum(np.abs(AX) ** 2, axis=(-2, -1))
        den = np.sum(np.abs(X) ** 2, axis=(-2, -1))
    else:
        num = np.mean(norm.norm(np.einsum("sn,bpnd->bpsd", signs, AX)) ** 2, axis=-1)
        den = np.mean(norm.norm(np.einsum("sn,bpnd->bpsd", signs, X)) ** 2, axis=-1)
    return np.sqrt(num / np.where(den == 0.0, 1.0, den))


def estimate_r_bound(
    family: Sequence[np.ndarray] | np.ndarray,
    spec: Optional[RademacherTrialSpec] = None,
    norm: VectorNormSpec = EUCLIDEAN,
    seed_top: bool = True,
) -> RBoundEstimate:
    """Sampled max of (E‖Σ ε_k T_k x_k‖²)^{1/2} / (E‖Σ ε_k x_k‖²)^{1/2}.

    With ``seed_top`` trial 0 includes the member of largest norm, probed
    along its top right singular vector, so the estimate is at least the
    Euclidean sup of norms. Without it every trial is random.
    """
    spec = spec or RademacherTrialSpec()
    mats = np.asarray(family, dtype=complex)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[0] == 0:
        raise DimensionMismatch(f"family must be a nonempty stack of square matrices, got {mats.shape}")
    count, dim = mats.shape[0], mats.shape[1]
    n = min(spec.n, count)
    rng = np.random.default_rng(spec.seed)
    signs, exhaustive = _sign_patterns(n, spec.trials, rng)

    norms = stacked_norms(mats, norm)
    top = int(np.argmax(norms))
    _, _, vh = np.linalg.svd(mats[top])
    top_vector = vh[0].conj()

    best = 0.0
    batch = RBOUND_CONFIG["batch"]
    for start in range(0, spec.trials, batch):
        size = min(batch, spec.trials - start)
        subsets = np.stack([rng.permutation(count)[:n] for _ in range(size)])
        X = rng.standard_normal((size, spec.probes, n, dim)) + 1j * rng.standard_normal((size, spec.probes, n, dim))
        if start == 0 and seed_top:
            subsets[0, 0] = top
            if n > 1:
                others = np.setdiff1d(np.arange(count), [top])
                subsets[0, 1:] = rng.permutation(others)[: n - 1]
            X[0, 0] = 0.0
            X[0, 0, 0] = top_vector
        AX = np.einsum("bnij,bpnj->bpni", mats[subsets], X)
        best = max(best, float(np.max(_ratios(AX, X, signs, norm))))

    sup_norm = float(np.max(norms))
    hilbert = sup_norm if norm.is_euclidean else None
    if not spec.reportable:
        logger.warning("R-bound estimate from only %d trials", spec.trials)
    logger.debug("R-bound estimate %.6g over %d members (sup norm %.6g)", best, count, sup_norm)
    return RBoundEstimate(best, sup_norm, hilbert, exhaustive, spec.trials, signs.shape[0])
