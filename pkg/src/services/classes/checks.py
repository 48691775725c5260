"""Sampled certification of sectorial, strip, parabola, R-bounded and BIP classes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ...config.defaults import RBOUND_CONFIG, REGION_CONFIG
from ...config.models import ClassTag
from ..errors import IllConditioned, InconsistentSquareRoot, NotSectorial
from ..linop import (
    EUCLIDEAN,
    ModelOperator,
    VectorNormSpec,
    operator_norm,
    resolvent_apply,
    resolvent_matrices,
    resolvent_norms,
    stacked_norms,
)
from .fractional import imaginary_power_oracle
from .rbound import RademacherTrialSpec, estimate_r_bound
from .regions import ClassificationReport, ParabolaRegion, SectorRegion, StripRegion

logger = logging.getLogger(__name__)


def _contained_singularity(A: ModelOperator, contains: Callable[[complex], bool]) -> Optional[complex]:
    """First -a_j lying in the region, if any."""
    for mu in A.eigenvalues():
        if contains(complex(-mu)):
            return complex(-mu)
    return None


def _report(
    tag: ClassTag,
    points: np.ndarray,
    values: np.ndarray,
    k_max: float,
    sampling: str,
    singular_point: Optional[complex] = None,
    **details,
) -> ClassificationReport:
    """Maximum of sampled values; inf entries mark singularities."""
    infinite = ~np.isfinite(values)
    if singular_point is None and np.any(infinite):
        singular_point = complex(points[np.argmax(infinite)])
    singular = singular_point is not None
    finite = np.where(infinite, -np.inf, values)
    idx = int(np.argmax(finite))
    constant = np.inf if singular else float(finite[idx])
    worst = singular_point if singular else complex(points[idx])
    passed = (not singular) and constant <= k_max
    logger.debug("%s: K=%.6g at %s over %d samples, pass=%s", tag.value, constant, worst, points.size, passed)
    return ClassificationReport(tag, constant, worst, passed, int(points.size), k_max, singular, sampling, dict(details))


def check_sectorial(
    A: ModelOperator, region: SectorRegion, K_max: float, norm: VectorNormSpec = EUCLIDEAN
) -> ClassificationReport:
    """Sample (1 + |λ|)‖(A + λ)^{-1}‖ over S_φ."""
    points = region.points()
    values = (1.0 + np.abs(points)) * resolvent_norms(A, points, norm)
    hit = _contained_singularity(A, region.contains)
    return _report(ClassTag.SECTORIAL, points, values, K_max, region.describe(), hit)


def check_strip(
    A: ModelOperator, region: StripRegion, K_max: float, norm: VectorNormSpec = EUCLIDEAN
) -> ClassificationReport:
    """Sample ‖(A + λ)^{-1}‖ over Z_c."""
    points = region.points()
    values = resolvent_norms(A, points, norm)
    hit = _contained_singularity(A, region.contains)
    return _report(ClassTag.STRIP, points, values, K_max, region.describe(), hit)


def check_strip_decay(
    A: ModelOperator, region: StripRegion, norm: VectorNormSpec = EUCLIDEAN
) -> ClassificationReport:
    """Fit ‖(A + λ)^{-1}‖ ≈ C|Im λ|^{-α} along |Im λ| = 2^k·c.

    The constant of the report is the fitted exponent α; the fit uses the
    upper half of the ladder.
    """
    threshold = REGION_CONFIG["decay_threshold"]
    ladder = region.decay_ladder
    if ladder.size < 2:
        ladder = region.c * 2.0 ** np.arange(REGION_CONFIG["decay_rungs"])
    real = region.real_samples
    peaks = np.empty(ladder.size)
    for k, y in enumerate(ladder):
        line = np.concatenate([real + 1j * y, real - 1j * y])
        peaks[k] = np.max(resolvent_norms(A, line, norm))
    hit = _contained_singularity(A, region.contains)
    samples = ladder.size * 2 * real.size
    if hit is not None or not np.all(np.isfinite(peaks)):
        worst = hit if hit is not None else complex(0.0, ladder[np.argmax(~np.isfinite(peaks))])
        return ClassificationReport(ClassTag.STRIP_DECAY, 0.0, worst, False, samples, threshold, True, region.describe())
    upper = slice(ladder.size // 2, None)
    slope, intercept = np.polyfit(np.log(ladder[upper]), np.log(peaks[upper]), 1)
    alpha = float(-slope)
    return ClassificationReport(
        ClassTag.STRIP_DECAY,
        alpha,
        complex(0.0, ladder[-1]),
        alpha >= threshold,
        samples,
        threshold,
        False,
        region.describe(),
        {"decay_exponent": alpha, "prefactor": float(np.exp(intercept)), "rungs": int(ladder.size)},
    )


def _finite_max(values: np.ndarray) -> float:
    return float(np.max(np.where(np.isfinite(values), values, -np.inf)))


def _check_square_root(Lam: ModelOperator, sqrtLam: ModelOperator) -> float:
    S = sqrtLam.matrix()
    defect = float(np.linalg.norm(S @ S - Lam.matrix(), 2))
    if defect > 1e-8 * max(float(np.linalg.norm(Lam.matrix(), 2)), 1.0):
        raise InconsistentSquareRoot(f"‖S² - Λ‖ = {defect:.3e}")
    return defect


def check_parabola(
    Lam: ModelOperator,
    region: ParabolaRegion,
    K_max: float,
    sqrtLam: ModelOperator,
    norm: VectorNormSpec = EUCLIDEAN,
) -> ClassificationReport:
    """Sample √|z|‖(Λ+z)^{-1}‖ and ‖Λ^{1/2}(Λ+z)^{-1}‖ over Π_c.

    Π_c membership also requires Λ ∈ P(0); the ray [0, ∞) is sampled too and
    its constant recorded.
    """
    defect = _check_square_root(Lam, sqrtLam)
    scale = max(operator_norm(Lam), 1.0)
    ray = SectorRegion.default(0.0, scale)
    sector = check_sectorial(Lam, ray, np.inf, norm)

    points = region.points()
    weighted = np.sqrt(np.abs(points)) * resolvent_norms(Lam, points, norm)
    rooted = resolvent_norms(Lam, points, norm, left=sqrtLam)
    values = np.maximum(weighted, rooted)
    hit = _contained_singularity(Lam, region.contains)
    if hit is None and sector.singular:
        hit = sector.worst_point
    return _report(
        ClassTag.PARABOLA,
        points,
        values,
        K_max,
        region.describe(),
        hit,
        sectorial_constant=sector.constant,
        weighted_constant=_finite_max(weighted),
        root_constant=_finite_max(rooted),
        root_defect=defect,
    )


def _family_indices(norms: np.ndarray) -> np.ndarray:
    """Largest-norm members plus an even spread, at most family_cap of them."""
    cap = RBOUND_CONFIG["family_cap"]
    if norms.size <= cap:
        return np.arange(norms.size)
    largest = np.argsort(norms)[::-1][: cap // 2]
    spread = np.linspace(0, norms.size - 1, cap - cap // 2).astype(int)
    return np.unique(np.concatenate([largest, spread]))


def check_r_strip(
    A: ModelOperator,
    region: StripRegion,
    K_max: float,
    trial_spec: Optional[RademacherTrialSpec] = None,
    norm: VectorNormSpec = EUCLIDEAN,
) -> ClassificationReport:
    """R-bound of {(A + λ)^{-1} : λ sampled in Z_c}."""
    points = region.points()
    inverses, singular = resolvent_matrices(A, points)
    hit = _contained_singularity(A, region.contains)
    if hit is not None or np.any(singular):
        worst = hit if hit is not None else complex(points[np.argmax(singular)])
        return ClassificationReport(ClassTag.R_STRIP, np.inf, worst, False, int(points.size), K_max, True, region.describe())
    idx = _family_indices(stacked_norms(inverses, norm))
    estimate = estimate_r_bound(inverses[idx], trial_spec, norm)
    return ClassificationReport(
        ClassTag.R_STRIP,
        estimate.estimate,
        complex(points[idx[np.argmax(stacked_norms(inverses[idx], norm))]]),
        estimate.estimate <= K_max,
        int(points.size),
        K_max,
        False,
        region.describe(),
        {"family_size": int(idx.size), "sup_norm": estimate.sup_norm, "hilbert_bound": estimate.hilbert_bound,
         "exhaustive": estimate.exhaustive, "trials": estimate.trials},
    )


def check_r_parabola(
    Lam: ModelOperator,
    region: ParabolaRegion,
    K_max: float,
    sqrtLam: ModelOperator,
    trial_spec: Optional[RademacherTrialSpec] = None,
    norm: VectorNormSpec = EUCLIDEAN,
) -> ClassificationReport:
    """R-bounds of {√z(Λ+z)^{-1}} and {Λ^{1/2}(Λ+z)^{-1}} over Π_c; the larger is reported."""
    _check_square_root(Lam, sqrtLam)
    points = region.points()
    inverses, singular = resolvent_matrices(Lam, points)
    hit = _contained_singularity(Lam, region.contains)
    if hit is not None or np.any(singular):
        worst = hit if hit is not None else complex(points[np.argmax(singular)])
        return ClassificationReport(ClassTag.R_PARABOLA, np.inf, worst, False, int(points.size), K_max, True, region.describe())
    weighted = np.sqrt(points)[:, None, None] * inverses
    rooted = sqrtLam.matrix()[None, :, :] @ inverses
    estimates = []
    for family in (weighted, rooted):
        idx = _family_indices(stacked_norms(family, norm))
        estimates.append(estimate_r_bound(family[idx], trial_spec, norm))
    constant = max(e.estimate for e in estimates)
    worst_family = weighted if estimates[0].estimate >= estimates[1].estimate else rooted
    return ClassificationReport(
        ClassTag.R_PARABOLA,
        constant,
        complex(points[int(np.argmax(stacked_norms(worst_family, norm)))]),
        constant <= K_max,
        int(points.size),
        K_max,
        False,
        region.describe(),
        {"weighted_estimate": estimates[0].estimate, "root_estimate": estimates[1].estimate,
         "exhaustive": estimates[0].exhaustive and estimates[1].exhaustive},
    )


def check_bip(
    A: ModelOperator,
    delta: float = REGION_CONFIG["bip_delta"],
    samples: int = REGION_CONFIG["bip_samples"],
    K_max: float = np.inf,
    norm: VectorNormSpec = EUCLIDEAN,
) -> ClassificationReport:
    """Sample ‖A^{it}‖ for t on a symmetric grid of [-δ, δ]."""
    ts = np.linspace(-delta, delta, samples)
    sampling = f"imaginary powers, {samples} values of t in [-{delta:.6g}, {delta:.6g}]"
    try:
        mats = np.stack([imaginary_power_oracle(A, float(t)).matrix() for t in ts])
    except (NotSectorial, IllConditioned) as e:
        logger.info("imaginary powers unavailable: %s", e)
        return ClassificationReport(ClassTag.BIP, np.inf, 0j, False, samples, K_max, True, sampling, {"error": str(e)})
    values = stacked_norms(mats, norm)
    return _report(ClassTag.BIP, ts.astype(complex), values, K_max, sampling)


@dataclass(frozen=True)
class EquivalenceReport:
    """Transfer of a strip bound on A to parabola bounds on A².

    Attributes:
        strip_constant: K, the sampled sup of ‖(A+λ)^{-1}‖ at λ = ±i√z.
        weighted_constant: Sampled sup of √|z|‖(A²+z)^{-1}‖.
        root_constant: Sampled sup of ‖A(A²+z)^{-1}‖.
        pointwise_excess: Largest ratio of a parabola quantity to its mapped strip bound.
        split_residual: Relative defect of the split identity on random probes.
        passed: Both bounds hold pointwise and the split identity holds.
    """
    strip_constant: float
    weighted_constant: float
    root_constant: float
    pointwise_excess: float
    split_residual: float
    samples: int
    passed: bool


def split_resolvent_apply(A: ModelOperator, z: complex, x: np.ndarray) -> np.ndarray:
    """(A² + z)^{-1}x = (1/(2√z))((iA + √z)^{-1} + (-iA + √z)^{-1})x."""
    mu = np.sqrt(complex(z))
    return (resolvent_apply(A.scaled(1j), mu, x) + resolvent_apply(A.scaled(-1j), mu, x)) / (2.0 * mu)


def strip_parabola_equivalence(
    A: ModelOperator,
    c: float,
    region: Optional[ParabolaRegion] = None,
    probes: int = 8,
    seed: int = 0,
) -> EquivalenceReport:
    """Check that strip bounds on A imply parabola bounds on Λ = A² (Euclidean norm).

    With μ = √z, A² + z = (A - iμ)(A + iμ) and partial fractions give

        μ(A² + z)^{-1} = (1/2i)((A - iμ)^{-1} - (A + iμ)^{-1})
        A(A² + z)^{-1} = (1/2)((A - iμ)^{-1} + (A + iμ)^{-1})

    so both the weighted and the rooted quantity are bounded pointwise by
    (‖(A - iμ)^{-1}‖ + ‖(A + iμ)^{-1}‖)/2, the mean of two strip samples.
    """
    Lam = A.square()
    region = region or ParabolaRegion.default(c, max(operator_norm(Lam), 1.0))
    points = region.points()
    mu = np.sqrt(points)
    strip_low = resolvent_norms(A, -1j * mu)
    strip_high = resolvent_norms(A, 1j * mu)
    bound = 0.5 * (strip_low + strip_high)
    weighted = np.abs(mu) * resolvent_norms(Lam, points)
    rooted = resolvent_norms(Lam, points, left=A)
    if not (np.all(np.isfinite(bound)) and np.all(np.isfinite(weighted))):
        return EquivalenceReport(np.inf, np.inf, np.inf, np.inf, np.inf, int(points.size), False)
    excess = float(np.max(np.maximum(weighted, rooted) / bound))

    rng = np.random.default_rng(seed)
    residual = 0.0
    for z in rng.choice(points, size=min(probes, points.size), replace=False):
        x = rng.standard_normal(A.dim) + 1j * rng.standard_normal(A.dim)
        direct = resolvent_apply(Lam, z, x)
        split = split_resolvent_apply(A, z, x)
        residual = max(residual, float(np.linalg.norm(direct - split) / max(np.linalg.norm(direct), 1e-300)))

    strip_constant = float(max(np.max(strip_low), np.max(strip_high)))
    passed = excess <= 1.0 + 1e-6 and residual <= 1e-6
    return EquivalenceReport(
        strip_constant, float(np.max(weighted)), float(np.max(rooted)), excess, residual, int(points.size), passed
    )

