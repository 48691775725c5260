"""Tests for class certification, fractional powers and R-bounds."""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.config.models import ClassTag
from src.services.classes import (
    ParabolaRegion,
    RademacherTrialSpec,
    SectorRegion,
    StripRegion,
    balakrishnan_power,
    check_bip,
    check_parabola,
    check_r_strip,
    check_sectorial,
    check_strip,
    check_strip_decay,
    ensure_sectorial_spectrum,
    estimate_r_bound,
    fractional_power,
    imaginary_power_oracle,
    principal_sqrt,
    pv_projection,
    q_operator,
    strip_parabola_equivalence,
)
from src.services.errors import BranchCutViolation, ExponentOutOfRange, InconsistentSquareRoot, NotSectorial
from src.services.linop import ModelOperator, VectorNormSpec, resolvent_apply


def test_sector_identity():
    """(1 + |λ|)/|1 + λ| on the closed right half-plane peaks at √2."""
    report = check_sectorial(ModelOperator.identity(1), SectorRegion.default(np.pi / 2), 10.0)
    assert report.tag is ClassTag.SECTORIAL
    assert report.passed
    assert 1.0 <= report.constant <= np.sqrt(2.0) + 1e-9
    print(f"✓ Sector constant of I: {report.constant:.6f}")


def test_strip_constants():
    A = ModelOperator.diagonal([1.0, -1.0])
    report = check_strip(A, StripRegion.default(0.5, 1.0, A.eigenvalues()), 1e6)
    assert report.passed
    assert np.isclose(report.constant, 2.0, rtol=1e-9)

    zero = ModelOperator.zeros(1)
    report = check_strip(zero, StripRegion.default(1.0, 1.0, zero.eigenvalues()), 1e6)
    assert report.passed and np.isclose(report.constant, 1.0, rtol=1e-9)
    print("✓ Strip constants")


def test_strip_singularity():
    """-σ(A) = {-10i} lies inside Z_5."""
    A = ModelOperator.diagonal([10j])
    report = check_strip(A, StripRegion.default(5.0, 10.0, A.eigenvalues()), 1e6)
    assert not report.passed
    assert report.singular
    print("✓ Strip singularity reported")


def test_strip_decay_exponent():
    """‖(A + λ)^{-1}‖ decays like |Im λ|^{-1} for a diagonal operator."""
    A = ModelOperator.diagonal([1.0, 2.0])
    report = check_strip_decay(A, StripRegion.default(0.5, 2.0, A.eigenvalues()))
    assert report.passed
    assert abs(report.constant - 1.0) < 0.05
    print(f"✓ Strip decay exponent {report.constant:.4f}")


def test_parabola_of_square():
    A = ModelOperator.diagonal([1.0, 2.0])
    Lam = A.square()
    report = check_parabola(Lam, ParabolaRegion.default(0.5, 4.0), 1e6, A)
    assert report.passed
    assert np.isfinite(report.constant)
    with pytest.raises(InconsistentSquareRoot):
        check_parabola(Lam, ParabolaRegion.default(0.5, 4.0), 1e6, ModelOperator.diagonal([1.0, 3.0]))
    print("✓ Parabola class of A²")


def test_strip_parabola_equivalence():
    report = strip_parabola_equivalence(ModelOperator.diagonal([1.0, -2.0]), 0.5)
    assert report.passed
    assert report.pointwise_excess <= 1.0 + 1e-6
    assert report.split_residual <= 1e-6
    print("✓ Strip bounds transfer to the parabola")


def test_parabola_quantities_split():
    """μ(A²+z)^{-1} and A(A²+z)^{-1} are half-differences and half-sums of strip resolvents."""
    A = ModelOperator.dense([[1.0, 0.5], [0.0, 2.0]])
    x = np.array([1.0 - 0.5j, 2.0 + 1.0j])
    for z in (1.0 + 1.0j, 4.0, 0.5 - 3.0j, 10.0j):
        mu = np.sqrt(z)
        low, high = resolvent_apply(A, -1j * mu, x), resolvent_apply(A, 1j * mu, x)
        squared = resolvent_apply(A.square(), z, x)
        assert np.allclose(mu * squared, (low - high) / 2j, atol=1e-12)
        assert np.allclose(A.apply(squared), (low + high) / 2.0, atol=1e-12)
    report = strip_parabola_equivalence(A, 0.5)
    assert report.passed
    assert report.root_constant <= report.strip_constant * (1.0 + 1e-9)
    print("✓ Parabola quantities split into strip resolvents")


def test_balakrishnan_oracle():
    """A^{-1/2} of diag(4) is 1/2; the ray quadrature matches the eigen oracle."""
    half = balakrishnan_power(ModelOperator.diagonal([4.0]), 0.5)
    assert abs(half.spectrum[0] - 0.5) < 1e-6
    A = ModelOperator.diagonal([1.0, 4.0])
    for theta in (0.25, 0.75):
        value = balakrishnan_power(A, theta).spectrum
        assert np.allclose(value, [1.0, 4.0 ** -theta], atol=1e-6)
    print("✓ Balakrishnan powers")


def test_fractional_power_and_sqrt():
    assert np.isclose(fractional_power(ModelOperator.diagonal([4.0]), 0.5).spectrum[0], 2.0, atol=1e-5)
    A = ModelOperator.dense([[4.0, 1.0], [0.0, 9.0]])
    root = principal_sqrt(A)
    assert np.allclose(root.matrix() @ root.matrix(), A.matrix(), atol=1e-10)
    with pytest.raises(ExponentOutOfRange):
        balakrishnan_power(A, 1.0)
    print("✓ Fractional powers and square roots")


def test_not_sectorial():
    with pytest.raises(NotSectorial):
        ensure_sectorial_spectrum(ModelOperator.diagonal([-1.0, 2.0]))
    report = check_bip(ModelOperator.diagonal([-1.0]))
    assert not report.passed
    print("✓ Spectrum on the cut rejected")


def test_q_operator():
    """Q_A(-1) at θ = 1/2 for A = 1 is -1/2, and the decomposition holds."""
    A = ModelOperator.diagonal([1.0])
    assert abs(q_operator(A, -1.0, 0.5).spectrum[0] + 0.5) < 1e-6
    with pytest.raises(BranchCutViolation):
        q_operator(A, 2.0, 0.5)

    B = ModelOperator.diagonal([2.0, 5.0])
    theta, lam = 0.3, -1.5 + 0.5j
    resolvent = resolvent_apply(B, lam, np.eye(2, dtype=complex))
    power = balakrishnan_power(B, theta).matrix()
    lhs = resolvent @ power - (-lam) ** -theta * resolvent
    assert np.allclose(lhs, q_operator(B, lam, theta).matrix(), atol=1e-6)
    print("✓ Q operator")


def test_pv_projection():
    """The principal-value projection tends to u at rate 1/R."""
    A = ModelOperator.diagonal([1.0])
    u = np.array([1.0 + 0j])
    errors = [abs(pv_projection(A, 0.0, u, R)[0] - 1.0) for R in (1e2, 1e3)]
    assert errors[1] < 1e-2
    assert 5.0 < errors[0] / errors[1] < 20.0
    print("✓ Principal-value projection")


def test_imaginary_powers():
    A = ModelOperator.dense([[2.0, 1.0], [0.0, 3.0]])
    product = imaginary_power_oracle(A, 0.3).matrix() @ imaginary_power_oracle(A, 0.4).matrix()
    assert np.allclose(product, imaginary_power_oracle(A, 0.7).matrix(), atol=1e-8)
    report = check_bip(ModelOperator.diagonal([1.0, 4.0]), K_max=10.0)
    assert report.passed
    print("✓ Imaginary powers form a group")


def test_r_bound_hilbert():
    """For p = 2 the estimate stays below the sup of norms and reaches it for a singleton."""
    rng = np.random.default_rng(0)
    family = rng.standard_normal((6, 3, 3)) + 1j * rng.standard_normal((6, 3, 3))
    estimate = estimate_r_bound(family, RademacherTrialSpec(n=4, trials=512, probes=4))
    assert estimate.estimate <= estimate.hilbert_bound * (1.0 + 1e-9)
    single = estimate_r_bound(family[:1], RademacherTrialSpec(n=1, trials=128, probes=2))
    assert np.isclose(single.estimate, single.sup_norm, rtol=1e-9)
    print("✓ Rademacher estimates")


def test_r_bound_random_trials():
    """Without the seeded trial, random trials alone still reach the Hilbert R-bound."""
    rng = np.random.default_rng(3)
    family = rng.standard_normal((6, 2, 2)) + 1j * rng.standard_normal((6, 2, 2))
    sampled = estimate_r_bound(family, RademacherTrialSpec(n=1, trials=4096, probes=4, seed=11), seed_top=False)
    assert sampled.exhaustive
    assert 0.98 * sampled.sup_norm <= sampled.estimate <= sampled.sup_norm * (1.0 + 1e-9)
    print(f"✓ Random trials reach {sampled.estimate / sampled.sup_norm:.4f} of the sup norm")


def test_r_bound_exceeds_sup_norm_off_hilbert():
    """In ℓ^1.1 the pair {I, e₁ ↦ e₂} has unit norms; x₁ = x₂ = e₁ already gives 2^(1/1.1 - 1/2)."""
    family = np.array([np.eye(2), [[0.0, 0.0], [1.0, 0.0]]])
    norm = VectorNormSpec(1.1)
    estimate = estimate_r_bound(family, RademacherTrialSpec(n=2, trials=4096, probes=4, seed=2), norm, seed_top=False)
    assert estimate.hilbert_bound is None
    assert np.isclose(estimate.sup_norm, 1.0)
    assert estimate.estimate > 1.1 * estimate.sup_norm
    print(f"✓ ℓ^1.1 R-bound estimate {estimate.estimate:.4f} above the sup norm")


def test_r_strip_reproducible():
    A = ModelOperator.diagonal([1.0, -1.0])
    region = StripRegion.default(0.5, 1.0, A.eigenvalues())
    spec = RademacherTrialSpec(n=2, trials=128, probes=2, seed=7)
    first = check_r_strip(A, region, 1e6, spec)
    second = check_r_strip(A, region, 1e6, spec)
    assert first.constant == second.constant
    assert first.passed
    print("✓ R-strip estimates are seed-reproducible")
