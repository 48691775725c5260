"""Sampled regions of the complex plane used to certify operator classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ...config.defaults import REGION_CONFIG
from ...config.models import ClassTag


def _ladder(scale: float, per_decade: int) -> np.ndarray:
    """Geometric samples spanning [10^low·scale, 10^high·scale]."""
    low, high = REGION_CONFIG["decade_low"], REGION_CONFIG["decade_high"]
    count = (high - low) * per_decade + 1
    return np.geomspace(10.0**low * scale, 10.0**high * scale, count)


@dataclass(frozen=True)
class SectorRegion:
    """Samples of S_φ = {|arg λ| ≤ φ} ∪ {0}.

    Attributes:
        phi: Half-opening angle in [0, π).
        radii: Sample radii (0 allowed).
        samples_per_arc: Angles per radius, spread uniformly over [-φ, φ].
    """
    phi: float
    radii: np.ndarray
    samples_per_arc: int = REGION_CONFIG["samples_per_arc"]

    def __post_init__(self) -> None:
        if not 0.0 <= self.phi < np.pi:
            raise ValueError(f"sector angle must lie in [0, π), got {self.phi}")
        radii = np.asarray(self.radii, dtype=float)
        if radii.size == 0 or np.any(radii < 0):
            raise ValueError("sector radii must be a nonempty list of nonnegative values")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def default(cls, phi: float, scale: float = 1.0) -> SectorRegion:
        scale = scale if scale > 0 else 1.0
        radii = np.concatenate([[0.0], _ladder(scale, REGION_CONFIG["points_per_decade"])])
        return cls(phi, radii)

    def points(self) -> np.ndarray:
        angles = np.array([0.0]) if self.phi == 0.0 else np.linspace(-self.phi, self.phi, self.samples_per_arc)
        return (self.radii[:, None] * np.exp(1j * angles)[None, :]).ravel()

    def contains(self, z: complex) -> bool:
        return z == 0 or abs(np.angle(z)) <= self.phi

    def describe(self) -> str:
        return (f"sector phi={self.phi:.6g}, {self.radii.size} radii in "
                f"[{self.radii.min():.3g}, {self.radii.max():.3g}], {self.samples_per_arc} angles")


@dataclass(frozen=True)
class StripRegion:
    """Samples of Z_c = {|Im λ| ≥ c} on a real × imaginary lattice.

    Attributes:
        c: Half-width of the excluded strip.
        imag_samples: Imaginary parts, all with |Im| ≥ c.
        real_samples: Real parts.
        decay_ladder: Imaginary parts 2^k·c used for decay fits.
    """
    c: float
    imag_samples: np.ndarray
    real_samples: np.ndarray
    decay_ladder: np.ndarray = field(default_factory=lambda: np.array([]))

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError(f"strip half-width must be positive, got {self.c}")
        imag = np.asarray(self.imag_samples, dtype=float)
        if imag.size == 0 or np.any(np.abs(imag) < self.c * (1.0 - 1e-12)):
            raise ValueError("imaginary samples must satisfy |Im λ| ≥ c")
        object.__setattr__(self, "imag_samples", imag)
        object.__setattr__(self, "real_samples", np.asarray(self.real_samples, dtype=float))
        object.__setattr__(self, "decay_ladder", np.asarray(self.decay_ladder, dtype=float))

    @classmethod
    def default(cls, c: float, scale: float = 1.0, spectrum: Optional[Sequence[complex]] = None) -> StripRegion:
        """Offsets from the strip edge on a geometric ladder; real parts include -Re(a_j)."""
        scale = scale if scale > 0 else 1.0
        offsets = np.concatenate([[0.0], _ladder(scale, REGION_CONFIG["points_per_decade"])])
        imag = np.concatenate([c + offsets, -(c + offsets)])
        reals = _ladder(scale, REGION_CONFIG["real_samples"] // 2 or 1)
        real = [0.0, *reals, *(-reals)]
        if spectrum is not None:
            real.extend(-np.real(np.asarray(spectrum, dtype=complex)))
        ladder = c * 2.0 ** np.arange(REGION_CONFIG["decay_rungs"])
        return cls(c, imag, np.unique(np.asarray(real, dtype=float)), ladder)

    def points(self) -> np.ndarray:
        return (self.real_samples[:, None] + 1j * self.imag_samples[None, :]).ravel()

    def contains(self, z: complex) -> bool:
        return abs(z.imag) >= self.c

    def describe(self) -> str:
        return (f"strip c={self.c:.6g}, {self.real_samples.size} real x "
                f"{self.imag_samples.size} imaginary samples, |Im| up to {np.abs(self.imag_samples).max():.3g}")


@dataclass(frozen=True)
class ParabolaRegion:
    """Samples of Π_c = {Re z ≥ c² - (Im z)²/(4c²)}.

    Boundary points are z = c² - y² + 2icy; interior points shift them right
    by a nonnegative offset.
    """
    c: float
    y_samples: np.ndarray
    offsets: np.ndarray

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError(f"parabola parameter must be positive, got {self.c}")
        offsets = np.asarray(self.offsets, dtype=float)
        if offsets.size == 0 or np.any(offsets < 0):
            raise ValueError("parabola offsets must be nonnegative")
        object.__setattr__(self, "y_samples", np.asarray(self.y_samples, dtype=float))
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def default(cls, c: float, scale: float = 1.0) -> ParabolaRegion:
        scale = scale if scale > 0 else 1.0
        ys = _ladder(np.sqrt(scale), REGION_CONFIG["points_per_decade"] // 2)
        y = np.concatenate([[0.0], ys, -ys])
        offsets = np.concatenate([[0.0], _ladder(scale, REGION_CONFIG["points_per_decade"] // 4)])
        return cls(c, y, offsets)

    def boundary(self) -> np.ndarray:
        y = self.y_samples
        return self.c**2 - y**2 + 2j * self.c * y

    def points(self) -> np.ndarray:
        return (self.boundary()[:, None] + self.offsets[None, :]).ravel()

    def contains(self, z: complex) -> bool:
        return z.real >= self.c**2 - z.imag**2 / (4.0 * self.c**2) - 1e-12 * max(1.0, abs(z))

    def describe(self) -> str:
        return (f"parabola c={self.c:.6g}, {self.y_samples.size} boundary parameters x "
                f"{self.offsets.size} offsets")


@dataclass
class ClassificationReport:
    """Sampled evidence for membership in an operator class.

    The constant is a sampled supremum and therefore a lower bound of the
    true class constant.

    Attributes:
        tag: Class being certified.
        constant: K̂, the maximum of the defining quantity over the samples
            (the fitted exponent for strip-decay).
        worst_point: Sample attaining K̂, or the offending singular point.
        passed: K̂ ≤ K_max and no singularity in the region.
        samples: Number of sampled points.
        k_max: User ceiling.
        singular: A resolvent singularity was found in the region.
        sampling: Description of the sampling ladder.
        details: Additional measured quantities.
    """
    tag: ClassTag
    constant: float
    worst_point: complex
    passed: bool
    samples: int
    k_max: float
    singular: bool = False
    sampling: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "tag": self.tag.value,
            "constant": self.constant,
            "worst_point": self.worst_point,
            "passed": self.passed,
            "samples": self.samples,
            "k_max": self.k_max,
            "singular": self.singular,
            "sampling": self.sampling,
        }
        out.update({f"detail.{key}": value for key, value in self.details.items()})
        return out
