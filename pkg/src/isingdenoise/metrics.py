"""Restoration-quality metrics and the per-sweep energy trace."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import SpinImage, _require_same_shape

__all__ = ["EnergyTrace", "agreement_percent", "disagreement_count"]


@dataclass
class EnergyTrace:
    """Ordered (sweep, energy) samples; sweep 0 is the pre-optimization energy."""

    samples: list[tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        self.samples = [(int(s), float(e)) for s, e in self.samples]
        if self.samples and self.samples[0][0] != 0:
            raise ValueError(
                f"trace must start at sweep 0, got {self.samples[0][0]}"
            )
        for (a, _), (b, _) in zip(self.samples, self.samples[1:]):
            if b <= a:
                raise ValueError(
                    f"sweep indices must be strictly increasing, got {a} then {b}"
                )

    def energies(self) -> list[float]:
        return [e for _, e in self.samples]

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)


def agreement_percent(a: SpinImage, b: SpinImage) -> float:
    """Percentage of pixels on which the two images agree, in [0, 100]."""
    _require_same_shape(a, b)
    matches = int(np.count_nonzero(a.spins == b.spins))
    return 100.0 * matches / a.size


def disagreement_count(a: SpinImage, b: SpinImage) -> int:
    """Number of pixels on which the two images differ (Hamming distance)."""
    _require_same_shape(a, b)
    return int(np.count_nonzero(a.spins != b.spins))
