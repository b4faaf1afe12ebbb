"""Spin-grid image type and the energy function the whole package minimizes."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from ._kernels import flip_delta_raw

__all__ = ["SpinImage", "EnergyParams", "energy", "flip_delta", "neighbors"]


@dataclass(eq=False, repr=False)
class SpinImage:
    """A width x height grid of spins, each exactly -1 or +1, stored row-major.

    The polarity convention is fixed package-wide: white pixels are +1,
    black pixels are -1. Instances behave as values: the constructor copies
    its input and nothing in this package mutates a caller's image.
    """

    width: int
    height: int
    spins: np.ndarray

    def __post_init__(self):
        self.width = operator.index(self.width)
        self.height = operator.index(self.height)
        if self.width < 1 or self.height < 1:
            raise ValueError(
                f"image dimensions must be positive, got {self.width}x{self.height}"
            )
        arr = np.array(self.spins, dtype=np.int8).ravel()
        if arr.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} spins for a "
                f"{self.width}x{self.height} image, got {arr.size}"
            )
        bad = (arr != 1) & (arr != -1)
        if bad.any():
            idx = int(np.argmax(bad))
            raise ValueError(
                f"spin at index {idx} is {int(arr[idx])}, expected -1 or +1"
            )
        self.spins = arr

    @classmethod
    def from_array(cls, array) -> "SpinImage":
        """Build from a 2-D array-like of -1/+1 values."""
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(arr.shape[1], arr.shape[0], arr)

    def to_array(self) -> np.ndarray:
        """The spins as a fresh (height, width) int8 array."""
        return self.spins.reshape(self.height, self.width).copy()

    def copy(self) -> "SpinImage":
        return SpinImage(self.width, self.height, self.spins)

    @property
    def size(self) -> int:
        return self.width * self.height

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpinImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.spins, other.spins))
        )

    def __repr__(self) -> str:
        return f"SpinImage(width={self.width}, height={self.height})"


@dataclass(frozen=True)
class EnergyParams:
    """Coefficients of the energy function.

    h biases spins toward one sign, beta couples 4-adjacent pixel pairs,
    eta ties each pixel to the observed image. beta and eta must be
    nonnegative (zero is allowed for degenerate setups).
    """

    h: float
    beta: float
    eta: float

    def __post_init__(self):
        for name in ("h", "beta", "eta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        if self.eta < 0:
            raise ValueError(f"eta must be nonnegative, got {self.eta}")


def _require_same_shape(x: SpinImage, y: SpinImage) -> None:
    if x.width != y.width or x.height != y.height:
        raise ValueError(
            f"dimension mismatch: x is {x.width}x{x.height}, "
            f"y is {y.width}x{y.height}"
        )


def _energy_arrays(spins: np.ndarray, obs: np.ndarray, width: int, height: int,
                   params: EnergyParams) -> float:
    # Full from-scratch evaluation on raw arrays; the reference the
    # incremental bookkeeping is checked against.
    s = spins.reshape(height, width)
    field_sum = int(np.sum(s, dtype=np.int64))
    pair_sum = int(np.sum(s[:, :-1] * s[:, 1:], dtype=np.int64)) + int(
        np.sum(s[:-1, :] * s[1:, :], dtype=np.int64)
    )
    fidelity_sum = int(np.sum(spins * obs, dtype=np.int64))
    return float(
        params.h * field_sum - params.beta * pair_sum - params.eta * fidelity_sum
    )


def energy(x: SpinImage, y: SpinImage, params: EnergyParams) -> float:
    """Total energy of working image x against observed image y.

    E = h * sum_i(x_i) - beta * sum_{adjacent pairs}(x_i x_j)
        - eta * sum_i(x_i y_i)

    The pair sum runs over unordered 4-adjacent pairs, each counted once:
    W*(H-1) + H*(W-1) pairs on a W x H grid, with no wraparound.
    """
    _require_same_shape(x, y)
    return _energy_arrays(x.spins, y.spins, x.width, x.height, params)


def flip_delta(x: SpinImage, y: SpinImage, i: int, params: EnergyParams) -> float:
    """Energy change from flipping pixel i of x, without full recomputation.

    Equal to energy(x with pixel i flipped, y) - energy(x, y), evaluated in
    closed form: -2 * x_i * (h - beta * sum of x over N(i) - eta * y_i),
    where N(i) is the 4-neighborhood (truncated at borders).
    """
    _require_same_shape(x, y)
    if not 0 <= i < x.size:
        raise IndexError(
            f"pixel index {i} out of range for a {x.width}x{x.height} image "
            f"({x.size} pixels)"
        )
    return float(
        flip_delta_raw(x.spins, y.spins, x.width, x.height, i,
                       params.h, params.beta, params.eta)
    )


def neighbors(i: int, width: int, height: int) -> list[int]:
    """4-adjacent indices of pixel i on a width x height row-major grid.

    Order is up, down, left, right, skipping neighbors that fall outside
    the grid; interior pixels get 4, edges 3, corners 2.
    """
    if width < 1 or height < 1:
        raise ValueError(f"grid dimensions must be positive, got {width}x{height}")
    if not 0 <= i < width * height:
        raise IndexError(
            f"pixel index {i} out of range for a {width}x{height} grid"
        )
    row, col = divmod(i, width)
    out = []
    if row > 0:
        out.append(i - width)
    if row < height - 1:
        out.append(i + width)
    if col > 0:
        out.append(i - 1)
    if col < width - 1:
        out.append(i + 1)
    return out
