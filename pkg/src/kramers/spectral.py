"""Grid-sampled spectral densities and the series containers.

The continuous spectral variable k is discretized on a geometric grid; the
finite k -> 0 limit of each density is stored separately (after pole removal
the densities are regular at the origin).  Between nodes the density is a
cubic spline; beyond the last node it continues as the power law fitted on
the last decade of samples, so a density behaves as a callable on all of
[0, oo) and can be fed straight to the half-line and Fourier integrators.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .quadrature import QuadratureSpec

__all__ = [
    "SpectralGrid",
    "SpectralDensity",
    "SeriesExpansion",
    "ProblemConfig",
    "GridTooCoarse",
]


class GridTooCoarse(Exception):
    """The interpolation self-check failed on a coarsened grid."""


@dataclass(frozen=True)
class SpectralGrid:
    """Strictly increasing k-nodes on (0, k_max]; k = 0 is held out."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 8:
            raise ValueError("grid needs at least 8 nodes")
        if nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing and positive")
        object.__setattr__(self, "nodes", nodes)

    @property
    def k_max(self) -> float:
        return float(self.nodes[-1])

    @classmethod
    def geometric(cls, count: int = 320, k_min: float = 1e-3, k_max: float = 2000.0):
        # k_max is generous because the densities decay only like k^-2 with
        # logarithmic corrections; truncating earlier costs ~1e-3 in the
        # velocity corrections
        return cls(np.geomspace(k_min, k_max, count))

    def doubled(self) -> "SpectralGrid":
        return SpectralGrid(np.geomspace(self.nodes[0], self.nodes[-1], 2 * self.nodes.size))


class SpectralDensity:
    """One Neumann iterate E_n(k), sampled on a SpectralGrid.

    Parameters
    ----------
    grid : SpectralGrid
    values : array of samples aligned with ``grid.nodes``
    value_at_zero : float
        The finite limit at k = 0 (computed analytically, not extrapolated).
    order : int
        Index n of the iterate.
    """

    def __init__(self, grid: SpectralGrid, values, value_at_zero: float, order: int = 0):
        values = np.asarray(values, dtype=float)
        if values.shape != grid.nodes.shape:
            raise ValueError("values must align with grid nodes")
        if not (np.all(np.isfinite(values)) and math.isfinite(value_at_zero)):
            raise ValueError("density samples must be finite")
        self.grid = grid
        self.values = values
        self.value_at_zero = float(value_at_zero)
        self.order = int(order)
        k_full = np.concatenate(([0.0], grid.nodes))
        v_full = np.concatenate(([self.value_at_zero], values))
        self._spline = CubicSpline(k_full, v_full)
        self._tail_coef, self._tail_exponent = self._fit_tail()

    def _fit_tail(self):
        k = self.grid.nodes
        mask = k >= self.grid.k_max / 10.0
        kk, vv = k[mask], self.values[mask]
        tiny = 1e-300
        if np.max(np.abs(vv)) < 1e-14 or np.any(vv * vv[-1] <= 0):
            return 0.0, -2.0
        slope, _ = np.polyfit(np.log(kk), np.log(np.abs(vv) + tiny), 1)
        # anchor the power law at the last sample so the tail is continuous
        return float(self.values[-1]), float(slope)

    @property
    def tail_exponent(self) -> float:
        """Fitted decay power p of |E(k)| ~ k^p on the last decade."""
        return self._tail_exponent

    def __call__(self, k):
        karr = np.asarray(k, dtype=float)
        inside = karr <= self.grid.k_max
        out = np.empty_like(karr)
        out[inside] = self._spline(karr[inside])
        out[~inside] = self._tail_coef * (karr[~inside] / self.grid.k_max) ** self._tail_exponent
        return float(out) if np.ndim(k) == 0 else out

    def self_check(self, rel_tol: float = 1e-5):
        """Interpolate from every other node and compare on the held-out ones.

        Raises GridTooCoarse when the cubic interpolation error exceeds
        ``rel_tol`` relative to the density's overall scale.
        """
        k_full = np.concatenate(([0.0], self.grid.nodes))
        v_full = np.concatenate(([self.value_at_zero], self.values))
        coarse = CubicSpline(k_full[::2], v_full[::2])
        err = np.max(np.abs(coarse(k_full[1::2]) - v_full[1::2]))
        scale = max(np.max(np.abs(v_full)), 1e-30)
        if err > rel_tol * scale:
            raise GridTooCoarse(
                f"interpolation self-check error {err / scale:.2e} exceeds {rel_tol:.1e}"
            )

    def map(self, values, value_at_zero: float, order: int | None = None) -> "SpectralDensity":
        """New density on the same grid."""
        return SpectralDensity(
            self.grid, values, value_at_zero, self.order + 1 if order is None else order
        )


@dataclass(frozen=True)
class SeriesExpansion:
    """Ordered expansion coefficients in powers of the diffuseness q."""

    kind: str  # "forward" (slip series) or "inverse" (gradient series)
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in ("forward", "inverse"):
            raise ValueError(f"unknown series kind {self.kind!r}")
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs or not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be a nonempty finite sequence")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def partial_sum(self, q: float, order: int | None = None) -> float:
        """Sum of c_n q^n through the given order (default: all)."""
        last = self.order if order is None else order
        if last > self.order:
            raise ValueError(f"series only built to order {self.order}")
        return float(sum(c * q**n for n, c in enumerate(self.coefficients[: last + 1])))

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.kind, "order": self.order, "coefficients": list(self.coefficients)}
        )

    @classmethod
    def from_json(cls, text: str) -> "SeriesExpansion":
        data = json.loads(text)
        series = cls(kind=data["kind"], coefficients=tuple(data["coefficients"]))
        if series.order != data.get("order", series.order):
            raise ValueError("order field inconsistent with coefficient count")
        return series


@dataclass(frozen=True)
class ProblemConfig:
    """Everything a single solve needs: physics inputs plus discretization.

    Exactly one of ``gradient`` (forward problem) or ``slip`` (inverse
    problem) must be given.
    """

    q: float = 1.0
    gradient: float | None = 1.0
    slip: float | None = None
    order: int = 3
    quad: QuadratureSpec | None = None
    grid_count: int = 320
    grid_k_min: float = 1e-3
    grid_k_max: float = 2000.0

    def __post_init__(self):
        if not (0.0 <= self.q <= 1.0):
            raise ValueError(f"q must lie in [0, 1], got {self.q}")
        if not (0 <= self.order <= 12):
            raise ValueError(f"order must lie in [0, 12], got {self.order}")
        if (self.gradient is None) == (self.slip is None):
            raise ValueError("exactly one of gradient or slip must be set")
        driving = self.gradient if self.gradient is not None else self.slip
        if not math.isfinite(driving):
            raise ValueError("driving value must be finite")

    def make_grid(self) -> SpectralGrid:
        return SpectralGrid.geometric(self.grid_count, self.grid_k_min, self.grid_k_max)
