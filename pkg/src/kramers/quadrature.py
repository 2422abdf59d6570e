"""Semi-infinite quadrature for the three integral families of the solver.

All integrals live on [0, oo).  Three flavours are needed:

* Gaussian-weighted integrals  ``int_0^oo exp(-t^2) f(t) dt``  (the moment
  integrals behind the kernel functions),
* plain half-line integrals of algebraically decaying spectral functions,
* Fourier-cosine transforms ``int_0^oo g(k) cos(kx) dk`` of those functions.

The engine is composite Gauss-Legendre on a split interval with node-doubling
error control plus an algebraic power-law tail estimate; oscillatory
transforms switch to half-period panels with repeated averaging of the
alternating partial sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "NonFiniteIntegrand",
    "ToleranceNotMet",
    "TailDivergence",
    "integrate_gauss_weighted",
    "integrate_halfline",
    "integrate_fourier_cos",
    "gauss_weighted_nodes",
]

# exp(-t^2) < 3e-36 beyond this point; everything past it is noise
_GAUSS_CUTOFF = 9.0
# node-doubling rounds before giving up (node_count .. 8*node_count)
_MAX_ROUNDS = 4
# cap on half-period panels in the oscillatory sweep
_MAX_OSC_PANELS = 20000


class QuadratureError(Exception):
    """Base class for integration failures."""


class NonFiniteIntegrand(QuadratureError):
    """The integrand returned NaN or infinity at a quadrature node."""


class ToleranceNotMet(QuadratureError):
    """Refinement stalled before reaching the requested tolerance."""


class TailDivergence(QuadratureError):
    """The integrand decays too slowly (exponent >= -1) for a finite tail."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts, tolerances and panel boundaries for one integral family.

    Parameters
    ----------
    node_count : int
        Gauss-Legendre nodes per panel (>= 8).
    mapping : str
        One of ``gauss_weighted_halfline``, ``algebraic_halfline``,
        ``fourier_cos``; descriptive only, the integrate_* functions pick
        the actual treatment.
    rel_tol, abs_tol : float
        Acceptance tolerances for the node-doubling error estimate.
    split_points : tuple of float
        Strictly increasing interior panel boundaries.  The last entry is
        where the algebraic tail estimate takes over.
    """

    node_count: int = 64
    mapping: str = "algebraic_halfline"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    split_points: tuple[float, ...] = (1.0, 4.0, 16.0, 64.0)

    def __post_init__(self):
        if self.node_count < 8:
            raise ValueError(f"node_count must be >= 8, got {self.node_count}")
        if not (0.0 < self.rel_tol < 1.0) or not (0.0 < self.abs_tol < 1.0):
            raise ValueError("tolerances must lie in (0, 1)")
        pts = tuple(float(s) for s in self.split_points)
        if len(pts) == 0 or any(s <= 0 for s in pts):
            raise ValueError("split_points must be positive")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("split_points must be strictly increasing")
        object.__setattr__(self, "split_points", pts)

    def doubled(self) -> "QuadratureSpec":
        """Same spec with twice the nodes per panel (self-convergence runs)."""
        return QuadratureSpec(
            node_count=2 * self.node_count,
            mapping=self.mapping,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            split_points=self.split_points,
        )

    def _tol(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@lru_cache(maxsize=256)
def _panel_rule(edges: tuple[float, ...], n: int):
    """Concatenated Gauss-Legendre nodes/weights for consecutive panels."""
    x0, w0 = roots_legendre(n)
    xs, ws = [], []
    for a, b in zip(edges, edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        xs.append(mid + half * x0)
        ws.append(half * w0)
    return np.concatenate(xs), np.concatenate(ws)


def _eval(f, x: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrand("integrand returned a non-finite value")
    return vals


def _refine(f, edges: tuple[float, ...], spec: QuadratureSpec, weighted: bool) -> float:
    n = spec.node_count
    prev = None
    for _ in range(_MAX_ROUNDS):
        x, w = _panel_rule(edges, n)
        vals = _eval(f, x)
        if weighted:
            vals = vals * np.exp(-x * x)
        cur = float(w @ vals)
        if prev is not None and abs(cur - prev) <= spec._tol(cur):
            return cur
        prev = cur
        n *= 2
    raise ToleranceNotMet(
        f"no convergence on {edges} after {_MAX_ROUNDS} node doublings"
    )


def _weighted_edges(spec: QuadratureSpec) -> tuple[float, ...]:
    inner = [s for s in spec.split_points if s < _GAUSS_CUTOFF]
    return (0.0, *inner, _GAUSS_CUTOFF)


def gauss_weighted_nodes(spec: QuadratureSpec):
    """Fixed nodes ``t`` and weights ``w`` (Gauss weight folded in) so that
    ``int_0^oo exp(-t^2) f(t) dt ~= w @ f(t)``.

    Used by the kernel evaluators, which need the rule itself rather than a
    one-shot integral.
    """
    x, w = _panel_rule(_weighted_edges(spec), spec.node_count)
    return x, w * np.exp(-x * x)


def integrate_gauss_weighted(f, spec: QuadratureSpec) -> float:
    """``int_0^oo exp(-t^2) f(t) dt`` for polynomially bounded continuous f."""
    return _refine(f, _weighted_edges(spec), spec, weighted=True)


def _tail_estimate(g, a: float, b: float, spec: QuadratureSpec) -> float:
    """Closed-form tail ``int_b^oo c k^-p dk`` from a two-point power fit
    on [a, b].

    A sign change or an already-negligible magnitude yields a zero tail;
    decay slower than 1/k raises TailDivergence.
    """
    ga, gb = (float(v) for v in _eval(g, np.array([a, b])))
    if abs(gb) <= spec.abs_tol:
        return 0.0
    if ga == 0.0 or (ga > 0) != (gb > 0):
        # no clean power law to fit; the last-panel magnitude bounds the tail
        return 0.0
    p = math.log(abs(ga) / abs(gb)) / math.log(b / a)
    if p <= 1.0:
        raise TailDivergence(
            f"decay exponent {-p:.3f} >= -1 measured on [{a}, {b}]"
        )
    return gb * b / (p - 1.0)


def integrate_halfline(g, spec: QuadratureSpec) -> float:
    """``int_0^oo g(k) dk`` for continuous g with O(k^-2) decay.

    Panels continue geometrically for two decades past the last split point
    before the power-law fit takes over; extrapolating from the split point
    itself is accurate only to ~|g| * split/k^2 and would dominate the error
    budget.
    """
    last = spec.split_points[-1]
    extension = (4.0 * last, 16.0 * last, 64.0 * last)
    edges = (0.0, *spec.split_points, *extension)
    main = _refine(g, edges, spec, weighted=False)
    return main + _tail_estimate(g, extension[-2], extension[-1], spec)


def integrate_fourier_cos(g, x: float, spec: QuadratureSpec) -> float:
    """``int_0^oo g(k) cos(kx) dk`` for even-extendable g with algebraic decay.

    For x = 0 this degenerates to the plain half-line integral.  Otherwise the
    head of the range is integrated on the usual panels and the rest is summed
    over half-period panels; the alternating partial sums are accelerated by
    repeated pairwise averaging.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return integrate_halfline(g, spec)

    half = math.pi / x
    # for slow oscillation the plain panels already resolve cos(kx)
    base_end = 4.0 if x >= 0.5 else spec.split_points[-1]
    inner = [s for s in spec.split_points if s < base_end]
    base = _refine(
        lambda k: g(k) * np.cos(k * x), (0.0, *inner, base_end), spec, weighted=False
    )

    x0, w0 = roots_legendre(spec.node_count)
    a = base_end
    total = 0.0
    partials: list[float] = []
    averaged_prev = None
    for j in range(_MAX_OSC_PANELS):
        mid, h = a + 0.5 * half, 0.5 * half
        nodes = mid + h * x0
        term = float((h * w0) @ _eval(lambda k: g(k) * np.cos(k * x), nodes))
        total += term
        partials.append(total)
        a += half
        if j >= 7:
            window = np.array(partials[-8:])
            while window.size > 1:
                window = 0.5 * (window[1:] + window[:-1])
            averaged = float(window[0])
            # a negligible last panel means the raw sum itself has converged;
            # the averaged value would mix in early, unconverged partials
            if abs(term) <= spec._tol(base + total):
                return base + total
            if averaged_prev is not None and abs(averaged - averaged_prev) <= 0.1 * spec._tol(
                base + averaged
            ):
                return base + averaged
            averaged_prev = averaged
    raise ToleranceNotMet("oscillatory tail did not converge")
