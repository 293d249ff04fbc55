"""Discretized function spaces on the torus and the line.

Trigonometric polynomials live on T^d = [0,1)^d through their coefficient
arrays; functions on R^d are sampled on uniform grids over [-L, L)^d. The
transforms use the e^{-2 pi i xi.t} kernel, scaled so the FFT approximates
the integral transform; forward and inverse are exact inverses of each other
on the grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import spaces
from .spaces import (
    INF,
    DegenerateInputError,
    DomainError,
    StructuralError,
    VectorModel,
    batched_norms,
    check_exponent,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [-L, L)^d with N points per axis (N even)."""

    d: int
    half_width: float
    points: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise DomainError("only d in {1, 2} is supported")
        if self.half_width <= 0:
            raise DomainError("half-width must be positive")
        if self.points < 2 or self.points % 2:
            raise DomainError("points per axis must be even and >= 2")

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def cell_volume(self) -> float:
        return self.step ** self.d

    def axis(self) -> np.ndarray:
        return -self.half_width + self.step * np.arange(self.points)

    def mesh(self) -> list:
        axes = [self.axis()] * self.d
        return np.meshgrid(*axes, indexing="ij")

    def dual(self) -> "GridSpec":
        # frequency nodes k/(2L), |k| <= N/2; half-width N/(4L)
        return GridSpec(self.d, self.points / (4.0 * self.half_width), self.points)

    @property
    def nyquist(self) -> float:
        return self.points / (4.0 * self.half_width)


DEFAULT_GRID = GridSpec(1, 64.0, 1 << 16)


@dataclass(frozen=True)
class GridFunction:
    grid: GridSpec
    model: VectorModel
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        want = (self.grid.points,) * self.grid.d + self.model.value_shape
        if arr.shape != want:
            raise StructuralError(f"samples shape {arr.shape}, expected {want}")
        object.__setattr__(self, "samples", arr)

    @property
    def d(self) -> int:
        return self.grid.d


@dataclass(frozen=True)
class TrigPolynomial:
    """f(t) = sum_{|k|_inf <= n} e^{2 pi i k.t} x_k on T^d.

    ``coeffs`` is indexed with axis offset n: coefficient k sits at k + n.
    """

    d: int
    radius: int
    model: VectorModel
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d not in (1, 2):
            raise DomainError("only d in {1, 2} is supported")
        arr = np.asarray(self.coeffs, dtype=complex)
        want = (2 * self.radius + 1,) * self.d + self.model.value_shape
        if arr.shape != want:
            raise StructuralError(f"coeffs shape {arr.shape}, expected {want}")
        object.__setattr__(self, "coeffs", arr)

    def coefficient(self, k) -> np.ndarray:
        idx = tuple(np.atleast_1d(k) + self.radius)
        return self.coeffs[idx]


@dataclass(frozen=True)
class WitnessFamily:
    """A deterministic n -> test-function generator with predicted scaling."""

    name: str
    generator: Callable
    predicted_exponent: float
    predicted_log_power: float


def _space_axes(d: int) -> tuple:
    return tuple(range(d))


def fourier_forward(f: GridFunction) -> GridFunction:
    """Integral Fourier transform on the grid; dual nodes are k/(2L)."""
    d, N = f.grid.d, f.grid.points
    axes = _space_axes(d)
    g = np.fft.fftn(f.samples, axes=axes)
    g = np.fft.fftshift(g, axes=axes)
    k = np.arange(-(N // 2), N // 2)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    for ax in axes:
        shape = [1] * g.ndim
        shape[ax] = N
        g = g * sign.reshape(shape)
    g = g * f.grid.cell_volume
    return GridFunction(f.grid.dual(), f.model, g)


def fourier_inverse(g: GridFunction) -> GridFunction:
    """Inverse of :func:`fourier_forward`; exact round trip on the grid."""
    d, N = g.grid.d, g.grid.points
    axes = _space_axes(d)
    k = np.arange(-(N // 2), N // 2)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    h = g.samples
    for ax in axes:
        shape = [1] * h.ndim
        shape[ax] = N
        h = h * sign.reshape(shape)
    h = np.fft.ifftshift(h, axes=axes)
    h = np.fft.ifftn(h, axes=axes)
    h = h * (N * g.grid.step) ** d  # Delta_xi * N per axis
    return GridFunction(g.grid.dual(), g.model, h)


def torus_samples(f: TrigPolynomial, points_per_axis: int | None = None) -> np.ndarray:
    """Evaluate on the uniform torus grid of M points per axis (M >= 8n)."""
    n, d = f.radius, f.d
    min_pts = max(8 * n, 16)
    M = min_pts if points_per_axis is None else points_per_axis
    if M < 2 * n + 1:
        raise DomainError("torus grid cannot resolve the polynomial")
    arr = np.zeros((M,) * d + f.model.value_shape, dtype=complex)
    ks = np.arange(-n, n + 1)
    if d == 1:
        arr[ks % M] = f.coeffs
    else:
        ix = np.ix_(ks % M, ks % M)
        arr[ix] = f.coeffs
    out = np.fft.ifftn(arr, axes=_space_axes(d)) * M ** d
    return out


def bochner_norm(f, p) -> float:
    """L^p norm by the rectangle rule (max of sample norms for p = inf)."""
    p = check_exponent(p)
    if isinstance(f, GridFunction):
        norms = batched_norms(f.samples, f.model).reshape(-1)
        vol = f.grid.cell_volume
    elif isinstance(f, TrigPolynomial):
        samples = torus_samples(f)
        norms = batched_norms(samples, f.model).reshape(-1)
        vol = 1.0 / norms.size
    else:
        raise StructuralError(f"unsupported function type {type(f)!r}")
    if p == INF:
        return float(np.max(norms)) if norms.size else 0.0
    return float(np.sum(norms ** p) * vol) ** (1.0 / p)


def weak_norm(f: GridFunction, p) -> float:
    """Empirical weak-L^p quasi-norm from the decreasing rearrangement.

    Sample norms are sorted descending (ties kept in sample order) and the
    estimator is max_i a_i (i h^d)^{1/p}.
    """
    p = check_exponent(p)
    if p == INF:
        raise DomainError("weak norm requires p < inf")
    norms = batched_norms(f.samples, f.model).reshape(-1)
    order = np.argsort(-norms, kind="stable")
    a = norms[order]
    ranks = np.arange(1, a.size + 1) * f.grid.cell_volume
    return float(np.max(a * ranks ** (1.0 / p))) if a.size else 0.0


def _sinc(x: np.ndarray) -> np.ndarray:
    return np.sinc(x)


def band_profile(k: int, grid: GridSpec) -> GridFunction:
    """The wave whose Fourier transform is the indicator of (k-1, k].

    Closed form e^{2 pi i (k - 1/2) t} sin(pi t)/(pi t), value 1 at t = 0.
    """
    if grid.d != 1:
        raise DomainError("band profiles are one-dimensional")
    if k < 1:
        raise DomainError("band index must be >= 1")
    t = grid.axis()
    vals = np.exp(2j * np.pi * (k - 0.5) * t) * _sinc(t)
    return GridFunction(grid, spaces.scalar(), vals)


def band_sum_witness(n: int, u, grid: GridSpec, dim: int | None = None) -> GridFunction:
    """sum_{k=n+1}^{2n} (band profile k) tensor e_0 over l^u_dim.

    The scalar part collapses to e^{3 pi i n t} sin(pi n t)/(pi t).
    """
    if grid.d != 1:
        raise DomainError("witness functions are one-dimensional")
    dim = 2 * n + 1 if dim is None else dim
    if dim <= 2 * n:
        raise DomainError("model dimension must exceed 2n")
    model = spaces.sequence(u, dim)
    t = grid.axis()
    scalarpart = np.exp(3j * np.pi * n * t) * n * _sinc(n * t)
    samples = np.zeros((grid.points, dim), dtype=complex)
    samples[:, 0] = scalarpart
    return GridFunction(grid, model, samples)


def witness_scaling_constant(p, window: float, panels_per_unit: int = 1,
                             gauss_order: int = 24) -> float:
    """||sinc||_{L^p[-W, W]} by panelwise Gauss quadrature.

    Panels are unit intervals (the integrand kinks at the integers), so the
    rule converges fast inside each panel. Independent of the grid pipeline.
    """
    p = check_exponent(p)
    W = int(round(window))
    nodes, weights = np.polynomial.legendre.leggauss(gauss_order)
    total = 0.0
    step = 1.0 / panels_per_unit
    for j in range(W * panels_per_unit):
        a, b = j * step, (j + 1) * step
        x = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        total += 0.5 * (b - a) * np.sum(weights * np.abs(_sinc(x)) ** p)
    return float((2.0 * total) ** (1.0 / p))


@dataclass(frozen=True)
class PeriodizationReport:
    p: float
    d: int
    t_values: np.ndarray
    samples: np.ndarray      # partial sums over |j| <= terms
    sup: float               # sup of the partial sums
    tail_bound: float        # rigorous bound on the omitted tail, per point
    sup_upper: float         # sup + tail bound
    terms: int


def sinc_power_periodization(p, d: int = 1, t_grid: np.ndarray | None = None,
                             terms: int = 20000) -> PeriodizationReport:
    """H(t) = sum_j |h(t+j)|^p for h = F^{-1} 1_{[0,1]^d}, on a t-grid.

    |h| factorizes across axes, so only the one-dimensional periodization
    S_p(t) = sum_j |sinc(t+j)|^p is summed; in d dimensions H = prod S_p(t_i)
    and sup H = (sup S_p)^d. Diverges logarithmically at p = 1 (refused).
    """
    p = check_exponent(p)
    if p <= 1.0:
        raise DomainError("periodization requires p > 1")
    if t_grid is None:
        t_grid = np.linspace(0.0, 1.0, 65)
    t = np.asarray(t_grid, dtype=float)
    partial = np.zeros_like(t)
    # chunked vector sum; |sinc(t+j)|^p summed over |j| <= terms
    chunk = max(1, int(2e6 // max(t.size, 1)))
    j0 = -terms
    while j0 <= terms:
        j1 = min(j0 + chunk, terms + 1)
        js = np.arange(j0, j1)
        partial += np.sum(np.abs(_sinc(t[:, None] + js[None, :])) ** p, axis=1)
        j0 = j1
    # |sinc(x)| <= 1/(pi |x|): tail sum <= 2 pi^-p (terms - 1)^{1-p} / (p-1)
    tail = 2.0 * np.pi ** (-p) * (terms - 1.0) ** (1.0 - p) / (p - 1.0)
    sup1 = float(np.max(partial))
    sup_d = sup1 ** d
    # crude but valid d-dim upper: (sup1 + tail)^d
    upper = (sup1 + tail) ** d
    return PeriodizationReport(p, d, t, partial ** d if d > 1 else partial,
                               sup_d, tail, upper, terms)


def transference_constant(p, q, terms: int = 20000, d: int = 1) -> float:
    """(sup H_p)^{1/p} (sup H_{q'})^{1/q'} with the tail-inclusive sups."""
    qp = spaces.dual_exponent(q)
    rep_p = sinc_power_periodization(p, d, terms=terms)
    rep_q = sinc_power_periodization(qp, d, terms=terms)
    return rep_p.sup_upper ** (1.0 / p) * rep_q.sup_upper ** (1.0 / qp)


# -- JSON serialization -------------------------------------------------------

def _model_to_json(model: VectorModel) -> dict:
    return {"kind": model.kind, "n": model.n, "exponent":
            ("inf" if model.exponent == INF else model.exponent)}


def _model_from_json(obj: dict) -> VectorModel:
    exponent = obj.get("exponent", 2.0)
    if exponent == "inf":
        exponent = INF
    return VectorModel(obj["kind"], int(obj.get("n", 1)), float(exponent))


def _complex_to_pairs(arr: np.ndarray) -> list:
    flat = np.asarray(arr, dtype=complex).reshape(-1)
    return np.column_stack([flat.real, flat.imag]).tolist()


def _complex_from_pairs(pairs, shape) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.size == 0:
        return np.zeros(shape, dtype=complex)
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(shape)


def to_json_dict(f) -> dict:
    """Documented JSON schema: model descriptor + flat [re, im] pairs."""
    if isinstance(f, GridFunction):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "grid_function",
            "d": f.grid.d,
            "half_width": f.grid.half_width,
            "points": f.grid.points,
            "model": _model_to_json(f.model),
            "samples": _complex_to_pairs(f.samples),
        }
    if isinstance(f, TrigPolynomial):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "trig_polynomial",
            "d": f.d,
            "radius": f.radius,
            "model": _model_to_json(f.model),
            "coeffs": _complex_to_pairs(f.coeffs),
        }
    raise StructuralError(f"unsupported function type {type(f)!r}")


def from_json_dict(obj: dict):
    model = _model_from_json(obj["model"])
    if obj["type"] == "grid_function":
        grid = GridSpec(int(obj["d"]), float(obj["half_width"]), int(obj["points"]))
        shape = (grid.points,) * grid.d + model.value_shape
        return GridFunction(grid, model, _complex_from_pairs(obj["samples"], shape))
    if obj["type"] == "trig_polynomial":
        d, n = int(obj["d"]), int(obj["radius"])
        shape = (2 * n + 1,) * d + model.value_shape
        return TrigPolynomial(d, n, model, _complex_from_pairs(obj["coeffs"], shape))
    raise StructuralError(f"unknown serialized type {obj.get('type')!r}")


def dumps(f) -> str:
    return json.dumps(to_json_dict(f))


def loads(s: str):
    return from_json_dict(json.loads(s))
