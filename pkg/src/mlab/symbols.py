"""Frequency symbols: the built-in library, symbol-side norms and checks.

A symbol maps xi in R^d \\ {0} to an operator between two vector models.
Scalar symbols (identity-valued on any model) carry a vectorized scalar
evaluator; operator symbols carry a per-point matrix evaluator and, for the
built-ins, a vectorized bulk action used by the FFT pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import spaces
from .spaces import (
    INF,
    DomainError,
    OperatorMatrix,
    StructuralError,
    VectorModel,
    check_exponent,
    dual_exponent,
)
from .signal import GridFunction, GridSpec, fourier_inverse


@dataclass(frozen=True)
class Symbol:
    """xi -> operator, with evaluation metadata.

    ``scalar_eval`` takes an (..., d) array of frequencies and returns the
    complex values; it is present exactly when the symbol is scalar.
    ``matrix_eval`` takes a single frequency vector (shape (d,)) and returns
    the flat operator matrix. ``bulk_apply`` takes (xi_flat (M, d), field
    (M, value_shape...)) and applies the symbol frequency-wise.
    """

    name: str
    d: int
    domain: Optional[VectorModel]
    codomain: Optional[VectorModel]
    scalar_eval: Optional[Callable] = None
    matrix_eval: Optional[Callable] = None
    bulk_apply: Optional[Callable] = None
    derivative_eval: Optional[Callable] = None   # (alpha, xi) -> value/matrix
    homogeneity: Optional[float] = None
    singular_at_zero: bool = False
    derivative_edge: Optional[Callable] = None   # xi -> True if d/dxi undefined nearby
    params: dict = field(default_factory=dict)

    @property
    def is_scalar(self) -> bool:
        return self.scalar_eval is not None

    def values(self, xi: np.ndarray) -> np.ndarray:
        """Vectorized scalar values; xi has shape (..., d)."""
        if not self.is_scalar:
            raise StructuralError("not a scalar symbol")
        return self.scalar_eval(np.asarray(xi, dtype=float))

    def matrix(self, xi) -> np.ndarray:
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if self.is_scalar:
            return np.array([[complex(self.values(xi[None, :])[0])]])
        return self.matrix_eval(xi)

    def operator(self, xi, model: Optional[VectorModel] = None) -> OperatorMatrix:
        if self.is_scalar:
            model = spaces.scalar() if model is None else model
            return spaces.scaled_identity(model, self.matrix(xi)[0, 0])
        return OperatorMatrix(self.domain, self.codomain, self.matrix(xi))

    def norm_values(self, xi: np.ndarray) -> np.ndarray:
        """Operator norms (largest singular value) over xi of shape (M, d)."""
        xi = np.asarray(xi, dtype=float)
        if self.is_scalar:
            return np.abs(self.values(xi))
        norm_fn = self.params.get("_norm_eval")
        if norm_fn is not None:
            return norm_fn(xi)
        return np.array([float(np.linalg.svd(self.matrix_eval(x), compute_uv=False)[0])
                         for x in xi])


def _radial(xi: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(xi, dtype=float) ** 2, axis=-1))


def riesz_symbol(s: float, d: int = 1) -> Symbol:
    """|xi|^{-s} as a scalar symbol; homogeneous of degree -s."""
    s = float(s)

    def values(xi):
        r = _radial(xi)
        with np.errstate(divide="ignore"):
            return np.where(r > 0, r ** (-s), np.inf if s > 0 else (1.0 if s == 0 else 0.0)).astype(complex)

    def derivative(alpha, xi):
        # closed form on the line only
        if d != 1:
            raise DomainError("closed-form derivatives implemented for d = 1")
        a = int(np.sum(alpha))
        x = float(np.atleast_1d(xi)[0])
        coef = 1.0
        for i in range(a):
            coef *= (-s - i)
        return coef * np.sign(x) ** a * abs(x) ** (-s - a)

    return Symbol("riesz", d, None, None, scalar_eval=values,
                  derivative_eval=derivative if d == 1 else None,
                  homogeneity=-s, singular_at_zero=s > 0, params={"s": s})


def bessel_symbol(s: float, d: int = 1) -> Symbol:
    """(1 + |xi|^2)^{-s/2}; smooth everywhere, no homogeneity."""
    s = float(s)

    def values(xi):
        r2 = np.sum(np.asarray(xi, dtype=float) ** 2, axis=-1)
        return ((1.0 + r2) ** (-s / 2.0)).astype(complex)

    # d/dxi^a (1+x^2)^{-s/2} = P_a(x) (1+x^2)^{-s/2-a} with
    # P_{a+1} = P_a'(1+x^2) - (s+2a) x P_a, P_0 = 1   (line case)
    polys = [np.array([1.0])]

    def _poly(a):
        while len(polys) <= a:
            k = len(polys) - 1
            P = polys[-1]
            nxt = npoly.polysub(npoly.polymul(npoly.polyder(P), [1.0, 0.0, 1.0]),
                                (s + 2 * k) * npoly.polymul([0.0, 1.0], P))
            polys.append(np.atleast_1d(nxt))
        return polys[a]

    def derivative(alpha, xi):
        if d != 1:
            raise DomainError("closed-form derivatives implemented for d = 1")
        a = int(np.sum(alpha))
        x = float(np.atleast_1d(xi)[0])
        return npoly.polyval(x, _poly(a)) * (1.0 + x * x) ** (-s / 2.0 - a)

    return Symbol("bessel", d, None, None, scalar_eval=values,
                  derivative_eval=derivative if d == 1 else None,
                  homogeneity=None, singular_at_zero=False, params={"s": s})


def shift_coefficient(k: int, alpha: float) -> float:
    """c_k = k^{-alpha} log(k+1)^{-2}."""
    return k ** (-alpha) * math.log(k + 1.0) ** (-2.0)


def shift_symbol(alpha: float, n_terms: int, dim: int, u) -> Symbol:
    """Banded shift symbol sum_k c_k 1_{(k-1,k]}(xi) S_k on l^u_dim.

    S_k shifts coordinates up by k; bands cover (0, n_terms] only, so the
    symbol vanishes for xi <= 0 and xi > n_terms.
    """
    if dim <= n_terms:
        raise DomainError("model dimension must exceed the band count")
    model = spaces.sequence(u, dim)
    cs = np.array([shift_coefficient(k, alpha) for k in range(1, n_terms + 1)])

    def band_index(x: float) -> int:
        if x <= 0.0 or x > n_terms:
            return 0
        return int(math.ceil(x - 1e-12))

    def matrix_eval(xi):
        x = float(np.atleast_1d(xi)[0])
        k = band_index(x)
        if k == 0:
            return np.zeros((dim, dim), dtype=complex)
        return cs[k - 1] * spaces.shift_operator(model, k).entries

    def bulk_apply(xi_flat, fld):
        x = np.asarray(xi_flat, dtype=float).reshape(-1)
        out = np.zeros_like(fld)
        for k in range(1, n_terms + 1):
            mask = (x > k - 1) & (x <= k)
            if not np.any(mask):
                continue
            out[mask, k:dim] = cs[k - 1] * fld[mask, 0:dim - k]
        return out

    def norm_eval(xi):
        x = np.asarray(xi, dtype=float).reshape(-1)
        ks = np.ceil(x - 1e-12).astype(int)
        valid = (x > 0) & (ks >= 1) & (ks <= n_terms)
        out = np.zeros(x.shape)
        out[valid] = cs[ks[valid] - 1]
        return out

    def near_edge(xi):
        x = float(np.atleast_1d(xi)[0])
        return abs(x - round(x)) < 0.02 * max(1.0, abs(x))

    return Symbol("shift", 1, model, model, matrix_eval=matrix_eval,
                  bulk_apply=bulk_apply, derivative_edge=near_edge,
                  params={"alpha": alpha, "n_terms": n_terms, "dim": dim,
                          "u": u, "coefficients": cs, "_norm_eval": norm_eval})


def band_midpoints(n_terms: int) -> np.ndarray:
    return np.arange(1, n_terms + 1) - 0.5


def cube_step_symbol(a: float, coeffs: dict, domain: VectorModel,
                     codomain: Optional[VectorModel] = None, d: int = 1) -> Symbol:
    """Piecewise-constant symbol, value m_k on the half-open cube a([0,1)^d + k).

    ``coeffs`` maps integer k (d = 1) or k-tuples to flat operator matrices
    (or complex scalars, which act as multiples of the identity).
    """
    if a <= 0:
        raise DomainError("cube size must be positive")
    codomain = domain if codomain is None else codomain
    mats = {}
    for k, v in coeffs.items():
        key = (int(k),) if np.isscalar(k) else tuple(int(c) for c in k)
        if len(key) != d:
            raise StructuralError("cube index dimension mismatch")
        arr = np.asarray(v, dtype=complex)
        if arr.ndim == 0:
            arr = complex(arr) * np.eye(domain.flat_dim, dtype=complex)
        if arr.shape != (codomain.flat_dim, domain.flat_dim):
            raise StructuralError("coefficient matrix shape mismatch")
        mats[key] = arr

    zero = np.zeros((codomain.flat_dim, domain.flat_dim), dtype=complex)

    def cube_of(xi):
        return tuple(int(np.floor(x / a)) for x in np.atleast_1d(xi))

    def matrix_eval(xi):
        return mats.get(cube_of(xi), zero)

    def bulk_apply(xi_flat, fld):
        x = np.asarray(xi_flat, dtype=float).reshape(len(fld), -1)
        keys = np.floor(x / a).astype(int)
        out = np.zeros(fld.shape[:1] + (codomain.flat_dim,), dtype=complex)
        flat_in = fld.reshape(len(fld), -1)
        for k, mat in mats.items():
            mask = np.all(keys == np.asarray(k), axis=1)
            if np.any(mask):
                out[mask] = flat_in[mask] @ mat.T
        return out.reshape(fld.shape[:1] + codomain.value_shape)

    def norm_eval(xi):
        x = np.asarray(xi, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        keys = np.floor(x / a).astype(int)
        out = np.zeros(len(x))
        for k, mat in mats.items():
            mask = np.all(keys == np.asarray(k), axis=1)
            if np.any(mask):
                out[mask] = np.linalg.svd(mat, compute_uv=False)[0]
        return out

    return Symbol("cube_step", d, domain, codomain, matrix_eval=matrix_eval,
                  bulk_apply=bulk_apply,
                  params={"a": a, "coeffs": mats, "_norm_eval": norm_eval})


@dataclass(frozen=True)
class SymbolCoefficients:
    """Per-mode operators m_k over the index set {|k|_inf <= radius}."""

    d: int
    radius: int
    scalar: bool
    values: np.ndarray  # (2n+1,)*d if scalar else (2n+1,)*d + (cod, dom)
    domain: Optional[VectorModel] = None
    codomain: Optional[VectorModel] = None
    notes: tuple = ()

    def coefficient(self, k):
        idx = tuple(np.atleast_1d(k) + self.radius)
        return self.values[idx]


@dataclass(frozen=True)
class FrequencyGrid:
    """Midpoint nodes over [-xi_max, xi_max]^d; even counts avoid xi = 0."""

    d: int
    xi_max: float
    points_per_axis: int

    def __post_init__(self):
        if self.points_per_axis % 2:
            raise DomainError("use an even node count so the grid avoids 0")

    @property
    def step(self) -> float:
        return 2.0 * self.xi_max / self.points_per_axis

    def nodes(self) -> np.ndarray:
        ax = -self.xi_max + self.step * (np.arange(self.points_per_axis) + 0.5)
        if self.d == 1:
            return ax[:, None]
        g = np.meshgrid(*([ax] * self.d), indexing="ij")
        return np.stack([c.reshape(-1) for c in g], axis=-1)

    @property
    def cell_volume(self) -> float:
        return self.step ** self.d


def lr_symbol_norm(m: Symbol, r, grid: FrequencyGrid) -> float:
    """Quadrature of ||m(xi)||^r over the truncated grid; sup for r = inf.

    Reports +inf when the declared homogeneity makes the integral diverge at
    the origin (r * s >= d for m ~ |xi|^{-s}).
    """
    r = check_exponent(r)
    if (m.singular_at_zero and m.homogeneity is not None and r != INF
            and r * (-m.homogeneity) >= grid.d):
        return INF
    vals = m.norm_values(grid.nodes())
    if r == INF:
        return float(np.max(vals)) if vals.size else 0.0
    return float(np.sum(vals ** r) * grid.cell_volume) ** (1.0 / r)


def weak_lr_symbol_norm(m: Symbol, r, grid: FrequencyGrid) -> float:
    """Weak-L^r quasi-norm of xi -> ||m(xi)|| on the grid."""
    r = check_exponent(r)
    if r == INF:
        raise DomainError("weak norm requires r < inf")
    vals = np.sort(m.norm_values(grid.nodes()))[::-1]
    ranks = np.arange(1, vals.size + 1) * grid.cell_volume
    return float(np.max(vals * ranks ** (1.0 / r))) if vals.size else 0.0


def uniform_weighted_bound(m: Symbol, sigma: float, grid: FrequencyGrid) -> float:
    """sup over the grid of |xi|^sigma ||m(xi)||."""
    nodes = grid.nodes()
    w = _radial(nodes) ** float(sigma)
    return float(np.max(w * m.norm_values(nodes)))


def averaged_coefficients(m: Symbol, a: float, radius: int,
                          quad_order: int = 8) -> SymbolCoefficients:
    """Cube averages m_k = a^{-d} integral over a([0,1]^d + k) of m.

    Tensor midpoint rule with ``quad_order`` nodes per axis. If the symbol is
    singular inside a sampled cube, the singular node is excluded (principal
    value style) and the coefficient is flagged in ``notes``.
    """
    if a <= 0:
        raise DomainError("cube size must be positive")
    d = m.d
    offsets = (np.arange(quad_order) + 0.5) * (a / quad_order)
    if d == 1:
        local = offsets[:, None]
    else:
        g = np.meshgrid(*([offsets] * d), indexing="ij")
        local = np.stack([c.reshape(-1) for c in g], axis=-1)
    ks = np.arange(-radius, radius + 1)
    notes = []
    if m.is_scalar:
        shape = (2 * radius + 1,) * d
        values = np.zeros(shape, dtype=complex)
    else:
        opshape = (m.codomain.flat_dim, m.domain.flat_dim)
        values = np.zeros((2 * radius + 1,) * d + opshape, dtype=complex)

    def cube_indices():
        if d == 1:
            for k in ks:
                yield (k,)
        else:
            for k0 in ks:
                for k1 in ks:
                    yield (k0, k1)

    for k in cube_indices():
        corner = a * np.asarray(k, dtype=float)
        nodes = corner[None, :] + local
        keep = np.ones(len(nodes), dtype=bool)
        if m.singular_at_zero:
            keep = np.max(np.abs(nodes), axis=1) > 1e-12
            if not np.all(keep):
                notes.append((k, "singular node excluded"))
        idx = tuple(np.asarray(k) + radius)
        if m.is_scalar:
            vals = m.values(nodes[keep])
            values[idx] = np.mean(vals) if np.any(keep) else 0.0
        else:
            acc = np.zeros((m.codomain.flat_dim, m.domain.flat_dim), dtype=complex)
            cnt = 0
            for node in nodes[keep]:
                acc += m.matrix_eval(node)
                cnt += 1
            values[idx] = acc / max(cnt, 1)
    return SymbolCoefficients(d, radius, m.is_scalar, values,
                              m.domain, m.codomain, tuple(notes))


# -- Mihlin-Hoermander annulus report ----------------------------------------

@dataclass(frozen=True)
class AnnulusEntry:
    alpha: tuple
    R: float
    value: float
    flagged: bool
    note: str = ""


@dataclass(frozen=True)
class MihlinReport:
    r: float
    rho: float
    n_derivs: int
    entries: tuple          # primary side, sup over domain probes
    adjoint_entries: tuple  # adjoint side, sup over codomain probes
    m1: float
    m2: float
    excluded_nodes: int

    def to_rows(self) -> list:
        rows = []
        for side, entries in (("primary", self.entries), ("adjoint", self.adjoint_entries)):
            for e in entries:
                rows.append({"side": side, "alpha": list(e.alpha), "R": e.R,
                             "value": e.value, "flagged": e.flagged, "note": e.note})
        return rows


def _multi_indices(d: int, max_order: int):
    if d == 1:
        for a in range(max_order + 1):
            yield (a,)
    else:
        for total in range(max_order + 1):
            for a0 in range(total + 1):
                yield (a0, total - a0)


def _numerical_derivative(fn, alpha, xi, rel_step=1e-3):
    """Nested central differences with one Richardson extrapolation.

    Returns (value, disagreement) where the disagreement compares the two
    Richardson levels; callers flag entries when it exceeds 1e-4 relatively.
    """
    alpha = tuple(alpha)
    order = int(np.sum(alpha))
    if order == 0:
        v = fn(xi)
        return v, 0.0
    axis = next(i for i, a in enumerate(alpha) if a > 0)
    rest = tuple(a - (1 if i == axis else 0) for i, a in enumerate(alpha))
    scale = max(np.linalg.norm(xi), 1e-6)
    h0 = rel_step * scale

    def first_diff(h):
        e = np.zeros_like(np.asarray(xi, dtype=float))
        e[axis] = h
        vp, _ = _numerical_derivative(fn, rest, xi + e, rel_step)
        vm, _ = _numerical_derivative(fn, rest, xi - e, rel_step)
        return (vp - vm) / (2.0 * h)

    d1, d2, d4 = first_diff(h0), first_diff(h0 / 2), first_diff(h0 / 4)
    r1 = (4.0 * d2 - d1) / 3.0
    r2 = (4.0 * d4 - d2) / 3.0
    denom = max(np.max(np.abs(r2)), 1e-300)
    dis = float(np.max(np.abs(r2 - r1)) / denom)
    return r2, dis


def _annulus_nodes(d: int, R: float, nodes_1d: int = 256, nodes_2d: int = 64):
    """Scale-covariant midpoint nodes on {R <= |xi| < 2R} with weights."""
    if d == 1:
        u = 1.0 + (np.arange(nodes_1d) + 0.5) / nodes_1d
        du = R / nodes_1d
        xs = np.concatenate([R * u, -R * u])[:, None]
        w = np.full(len(xs), du)
        return xs, w
    u = 1.0 + (np.arange(nodes_2d) + 0.5) / nodes_2d
    th = 2.0 * np.pi * (np.arange(nodes_2d) + 0.5) / nodes_2d
    rr, tt = np.meshgrid(R * u, th, indexing="ij")
    xs = np.stack([(rr * np.cos(tt)).reshape(-1), (rr * np.sin(tt)).reshape(-1)], axis=-1)
    w = (rr * (R / nodes_2d) * (2.0 * np.pi / nodes_2d)).reshape(-1)
    return xs, w


def _probe_set(model: Optional[VectorModel], count: int, seed: int) -> list:
    if model is None:
        return [np.array([1.0 + 0j])]
    rng = np.random.default_rng(seed)
    probes = [np.eye(model.flat_dim, dtype=complex)[j] for j in range(model.flat_dim)]
    for _ in range(count):
        v = rng.standard_normal(model.flat_dim) + 1j * rng.standard_normal(model.flat_dim)
        probes.append(v / np.linalg.norm(v))
    return probes


def mihlin_annulus_report(m: Symbol, r, rho, n_derivs: int, R_list,
                          use_closed_form: bool = True,
                          random_probes: int = 32,
                          probe_seed: int = 2024) -> MihlinReport:
    """Weighted annulus integrals R^{|a| + d/r - d/rho} ||d^a m||_{L^rho(annulus)}.

    The sup over unit x is taken over canonical basis probes plus random unit
    vectors; the adjoint-side table applies d^a m(xi)^* to codomain probes.
    Nodes where the symbol declares its derivative singular are excluded.
    """
    r = check_exponent(r)
    rho = check_exponent(rho)
    if rho == INF:
        raise DomainError("rho = inf is not supported")
    d = m.d
    have_closed = use_closed_form and m.derivative_eval is not None

    def deriv_matrix(alpha, xi):
        if have_closed:
            val = m.derivative_eval(alpha, xi)
            return np.atleast_2d(np.asarray(val, dtype=complex)), 0.0
        if m.is_scalar:
            fn = lambda x: complex(m.values(np.asarray(x, dtype=float)[None, :])[0])
        else:
            fn = lambda x: m.matrix_eval(np.asarray(x, dtype=float))
        val, dis = _numerical_derivative(fn, alpha, np.asarray(xi, dtype=float))
        return np.atleast_2d(np.asarray(val, dtype=complex)), dis

    probes_dom = _probe_set(m.domain, random_probes, probe_seed)
    probes_cod = _probe_set(m.codomain, random_probes, probe_seed + 1)
    entries, adj_entries = [], []
    excluded_total = 0
    for alpha in _multi_indices(d, n_derivs):
        for R in R_list:
            xs, w = _annulus_nodes(d, float(R))
            keep = np.ones(len(xs), dtype=bool)
            if m.derivative_edge is not None and int(np.sum(alpha)) > 0 and not have_closed:
                keep = np.array([not m.derivative_edge(x) for x in xs])
            excluded = int(np.sum(~keep))
            excluded_total += excluded
            mats = []
            flagged = False
            for x in xs[keep]:
                mat, dis = deriv_matrix(alpha, x)
                if dis > 1e-4:
                    flagged = True
                mats.append(mat)
            mats = np.asarray(mats)
            wk = w[keep]
            weight = float(R) ** (np.sum(alpha) + d / r - d / rho)
            note = f"{excluded} edge nodes excluded" if excluded else ""

            def side_value(probes, adjoint):
                best = 0.0
                for x in probes:
                    act = (np.conj(mats.transpose(0, 2, 1)) @ x if adjoint else mats @ x)
                    nrms = np.linalg.norm(act, axis=-1)
                    val = weight * float(np.sum(nrms ** rho * wk)) ** (1.0 / rho)
                    best = max(best, val)
                return best

            entries.append(AnnulusEntry(tuple(alpha), float(R),
                                        side_value(probes_dom, False), flagged, note))
            adj_entries.append(AnnulusEntry(tuple(alpha), float(R),
                                            side_value(probes_cod, True), flagged, note))
    m1 = max((e.value for e in entries), default=0.0)
    m2 = max((e.value for e in adj_entries), default=0.0)
    return MihlinReport(r, rho, n_derivs, tuple(entries), tuple(adj_entries),
                        m1, m2, excluded_total)


# -- kernel positivity --------------------------------------------------------

@dataclass(frozen=True)
class PositivityReport:
    min_real: float
    max_imag: float
    max_abs: float
    tolerance: float
    positive: bool
    label: str = "sampled"
    regularized_origin: bool = False


def kernel_positivity_check(m: Symbol, grid: GridSpec,
                            origin_quad: int = 4096) -> PositivityReport:
    """Sample F^{-1} m on the grid and report sampled positivity.

    The verdict is over samples only (never a proof). For a symbol declared
    singular at the origin the xi = 0 node takes the cell mean with the
    singular node excluded; the unpaired Nyquist node is zeroed so real even
    symbols produce real kernels.
    """
    if not m.is_scalar:
        raise StructuralError("kernel positivity check expects a scalar symbol")
    dual = grid.dual()
    if grid.d == 1:
        xi = dual.axis()[:, None]
    else:
        mesh = dual.mesh()
        xi = np.stack([c.reshape(-1) for c in mesh], axis=-1)
    vals = np.zeros(len(xi), dtype=complex)
    nz = np.any(np.abs(xi) > 1e-15, axis=1)
    vals[nz] = m.values(xi[nz])
    regularized = False
    if np.any(~nz):
        if m.singular_at_zero:
            # cell mean around the origin, even midpoint count avoids 0
            step = dual.step
            offs = -step / 2 + step * (np.arange(origin_quad) + 0.5) / origin_quad
            if grid.d == 1:
                cell = offs[:, None]
            else:
                g = np.meshgrid(offs, offs, indexing="ij")
                cell = np.stack([c.reshape(-1) for c in g], axis=-1)
            vals[~nz] = np.mean(m.values(cell))
            regularized = True
        else:
            vals[~nz] = m.values(np.zeros((1, grid.d)))
    field = vals.reshape((dual.points,) * dual.d)
    # zero the unpaired -N/2 node per axis (symmetrize the truncation)
    for ax in range(dual.d):
        sl = [slice(None)] * dual.d
        sl[ax] = 0
        field[tuple(sl)] = 0.0
    kernel = fourier_inverse(GridFunction(dual, spaces.scalar(), field))
    ks = kernel.samples
    max_abs = float(np.max(np.abs(ks)))
    tol = 1e-6 * max_abs
    min_real = float(np.min(ks.real))
    max_imag = float(np.max(np.abs(ks.imag)))
    return PositivityReport(min_real, max_imag, max_abs, tol,
                            bool(min_real >= -tol and max_imag <= tol),
                            "sampled", regularized)
