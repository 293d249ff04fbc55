"""Multiplier operators: exact on the torus, FFT pipeline on the line.

The torus action is coefficientwise and exact. On the line the pipeline is
forward transform, frequency-wise operator application, inverse transform;
the xi = 0 node of a symbol declared singular at the origin is set to the
zero operator (the mean mode represents the constants).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import spaces, symbols
from .spaces import (
    DegenerateInputError,
    StructuralError,
    VectorModel,
    check_exponent,
)
from .signal import (
    GridFunction,
    GridSpec,
    TrigPolynomial,
    bochner_norm,
    fourier_forward,
    fourier_inverse,
)
from .symbols import Symbol, SymbolCoefficients, riesz_symbol


class AliasingWarning(UserWarning):
    """Input carries non-negligible energy beyond half the Nyquist radius."""


@dataclass(frozen=True)
class TorusMultiplier:
    coeffs: SymbolCoefficients

    @property
    def radius(self) -> int:
        return self.coeffs.radius


@dataclass(frozen=True)
class LineMultiplier:
    symbol: Symbol
    grid: GridSpec


def scalar_torus_multiplier(values, d: int = 1) -> TorusMultiplier:
    """Torus multiplier from a dense scalar coefficient array over |k| <= n."""
    arr = np.asarray(values, dtype=complex)
    radius = (arr.shape[0] - 1) // 2
    if arr.shape != (2 * radius + 1,) * d:
        raise StructuralError("coefficient array must have odd length 2n+1 per axis")
    return TorusMultiplier(SymbolCoefficients(d, radius, True, arr))


def operator_torus_multiplier(mats, d: int, domain: VectorModel,
                              codomain: Optional[VectorModel] = None) -> TorusMultiplier:
    arr = np.asarray(mats, dtype=complex)
    radius = (arr.shape[0] - 1) // 2
    codomain = domain if codomain is None else codomain
    want = (2 * radius + 1,) * d + (codomain.flat_dim, domain.flat_dim)
    if arr.shape != want:
        raise StructuralError(f"operator coefficients shape {arr.shape}, expected {want}")
    return TorusMultiplier(SymbolCoefficients(d, radius, False, arr, domain, codomain))


def apply_torus(M: TorusMultiplier, f: TrigPolynomial) -> TrigPolynomial:
    """Coefficientwise y_k = m_k x_k; exact, no discretization error."""
    c = M.coeffs
    if c.radius < f.radius:
        raise StructuralError("multiplier radius smaller than the polynomial radius")
    if not c.scalar and c.domain != f.model:
        raise StructuralError("multiplier domain does not match the polynomial model")
    if c.radius == f.radius:
        vals = c.values
    else:
        lo = c.radius - f.radius
        hi = lo + 2 * f.radius + 1
        sl = (slice(lo, hi),) * f.d
        vals = c.values[sl]
    if c.scalar:
        shape = vals.shape + (1,) * len(f.model.value_shape)
        out = f.coeffs * vals.reshape(shape)
        return TrigPolynomial(f.d, f.radius, f.model, out)
    flat = f.coeffs.reshape(vals.shape[:f.d] + (f.model.flat_dim,))
    out = np.einsum("...ij,...j->...i", vals, flat)
    model = c.codomain
    return TrigPolynomial(f.d, f.radius, model,
                          out.reshape(vals.shape[:f.d] + model.value_shape))


def out_of_band_fraction(fhat: GridFunction) -> float:
    """Energy fraction beyond half the Nyquist radius, from f-hat samples."""
    norms2 = spaces.batched_norms(fhat.samples, fhat.model) ** 2
    if fhat.grid.d == 1:
        xi = np.abs(fhat.grid.axis())
        outside = xi > fhat.grid.half_width / 2.0
    else:
        mesh = fhat.grid.mesh()
        rad = np.max(np.abs(np.stack(mesh)), axis=0)
        outside = rad > fhat.grid.half_width / 2.0
    total = float(np.sum(norms2))
    if total == 0.0:
        return 0.0
    return float(np.sum(norms2[outside]) / total)


def apply_line(M: LineMultiplier, f: GridFunction,
               check_band: bool = True) -> GridFunction:
    """F^{-1}(m f-hat) through the FFT pipeline.

    Proceeds with an AliasingWarning (never refuses) when the input has more
    than 1e-6 of its energy beyond half the Nyquist radius.
    """
    if f.grid != M.grid:
        raise StructuralError("grid mismatch between multiplier and input")
    sym = M.symbol
    fhat = fourier_forward(f)
    if check_band:
        frac = out_of_band_fraction(fhat)
        if frac > 1e-6:
            warnings.warn(
                f"input has out-of-band energy fraction {frac:.3e}",
                AliasingWarning, stacklevel=2,
            )
    dual = fhat.grid
    if dual.d == 1:
        xi = dual.axis()[:, None]
    else:
        mesh = dual.mesh()
        xi = np.stack([c.reshape(-1) for c in mesh], axis=-1)
    zero_mask = np.all(np.abs(xi) < 1e-15, axis=1)
    if sym.is_scalar:
        vals = np.zeros(len(xi), dtype=complex)
        vals[~zero_mask] = sym.values(xi[~zero_mask])
        if not sym.singular_at_zero and np.any(zero_mask):
            vals[zero_mask] = sym.values(np.zeros((1, dual.d)))
        if not np.all(np.isfinite(vals)):
            raise DegenerateInputError("symbol not evaluable on the dual grid")
        shape = (dual.points,) * dual.d + (1,) * len(f.model.value_shape)
        ghat = fhat.samples * vals.reshape(shape)
        out_model = f.model
    else:
        if sym.domain != f.model:
            raise StructuralError("symbol domain does not match the input model")
        out_model = sym.codomain
        flat = fhat.samples.reshape((len(xi),) + f.model.value_shape)
        if sym.bulk_apply is not None:
            applied = sym.bulk_apply(xi, flat)
            applied = applied.reshape((len(xi),) + out_model.value_shape)
        else:
            applied = np.zeros((len(xi),) + out_model.value_shape, dtype=complex)
            for i, x in enumerate(xi):
                if zero_mask[i] and sym.singular_at_zero:
                    continue
                mat = sym.matrix_eval(x)
                applied[i] = (mat @ flat[i].reshape(-1)).reshape(out_model.value_shape)
        if sym.singular_at_zero and np.any(zero_mask):
            applied[zero_mask] = 0.0
        ghat = applied.reshape((dual.points,) * dual.d + out_model.value_shape)
    return fourier_inverse(GridFunction(dual, out_model, ghat))


def adjoint_torus(M: TorusMultiplier) -> TorusMultiplier:
    """Adjoint for the sesquilinear pairing: conjugate-transposed modes."""
    c = M.coeffs
    if c.scalar:
        return TorusMultiplier(SymbolCoefficients(c.d, c.radius, True, np.conj(c.values)))
    vals = np.conj(np.swapaxes(c.values, -1, -2))
    return TorusMultiplier(SymbolCoefficients(
        c.d, c.radius, False, vals,
        None if c.codomain is None else c.codomain.dual(),
        None if c.domain is None else c.domain.dual()))


def adjoint_line(M: LineMultiplier) -> LineMultiplier:
    sym = M.symbol
    if sym.is_scalar:
        adj = Symbol(sym.name + "_adj", sym.d, None, None,
                     scalar_eval=lambda xi: np.conj(sym.scalar_eval(xi)),
                     homogeneity=sym.homogeneity,
                     singular_at_zero=sym.singular_at_zero)
        return LineMultiplier(adj, M.grid)
    dom = sym.codomain.dual()
    cod = sym.domain.dual()

    def matrix_eval(x):
        return sym.matrix_eval(x).conj().T

    def bulk(xi_flat, fld):
        flat = fld.reshape(len(fld), -1)
        out = np.zeros((len(fld), cod.flat_dim), dtype=complex)
        for i, x in enumerate(xi_flat):
            out[i] = matrix_eval(x) @ flat[i]
        return out.reshape((len(fld),) + cod.value_shape)

    adj = Symbol(sym.name + "_adj", sym.d, dom, cod, matrix_eval=matrix_eval,
                 bulk_apply=None if sym.bulk_apply is None else bulk,
                 homogeneity=sym.homogeneity, singular_at_zero=sym.singular_at_zero)
    return LineMultiplier(adj, M.grid)


def apply_multiplier(T, f):
    if isinstance(T, TorusMultiplier):
        return apply_torus(T, f)
    if isinstance(T, LineMultiplier):
        return apply_line(T, f, check_band=False)
    raise StructuralError(f"unsupported multiplier type {type(T)!r}")


def homogeneous_seminorm(f: GridFunction, s: float, p) -> float:
    """||F^{-1}(|xi|^s f-hat)||_p, the scale-invariant smoothness seminorm.

    For s < 0 the input must have (numerically) vanishing mean mode.
    """
    check_exponent(p)
    s = float(s)
    if s == 0.0:
        return bochner_norm(f, p)
    if s < 0.0:
        fhat = fourier_forward(f)
        norms = spaces.batched_norms(fhat.samples, fhat.model)
        zero_idx = (fhat.grid.points // 2,) * fhat.grid.d
        peak = float(np.max(norms))
        if peak > 0 and norms[zero_idx] > 1e-8 * peak:
            raise DegenerateInputError(
                "mean mode too large for a negative-order seminorm")
    weight = riesz_symbol(-s, f.grid.d)
    out = apply_line(LineMultiplier(weight, f.grid), f, check_band=False)
    return bochner_norm(out, p)


def ratio(T, f, p, q) -> float:
    """Rayleigh-type quotient ||T f||_q / ||f||_p."""
    check_exponent(p)
    check_exponent(q)
    den = bochner_norm(f, p)
    if den == 0.0:
        raise DegenerateInputError("ratio undefined for the zero input")
    return bochner_norm(apply_multiplier(T, f), q) / den
