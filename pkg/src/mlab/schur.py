"""Schur multipliers on finite Schatten classes with a spectral resolution.

A spectral resolution partitions the matrix indices into labeled blocks of
mutually orthogonal projections summing to the identity; the Schur map
multiplies the (row-block j, column-block k) entries by m_{f(j) - f(k)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import spaces
from .spaces import (
    DomainError,
    StructuralError,
    check_exponent,
)
from .probes import CallableOp, NormSearchResult, ProbeConfig, VectorSpace, norm_search


@dataclass(frozen=True)
class SpectralResolution:
    n: int
    blocks: tuple  # ((label, (indices...)), ...)

    def __post_init__(self):
        seen = []
        for _, idx in self.blocks:
            seen.extend(idx)
        if sorted(seen) != list(range(self.n)):
            raise StructuralError("blocks must partition 0..n-1 disjointly")

    def labels_by_index(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=int)
        for label, idx in self.blocks:
            for i in idx:
                lab[i] = label
        return lab


def default_resolution(n: int) -> SpectralResolution:
    """Singleton blocks, labels 0..n-1 shifted to be symmetric about 0."""
    return SpectralResolution(n, tuple((j - n // 2, (j,)) for j in range(n)))


@dataclass(frozen=True)
class SchurData:
    """Finitely supported coefficients j -> m_j, a label map f, and r."""

    m: dict
    r: float
    f: Optional[dict] = None  # None = identity on labels

    def f_value(self, label: int) -> int:
        if self.f is None:
            return int(label)
        if label not in self.f:
            raise StructuralError(f"label {label} has no f-value")
        return int(self.f[label])


def decay_constant(data: SchurData) -> float:
    """sup_j (1 + |j|^{1/r}) |m_j| over the (finite) support."""
    r = check_exponent(data.r)
    best = 0.0
    for j, v in data.m.items():
        best = max(best, (1.0 + abs(j) ** (1.0 / r)) * abs(v))
    return best


def coefficient_matrix(data: SchurData, e: SpectralResolution) -> np.ndarray:
    lab = e.labels_by_index()
    fv = np.array([data.f_value(l) for l in lab])
    diff = fv[:, None] - fv[None, :]
    C = np.zeros((e.n, e.n), dtype=complex)
    for j, v in data.m.items():
        C[diff == j] = complex(v)
    return C


def schur_multiply(data: SchurData, e: SpectralResolution, v) -> np.ndarray:
    """Entrywise action sum_{j,k} m_{f(j)-f(k)} e_j v e_k."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (e.n, e.n):
        raise StructuralError("matrix side does not match the resolution")
    return coefficient_matrix(data, e) * v


def adjoint_data(data: SchurData) -> SchurData:
    """Coefficients conj(m(-j)); the adjoint for the tr(A conj(B)) pairing."""
    return SchurData({-j: np.conj(v) for j, v in data.m.items()}, data.r, data.f)


def trace_pair(A, B) -> complex:
    """tr(A conj(B)), the pairing under which the adjoint identity holds."""
    return complex(np.trace(np.asarray(A) @ np.conj(np.asarray(B))))


def schur_norm_search(data: SchurData, e: SpectralResolution, a,
                      cfg: ProbeConfig) -> NormSearchResult:
    """Lower bound for the Schur map norm on the Schatten-a class.

    Power iteration through the Schatten duality maps, from deterministic
    starts (identity, the matrix unit at the largest coefficient) plus random
    matrices. Endpoints a in {1, inf} are refused (degenerate duality maps).
    """
    a = check_exponent(a)
    if a <= 1.0 or a == spaces.INF:
        raise DomainError("Schatten exponent must lie in (1, inf)")
    model = spaces.schatten(a, e.n)
    C = coefficient_matrix(data, e)
    Cbar = np.conj(C)
    space = VectorSpace(model)
    op = CallableOp(lambda v: C * v, lambda w: Cbar * w, space, space)
    starts = [np.eye(e.n, dtype=complex)]
    jmax, kmax = np.unravel_index(int(np.argmax(np.abs(C))), C.shape)
    unit = np.zeros((e.n, e.n), dtype=complex)
    unit[jmax, kmax] = 1.0
    starts.append(unit)
    return norm_search(op, a, a, cfg, starts=starts)
