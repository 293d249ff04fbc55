"""Finite-dimensional vector models: norms, duality maps, and operators.

Four model kinds are supported: the complex scalars, sequence spaces l^u_n,
Schatten classes S^p over n x n complex matrices, and Euclidean l^2_n.
Everything is complex; real inputs embed. All values are immutable after
construction, so the whole module is safe to use from concurrent tasks.

The pairing throughout is the sesquilinear one, <x, y> = sum_i x_i conj(y_i)
(Frobenius pairing for matrices).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

INF = float("inf")

SCALAR = "scalar"
SEQUENCE = "sequence"
SCHATTEN = "schatten"
HILBERT = "hilbert"

_KINDS = (SCALAR, SEQUENCE, SCHATTEN, HILBERT)


class StructuralError(ValueError):
    """Shape or model incompatibility."""


class DomainError(ValueError):
    """Parameter outside its admissible range."""


class DegenerateInputError(ValueError):
    """Input for which the operation is undefined (e.g. zero vector)."""


def check_exponent(p) -> float:
    p = float(p)
    if np.isnan(p) or p < 1.0:
        raise DomainError(f"exponent must lie in [1, inf], got {p}")
    return p


def dual_exponent(p) -> float:
    """Hoelder conjugate p' with 1/p + 1/p' = 1; maps 1 <-> inf."""
    p = check_exponent(p)
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class VectorModel:
    """Descriptor of a finite-dimensional normed space.

    ``exponent`` is u for sequence models and p for Schatten models; it is
    fixed at 2 for scalar and Hilbert models.
    """

    kind: str
    n: int = 1
    exponent: float = 2.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown model kind {self.kind!r}")
        if self.n < 1:
            raise DomainError("dimension must be >= 1")
        check_exponent(self.exponent)
        if self.kind in (SCALAR, HILBERT) and self.exponent != 2.0:
            raise DomainError(f"{self.kind} model has fixed exponent 2")
        if self.kind == SCALAR and self.n != 1:
            raise DomainError("scalar model has dimension 1")

    @property
    def value_shape(self) -> tuple:
        if self.kind == SCALAR:
            return ()
        if self.kind == SCHATTEN:
            return (self.n, self.n)
        return (self.n,)

    @property
    def flat_dim(self) -> int:
        return self.n * self.n if self.kind == SCHATTEN else self.n

    def dual(self, p=None) -> "VectorModel":
        """Model carrying the norming functionals for the exponent-p norm."""
        p = self.exponent if p is None else check_exponent(p)
        if self.kind in (SCALAR, HILBERT):
            return self
        return VectorModel(self.kind, self.n, dual_exponent(p))


def scalar() -> VectorModel:
    return VectorModel(SCALAR, 1, 2.0)


def sequence(u, n: int) -> VectorModel:
    return VectorModel(SEQUENCE, n, check_exponent(u))


def schatten(p, n: int) -> VectorModel:
    return VectorModel(SCHATTEN, n, check_exponent(p))


def hilbert(n: int) -> VectorModel:
    return VectorModel(HILBERT, n, 2.0)


@dataclass(frozen=True)
class Vector:
    model: VectorModel
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != self.model.value_shape:
            raise StructuralError(
                f"entries shape {arr.shape} does not match model shape "
                f"{self.model.value_shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)


def vector(model: VectorModel, entries) -> Vector:
    return Vector(model, np.asarray(entries, dtype=complex))


def basis_vector(model: VectorModel, j: int) -> Vector:
    e = np.zeros(model.value_shape, dtype=complex)
    if model.kind == SCALAR:
        e = np.asarray(1.0 + 0j)
    else:
        e[np.unravel_index(j, model.value_shape)] = 1.0
    return Vector(model, e)


# -- batched norms over leading axes ----------------------------------------
#
# ``samples`` has shape batch_shape + model.value_shape; the helpers reduce
# the trailing value axes only. They back both the Vector API and the grid /
# torus pipelines in the signal module.

def _power_norm(a: np.ndarray, p: float, axis) -> np.ndarray:
    if p == INF:
        return np.max(a, axis=axis)
    if p == 1.0:
        return np.sum(a, axis=axis)
    if p == 2.0:
        return np.sqrt(np.sum(a * a, axis=axis))
    return np.sum(a ** p, axis=axis) ** (1.0 / p)


def _singular_values(samples: np.ndarray, n: int) -> np.ndarray:
    mats = samples.reshape((-1, n, n))
    return np.linalg.svd(mats, compute_uv=False)


def batched_norms(samples: np.ndarray, model: VectorModel) -> np.ndarray:
    """Pointwise model norms; reduces the trailing value axes."""
    samples = np.asarray(samples, dtype=complex)
    if model.kind == SCALAR:
        return np.abs(samples)
    if model.kind in (HILBERT,):
        return _power_norm(np.abs(samples), 2.0, axis=-1)
    if model.kind == SEQUENCE:
        return _power_norm(np.abs(samples), model.exponent, axis=-1)
    batch_shape = samples.shape[:-2]
    sv = _singular_values(samples, model.n)
    out = _power_norm(sv, model.exponent, axis=-1)
    return out.reshape(batch_shape)


def batched_duality(samples: np.ndarray, model: VectorModel, p=None) -> np.ndarray:
    """Pointwise norming functionals J_p over the trailing value axes.

    For each nonzero value x, <x, J_p(x)> = ||x||_p and ||J_p(x)||_{p'} = 1.
    Zero values map to zero. For u = 1 zero entries map to 0; for u = inf
    the lowest attaining index carries the functional.
    """
    samples = np.asarray(samples, dtype=complex)
    p = (model.exponent if model.kind in (SEQUENCE, SCHATTEN) else 2.0) if p is None else check_exponent(p)
    if model.kind == SCALAR:
        a = np.abs(samples)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(a > 0, samples / np.where(a > 0, a, 1.0), 0.0)
        return out.astype(complex)
    if model.kind == SCHATTEN:
        return _schatten_duality(samples, model.n, p)
    a = np.abs(samples)
    if p == INF:
        idx = np.argmax(a, axis=-1)
        out = np.zeros_like(samples)
        grid = np.indices(idx.shape)
        sel = tuple(grid) + (idx,)
        vals = samples[sel]
        mods = np.abs(vals)
        nz = mods > 0
        out[sel] = np.where(nz, vals / np.where(nz, mods, 1.0), 0.0)
        return out
    if p == 1.0:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(a > 0, samples / np.where(a > 0, a, 1.0), 0.0).astype(complex)
    norms = _power_norm(a, p, axis=-1)
    scale = np.where(norms > 0, norms, 1.0) ** (1.0 - p)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = samples * a ** (p - 2.0)
    out = np.where(a > 0, out, 0.0)
    return out * np.where(norms > 0, scale, 0.0)[..., None]


def _schatten_duality(samples: np.ndarray, n: int, p: float) -> np.ndarray:
    batch_shape = samples.shape[:-2]
    mats = samples.reshape((-1, n, n))
    out = np.zeros_like(mats)
    for i, m in enumerate(mats):
        u, s, vh = np.linalg.svd(m)
        smax = s[0] if s.size else 0.0
        if smax <= 0:
            continue
        if p == INF:
            out[i] = np.outer(u[:, 0], vh[0, :])
        elif p == 1.0:
            rank = s > smax * 1e-13
            out[i] = u[:, rank] @ vh[rank, :]
        else:
            w = s ** (p - 1.0)
            nrm = _power_norm(s, p, axis=-1)
            out[i] = (u * w) @ vh / nrm ** (p - 1.0)
    return out.reshape(batch_shape + (n, n))


# -- Vector-level API --------------------------------------------------------

def vector_norm(x: Vector) -> float:
    return float(batched_norms(x.entries[None, ...], x.model)[0])


def pair(x: Vector, y: Vector) -> complex:
    """Sesquilinear pairing sum x_i conj(y_i)."""
    return complex(np.sum(x.entries * np.conj(y.entries)))


def duality_map(x: Vector, p=None) -> Vector:
    """Norming functional J_p(x), returned in the dual model at exponent p."""
    if not np.any(x.entries):
        raise DegenerateInputError("duality map undefined at zero")
    p_eff = x.model.exponent if (p is None and x.model.kind in (SEQUENCE, SCHATTEN)) else p
    out = batched_duality(x.entries[None, ...], x.model, p_eff)[0]
    return Vector(x.model.dual(p_eff), out)


@dataclass(frozen=True)
class OperatorMatrix:
    """Linear map between two models, stored on flattened entries.

    The matrix has shape (codomain.flat_dim, domain.flat_dim) and acts on
    vec(x); for Schatten models this is the n^2-dimensional matrix action.
    """

    domain: VectorModel
    codomain: VectorModel
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        want = (self.codomain.flat_dim, self.domain.flat_dim)
        if arr.shape != want:
            raise StructuralError(f"operator shape {arr.shape}, expected {want}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)


def apply_operator(T: OperatorMatrix, x: Vector) -> Vector:
    if x.model != T.domain:
        raise StructuralError("operator domain does not match vector model")
    flat = x.entries.reshape(-1)
    out = T.entries @ flat
    return Vector(T.codomain, out.reshape(T.codomain.value_shape))


def identity_operator(model: VectorModel) -> OperatorMatrix:
    return OperatorMatrix(model, model, np.eye(model.flat_dim, dtype=complex))


def zero_operator(domain: VectorModel, codomain: VectorModel) -> OperatorMatrix:
    return OperatorMatrix(domain, codomain,
                          np.zeros((codomain.flat_dim, domain.flat_dim), dtype=complex))


def scaled_identity(model: VectorModel, z) -> OperatorMatrix:
    return OperatorMatrix(model, model, complex(z) * np.eye(model.flat_dim, dtype=complex))


def diagonal_operator(model: VectorModel, diag) -> OperatorMatrix:
    d = np.asarray(diag, dtype=complex)
    if d.shape != (model.flat_dim,):
        raise StructuralError("diagonal length must match flat dimension")
    return OperatorMatrix(model, model, np.diag(d))


def shift_operator(model: VectorModel, k: int) -> OperatorMatrix:
    """Coordinate shift e_j -> e_{j+k} on a sequence-type model.

    Indices falling outside the truncation are dropped, so the matrix is a
    partial isometry; it is an exact isometry on vectors whose support stays
    in range.
    """
    if model.kind not in (SEQUENCE, HILBERT):
        raise StructuralError("shift operators act on sequence-type models")
    n = model.n
    mat = np.zeros((n, n), dtype=complex)
    for j in range(n):
        if 0 <= j + k < n:
            mat[j + k, j] = 1.0
    return OperatorMatrix(model, model, mat)


def adjoint_operator(T: OperatorMatrix) -> OperatorMatrix:
    """Adjoint for the sesquilinear pairing, mapping dual(cod) -> dual(dom)."""
    return OperatorMatrix(T.codomain.dual(), T.domain.dual(), T.entries.conj().T)


def spectral_norm(T: OperatorMatrix) -> float:
    """Largest singular value of the flat matrix.

    This is the exact operator norm whenever both models are Hilbertian
    (scalar, Hilbert, l^2, S^2); for other models it is the convention used
    by the symbol-side norms.
    """
    if T.entries.size == 0:
        return 0.0
    return float(np.linalg.svd(T.entries, compute_uv=False)[0])


def hilbertian(model: VectorModel) -> bool:
    return model.kind in (SCALAR, HILBERT) or (
        model.kind in (SEQUENCE, SCHATTEN) and model.exponent == 2.0
    )
