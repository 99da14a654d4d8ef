"""Generalized controlled-shift gates, local embeddings, and unitary parameterization.

The controlled gate in dimensions (d_A, d_B) with control A sends
|i>_A |j>_B to |i>_A |(j + i) mod d_B>_B; with control B it mirrors to
|(i + j) mod d_A>_A |j>_B. The control index always enters modulo the
target dimension, which is what makes unequal dimensions work.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import TOL
from .errors import BadParams, DimensionMismatch, NotUnitary
from .linalg import Party, expm_skew_hermitian, is_unitary, tensor
from .states import PureState


def cnot_permutation(dims: tuple[int, int], control: Party, repetitions: int = 1) -> np.ndarray:
    """Index permutation ``out[new] = in[old]`` realizing the gate.

    Returns an integer array ``perm`` with ``perm[old_flat_index] = new_flat_index``.
    """
    if repetitions < 0:
        raise BadParams("repetitions must be >= 0")
    d_a, d_b = dims
    perm = np.empty(d_a * d_b, dtype=int)
    for i in range(d_a):
        for j in range(d_b):
            if control == "A":
                ii, jj = i, (j + repetitions * i) % d_b
            elif control == "B":
                ii, jj = (i + repetitions * j) % d_a, j
            else:
                raise DimensionMismatch(f"unknown party {control!r}")
            perm[i * d_b + j] = ii * d_b + jj
    return perm


def cnot(dims: tuple[int, int], control: Party, repetitions: int = 1) -> np.ndarray:
    """Permutation matrix of the generalized CNOT, applied ``repetitions`` times."""
    if repetitions < 1:
        raise BadParams("repetitions must be >= 1")
    perm = cnot_permutation(dims, control, repetitions)
    n = dims[0] * dims[1]
    m = np.zeros((n, n), dtype=complex)
    m[perm, np.arange(n)] = 1.0
    return m


def embed_local(u: np.ndarray, dims: tuple[int, int], side: Party) -> np.ndarray:
    """Lift a local unitary to the full space, acting trivially on the other party."""
    u = np.asarray(u, dtype=complex)
    d = dims[0] if side == "A" else dims[1]
    if u.shape != (d, d):
        raise DimensionMismatch(f"expected {d}x{d} operator on side {side}")
    if side == "A":
        return tensor(u, np.eye(dims[1]))
    if side == "B":
        return tensor(np.eye(dims[0]), u)
    raise DimensionMismatch(f"unknown party {side!r}")


@dataclass(frozen=True)
class UnitaryParam:
    """Coordinates of a Hermitian generator; exp(i*H) is the unitary.

    Packing for dimension d (total d*d reals): the first d entries are the
    diagonal of H, then d(d-1)/2 real parts and d(d-1)/2 imaginary parts of
    the strictly upper triangle, row-major.
    """

    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        if self.dim < 1 or c.shape[0] != self.dim * self.dim:
            raise BadParams(f"need {self.dim * self.dim} coefficients")
        if not np.all(np.isfinite(c)):
            raise BadParams("non-finite coefficient")
        object.__setattr__(self, "coeffs", c)


@lru_cache(maxsize=None)
def _triangle_indices(dim: int):
    return np.diag_indices(dim), np.triu_indices(dim, k=1)


def hermitian_from_coeffs(dim: int, coeffs: np.ndarray) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float).ravel()
    di, iu = _triangle_indices(dim)
    h = np.zeros((dim, dim), dtype=complex)
    h[di] = c[:dim]
    n_off = dim * (dim - 1) // 2
    upper = c[dim : dim + n_off] + 1j * c[dim + n_off :]
    h[iu] = upper
    h[iu[1], iu[0]] = np.conjugate(upper)
    return h


def param_to_unitary(p: UnitaryParam) -> np.ndarray:
    """exp(i*H(p)); the zero parameter vector gives the identity."""
    return expm_skew_hermitian(hermitian_from_coeffs(p.dim, p.coeffs))


def apply(u: np.ndarray, s: PureState) -> PureState:
    """Apply a full-space unitary to a state."""
    u = np.asarray(u, dtype=complex)
    n = s.dims[0] * s.dims[1]
    if u.shape != (n, n):
        raise DimensionMismatch(f"operator size {u.shape} does not match state size {n}")
    if not is_unitary(u, TOL.unitary):
        raise NotUnitary("operator is not unitary")
    return PureState(s.dims, u @ s.amplitudes)


def apply_cnot(s: PureState, control: Party, repetitions: int = 1) -> PureState:
    """CNOT action through the index permutation (no matrix product)."""
    if repetitions % _target_dim(s.dims, control) == 0:
        return s
    perm = cnot_permutation(s.dims, control, repetitions)
    out = np.empty_like(s.amplitudes)
    out[perm] = s.amplitudes
    return PureState(s.dims, out)


def _target_dim(dims: tuple[int, int], control: Party) -> int:
    return dims[1] if control == "A" else dims[0]
