"""Bipartite pure states, ensembles, entropies, and Schmidt analysis.

Amplitude convention: the coefficient of |i>_A |j>_B sits at flat index
``i * d_B + j``. All entropies are in bits (log base 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, NotAState
from .linalg import partial_trace

LOG2 = np.log(2.0)


@dataclass(frozen=True)
class PureState:
    """A normalized pure state on C^{d_A} (x) C^{d_B}."""

    dims: tuple[int, int]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        d_a, d_b = self.dims
        if d_a < 1 or d_b < 1 or amps.shape[0] != d_a * d_b:
            raise DimensionMismatch(f"amplitude length {amps.shape[0]} != {d_a}*{d_b}")
        if not np.all(np.isfinite(amps.view(float))):
            raise NotAState("non-finite amplitude")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > TOL.norm:
            raise NotAState(f"norm {norm} deviates from 1 beyond {TOL.norm}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def d_a(self) -> int:
        return self.dims[0]

    @property
    def d_b(self) -> int:
        return self.dims[1]

    def as_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to a d_A x d_B coefficient matrix."""
        return self.amplitudes.reshape(self.dims)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conjugate(self.amplitudes))

    def marginal(self, keep: str) -> np.ndarray:
        return partial_trace(self.projector(), self.dims, keep)


def product_state(dims: tuple[int, int], part_a: np.ndarray, part_b: np.ndarray) -> PureState:
    a = np.asarray(part_a, dtype=complex).ravel()
    b = np.asarray(part_b, dtype=complex).ravel()
    if a.shape[0] != dims[0] or b.shape[0] != dims[1]:
        raise DimensionMismatch("local parts do not match dims")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return PureState(dims, np.kron(a, b))


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted list of pure states on common dimensions."""

    dims: tuple[int, int]
    probabilities: tuple[float, ...]
    states: tuple[PureState, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        if len(probs) != len(self.states) or not self.states:
            raise DimensionMismatch("probabilities and states must pair up")
        if any(p <= 0.0 or p > 1.0 for p in probs):
            raise NotAState("probabilities must lie in (0, 1]")
        if abs(sum(probs) - 1.0) > TOL.prob_sum:
            raise NotAState(f"probabilities sum to {sum(probs)}")
        if any(s.dims != self.dims for s in self.states):
            raise DimensionMismatch("member dimensions disagree")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, dims, states, name: str = "") -> "Ensemble":
        k = len(states)
        return cls(dims, tuple(1.0 / k for _ in range(k)), tuple(states), name=name)

    def __len__(self) -> int:
        return len(self.states)

    def gram(self) -> np.ndarray:
        stack = np.array([s.amplitudes for s in self.states])
        return np.conjugate(stack) @ stack.T

    def is_orthogonal(self, atol: float = TOL.gram) -> bool:
        g = self.gram()
        return bool(np.max(np.abs(g - np.eye(len(self)))) <= atol)

    def is_product(self, atol: float = TOL.product_rank) -> bool:
        return all(schmidt_rank_one(s, atol) for s in self.states)

    def subset(self, indices) -> "Ensemble":
        """Sub-ensemble on the given member indices, probabilities renormalized."""
        idx = list(indices)
        mass = sum(self.probabilities[i] for i in idx)
        return Ensemble(
            self.dims,
            tuple(self.probabilities[i] / mass for i in idx),
            tuple(self.states[i] for i in idx),
            name=self.name,
        )


def vn_entropy(rho: np.ndarray) -> float:
    """von Neumann entropy -tr(rho log2 rho) in bits; 0*log 0 := 0."""
    rho = np.asarray(rho, dtype=complex)
    vals = np.linalg.eigvalsh((rho + np.conjugate(rho.T)) / 2.0)
    if vals.min() < -TOL.psd:
        raise NotAState(f"negative eigenvalue {vals.min()}")
    if abs(vals.sum() - 1.0) > 1e-8:
        raise NotAState(f"trace {vals.sum()} deviates from 1")
    lam = vals[vals > TOL.eig_floor]
    return max(0.0, float(-(lam * (np.log(lam) / LOG2)).sum()))


def schmidt(s: PureState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt decomposition: descending coefficients and local frames.

    Returns ``(coeffs, left, right)`` with ``left[:, k]`` / ``right[:, k]``
    the k-th local vectors, so that
    ``amplitudes = sum_k coeffs[k] * kron(left[:, k], right[:, k])``.
    """
    u, sv, vh = np.linalg.svd(s.as_matrix())
    return sv, u, vh.T


def schmidt_rank_one(s: PureState, atol: float = TOL.product_rank) -> bool:
    coeffs, _, _ = schmidt(s)
    return bool(coeffs[0] ** 2 >= 1.0 - atol)


def entanglement_entropy(s: PureState) -> float:
    """Entropy of either marginal; the entanglement of a pure state."""
    coeffs, _, _ = schmidt(s)
    lam = coeffs**2
    lam = lam[lam > TOL.eig_floor]
    return max(0.0, float(-(lam * (np.log(lam) / LOG2)).sum()))


def average_state(e: Ensemble) -> np.ndarray:
    """Density matrix sum_i p_i |psi_i><psi_i|."""
    dim = e.dims[0] * e.dims[1]
    rho = np.zeros((dim, dim), dtype=complex)
    for p, s in zip(e.probabilities, e.states):
        rho += p * s.projector()
    return rho


def marginal_entropies(e: Ensemble) -> tuple[float, float]:
    """(S(rho_A), S(rho_B)) of the ensemble-average state."""
    rho = average_state(e)
    return (
        vn_entropy(partial_trace(rho, e.dims, "A")),
        vn_entropy(partial_trace(rho, e.dims, "B")),
    )
