import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nle.catalog import bell_state
from nle.errors import DimensionMismatch, NotAState
from nle.linalg import haar_unitary, tensor
from nle.states import (
    Ensemble,
    PureState,
    average_state,
    entanglement_entropy,
    marginal_entropies,
    product_state,
    schmidt,
    vn_entropy,
)


def random_pure(rng, dims):
    n = dims[0] * dims[1]
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PureState(dims, v / np.linalg.norm(v))


def binary_entropy(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


class TestPureState:
    def test_rejects_unnormalized(self):
        with pytest.raises(NotAState):
            PureState((2, 2), np.array([1, 0, 0, 1], dtype=complex))

    def test_rejects_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            PureState((2, 2), np.array([1, 0, 0], dtype=complex))

    def test_rejects_non_finite(self):
        with pytest.raises(NotAState):
            PureState((2, 1), np.array([np.nan, 0]))


class TestVnEntropy:
    def test_pure_state(self):
        assert vn_entropy(np.diag([1.0, 0.0])) == 0.0

    def test_maximally_mixed_qubit(self):
        assert abs(vn_entropy(np.eye(2) / 2) - 1.0) <= 1e-12

    def test_two_thirds_one_third(self):
        # oracle: the binary entropy evaluated directly
        assert abs(vn_entropy(np.diag([2 / 3, 1 / 3])) - binary_entropy(1 / 3)) <= 1e-12
        assert abs(vn_entropy(np.diag([2 / 3, 1 / 3])) - 0.918296) <= 1e-5

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotAState) as err:
            vn_entropy(np.diag([1.5, -0.5]))
        assert err.value.code == "not-a-state"

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_concavity(self, seed):
        rng = np.random.default_rng(seed)

        def random_density(dim):
            vecs = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            rho = vecs @ vecs.conj().T
            return rho / np.trace(rho)

        rho, sigma = random_density(3), random_density(3)
        lam = rng.uniform()
        mixed = lam * rho + (1 - lam) * sigma
        assert vn_entropy(mixed) >= lam * vn_entropy(rho) + (1 - lam) * vn_entropy(sigma) - 1e-9


class TestEntanglementEntropy:
    def test_bell_state(self):
        assert abs(entanglement_entropy(bell_state("phi+")) - 1.0) <= 1e-12

    def test_product_state(self):
        s = product_state((2, 3), [1, 1], [1, 0, 1])
        assert entanglement_entropy(s) <= 1e-12

    def test_maximally_entangled_qutrits(self):
        amps = np.zeros(9, dtype=complex)
        amps[[0, 4, 8]] = 1 / math.sqrt(3)
        assert abs(entanglement_entropy(PureState((3, 3), amps)) - math.log2(3)) <= 1e-12

    @given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(2, 3))
    @settings(max_examples=40, deadline=None)
    def test_schmidt_symmetry(self, seed, d_a, d_b):
        s = random_pure(np.random.default_rng(seed), (d_a, d_b))
        s_a = vn_entropy(s.marginal("A"))
        s_b = vn_entropy(s.marginal("B"))
        assert abs(s_a - s_b) <= 1e-9

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_local_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        s = random_pure(rng, (3, 2))
        u = tensor(haar_unitary(3, rng), haar_unitary(2, rng))
        rotated = PureState(s.dims, u @ s.amplitudes)
        assert abs(entanglement_entropy(s) - entanglement_entropy(rotated)) <= 1e-9


class TestSchmidt:
    def test_basis_product(self):
        s = product_state((2, 2), [1, 0], [0, 1])
        coeffs, _, _ = schmidt(s)
        assert np.allclose(coeffs, [1, 0], atol=1e-12)

    def test_bell(self):
        coeffs, _, _ = schmidt(bell_state("phi+"))
        assert np.allclose(coeffs, [1 / math.sqrt(2)] * 2)

    def test_already_schmidt_form(self):
        amps = np.array([4 / 5, 0, 0, 3 / 5], dtype=complex)
        coeffs, _, _ = schmidt(PureState((2, 2), amps))
        assert np.allclose(coeffs, [4 / 5, 3 / 5])

    @given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(2, 4))
    @settings(max_examples=40, deadline=None)
    def test_reconstruction(self, seed, d_a, d_b):
        s = random_pure(np.random.default_rng(seed), (d_a, d_b))
        coeffs, left, right = schmidt(s)
        rebuilt = sum(
            coeffs[k] * np.kron(left[:, k], right[:, k]) for k in range(len(coeffs))
        )
        assert np.linalg.norm(rebuilt - s.amplitudes) <= 1e-9
        assert abs((coeffs**2).sum() - 1.0) <= 1e-10


class TestAverageState:
    def test_bell_pair_cross_terms_cancel(self):
        e = Ensemble.uniform((2, 2), [bell_state("phi+"), bell_state("phi-")])
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[3, 3] = 0.5
        assert np.allclose(average_state(e), expected, atol=1e-12)

    def test_single_member(self):
        s = bell_state("psi-")
        e = Ensemble((2, 2), (1.0,), (s,))
        assert np.allclose(average_state(e), s.projector())

    def test_full_bell_basis(self):
        e = Ensemble.uniform(
            (2, 2), [bell_state(k) for k in ("phi+", "phi-", "psi+", "psi-")]
        )
        assert np.allclose(average_state(e), np.eye(4) / 4, atol=1e-12)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_trace_and_positivity(self, seed):
        rng = np.random.default_rng(seed)
        states = [random_pure(rng, (2, 3)) for _ in range(3)]
        p = rng.uniform(0.1, 1.0, size=3)
        p /= p.sum()
        rho = average_state(Ensemble((2, 3), tuple(p), tuple(states)))
        assert abs(np.trace(rho) - 1.0) <= 1e-12
        assert np.linalg.eigvalsh(rho).min() >= -1e-10


class TestMarginalEntropies:
    def test_bell_pair(self):
        e = Ensemble.uniform((2, 2), [bell_state("phi+"), bell_state("phi-")])
        s_a, s_b = marginal_entropies(e)
        assert abs(s_a - 1.0) <= 1e-12 and abs(s_b - 1.0) <= 1e-12

    def test_mixed_triple(self):
        from nle import catalog

        e = catalog.build("more-nl-mixed")
        s_a, s_b = marginal_entropies(e)
        expected = -(5 / 9) * math.log2(5 / 9) - (4 / 9) * math.log2(2 / 9)
        assert abs(s_a - expected) <= 1e-12
        assert abs(s_b - expected) <= 1e-12
        assert abs(s_a - 1.43551) <= 1e-4

    def test_product_singleton(self):
        e = Ensemble((2, 2), (1.0,), (product_state((2, 2), [1, 0], [1, 0]),))
        assert marginal_entropies(e) == (0.0, 0.0)


class TestEnsemble:
    def test_probabilities_must_sum_to_one(self):
        s = bell_state("phi+")
        with pytest.raises(NotAState):
            Ensemble((2, 2), (0.5, 0.4), (s, bell_state("phi-")))

    def test_dims_must_agree(self):
        with pytest.raises(DimensionMismatch):
            Ensemble(
                (2, 2),
                (0.5, 0.5),
                (bell_state("phi+"), product_state((2, 3), [1, 0], [1, 0, 0])),
            )

    def test_orthogonal_flag_matches_gram(self):
        from nle import catalog

        assert catalog.build("nlwe-3x3").is_orthogonal()
        overlapping = Ensemble.uniform(
            (2, 2),
            [product_state((2, 2), [1, 0], [1, 0]), product_state((2, 2), [1, 1], [1, 0])],
        )
        assert not overlapping.is_orthogonal()

    def test_product_flag(self):
        from nle import catalog

        assert catalog.build("tiles-upb").is_product()
        assert not catalog.build("bell-pair").is_product()

    def test_subset_renormalizes(self):
        from nle import catalog

        sub = catalog.build("bell-full").subset([0, 2])
        assert len(sub) == 2
        assert abs(sum(sub.probabilities) - 1.0) <= 1e-12
