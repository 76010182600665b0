import math

import numpy as np
import pytest

from symtherm import curie_weiss, oracle, spectral
from symtherm.curie_weiss import ModelParams, free_energy_exact, sector_multiplicity
from symtherm.entropy import block_entropy, verify_bounds
from symtherm.oracle import (
    DenseOperator,
    build_full_hamiltonian,
    check_permutation_invariance,
    decompose_gibbs,
    dense_free_energy,
    dense_gibbs_entropy,
    total_spin_blocks,
    total_spin_squared,
)


class TestBuildFullHamiltonian:
    def test_single_spin(self):
        h = build_full_hamiltonian(1, 0.7, 1.3)
        expected = np.diag([-0.7 / 2, 0.7 / 2]) - (1.3 / 4) * np.eye(2)
        assert np.allclose(h.entries, expected, atol=1e-15)

    def test_zero_parameters(self):
        assert np.all(build_full_hamiltonian(3, 0.0, 0.0).entries == 0.0)

    def test_two_spin_spectrum(self):
        h = build_full_hamiltonian(2, 0.5, 1.0)
        got = np.sort(np.linalg.eigvalsh(h.entries))
        root = math.sqrt(0.3125)
        expected = np.sort([-0.25 - root, -0.5, 0.0, -0.25 + root])
        assert np.allclose(got, expected, atol=1e-12)

    def test_size_cap(self):
        with pytest.raises(ValueError, match="need 1 <= n"):
            build_full_hamiltonian(13, 0.5, 1.0)


class TestTotalSpinBlocks:
    def test_triplet_singlet(self):
        blocks = total_spin_blocks(2)
        assert [(b.L, b.copy_count, b.columns.shape[1]) for b in blocks] == [
            (0.0, 1, 1),
            (1.0, 1, 3),
        ]

    def test_four_spins(self):
        blocks = total_spin_blocks(4)
        dims = {b.L: b.columns.shape[1] for b in blocks}
        copies = {b.L: b.copy_count for b in blocks}
        assert dims == {0.0: 2, 1.0: 9, 2.0: 5}
        assert copies == {0.0: 2, 1.0: 3, 2.0: 1}

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
    def test_completeness_and_multiplicity(self, n):
        blocks = total_spin_blocks(n)
        assert sum(b.columns.shape[1] for b in blocks) == 2**n
        for b in blocks:
            assert b.copy_count == sector_multiplicity(n, b.L)
            gram = b.columns.T @ b.columns
            assert np.abs(gram - np.eye(gram.shape[0])).max() < 1e-10

    def test_l2_spectrum_values(self):
        evals = np.linalg.eigvalsh(total_spin_squared(3).entries)
        assert np.allclose(
            np.unique(np.round(evals, 8)), [0.75, 3.75], atol=1e-10
        )


class TestDecomposeGibbs:
    def test_infinite_temperature_weights(self):
        n = 4
        params = ModelParams(n=n, omega=0.5, alpha=1.0, beta=1e-12)
        blocks = decompose_gibbs(n, params)
        for b in blocks:
            expected = b.dim * b.deg / 2.0**n
            assert b.p == pytest.approx(expected, abs=1e-9)
            assert np.allclose(b.coarse_spectrum, 1.0 / b.deg, atol=1e-9)

    def test_two_spin_singlet_weight(self):
        params = ModelParams(n=2, omega=0.5, alpha=1.0, beta=2.0)
        blocks = decompose_gibbs(2, params)
        root = math.sqrt(0.3125)
        triplet = [-0.25 - root, -0.5, -0.25 + root]
        expected = 1.0 / (1.0 + sum(math.exp(-2.0 * e) for e in triplet))
        singlet = next(b for b in blocks if b.deg == 1)
        assert singlet.p == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("beta", [0.5, 2.0, 5.0])
    def test_weights_match_sector_partition_functions(self, beta):
        n = 6
        params = ModelParams(n=n, omega=0.5, alpha=1.0, beta=beta)
        blocks = decompose_gibbs(n, params)
        f_total = n * free_energy_exact(params)
        for b in blocks:
            tl = int(round(2 * (b.deg - 1) / 2))
            eig = spectral.eig_sym_banded(
                curie_weiss.build_sector_hamiltonian(
                    n, tl / (2.0 * n), params.omega, params.alpha
                )
            ).eigenvalues
            ln_tr = spectral.log_sum_exp(np.zeros(eig.size), -beta * eig)
            expected = b.dim * math.exp(ln_tr + beta * f_total)
            assert b.p == pytest.approx(expected, abs=1e-10)

    def test_weights_normalized(self):
        params = ModelParams(n=5, omega=1.0, alpha=-1.0, beta=2.0)
        blocks = decompose_gibbs(5, params)
        assert sum(b.p for b in blocks) == pytest.approx(1.0, abs=1e-12)


class TestPermutationInvariance:
    def test_curie_weiss_is_invariant(self):
        assert check_permutation_invariance(build_full_hamiltonian(4, 0.5, 1.0))

    def test_local_field_breaks_invariance(self):
        h = build_full_hamiltonian(3, 0.5, 1.0).entries.copy()
        states = np.arange(8)
        sz0 = 0.5 - ((states >> 0) & 1)
        h[states, states] += 0.01 * sz0
        assert not check_permutation_invariance(DenseOperator(3, h))

    def test_zero_operator(self):
        assert check_permutation_invariance(DenseOperator(2, np.zeros((4, 4))))


class TestEquivalences:
    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_spectrum_multiset(self, n):
        h = build_full_hamiltonian(n, 0.5, 1.0)
        dense = np.sort(np.linalg.eigvalsh(h.entries))
        union = []
        for tl in curie_weiss.attainable_two_l(n):
            eig = spectral.eig_sym_banded(
                curie_weiss.build_sector_hamiltonian(n, tl / (2.0 * n), 0.5, 1.0)
            ).eigenvalues
            union.extend(list(eig) * sector_multiplicity(n, tl / 2.0))
        assert np.abs(np.sort(np.array(union)) - dense).max() < 1e-9

    @pytest.mark.parametrize("beta", [0.5, 5.0])
    def test_free_energy(self, beta):
        n = 7
        params = ModelParams(n=n, omega=0.5, alpha=1.0, beta=beta)
        h = build_full_hamiltonian(n, 0.5, 1.0)
        dense = dense_free_energy(h, beta) / n
        assert free_energy_exact(params) == pytest.approx(dense, rel=1e-10)

    def test_entropy_decomposition(self):
        n = 6
        params = ModelParams(n=n, omega=0.5, alpha=1.0, beta=2.0)
        h = build_full_hamiltonian(n, 0.5, 1.0)
        blocks = decompose_gibbs(n, params)
        assert block_entropy(blocks).total == pytest.approx(
            dense_gibbs_entropy(h, 2.0), abs=1e-10
        )

    def test_bounds_hold_on_gibbs_blocks(self):
        params = ModelParams(n=8, omega=0.5, alpha=1.0, beta=2.0)
        blocks = decompose_gibbs(8, params)
        report = verify_bounds(blocks, num_irreps=len(blocks))
        assert report.ok

    def test_run_oracle_checks_passes(self):
        checks = oracle.run_oracle_checks(
            ModelParams(n=6, omega=1.0, alpha=-1.0, beta=0.5)
        )
        assert all(c.passed for c in checks)
        assert [c.name for c in checks] == [
            "spectrum_equivalence",
            "free_energy_equivalence",
            "entropy_equivalence",
            "bound_satisfaction",
        ]
