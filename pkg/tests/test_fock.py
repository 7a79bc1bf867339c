import unittest
import itertools

import numpy as np
from numpy import testing

from multiport import fock
from multiport import exceptions
from multiport.operators.local import apply_certificate, verify_equivalence
from tests import utils


class TestNumberOutput(unittest.TestCase):

    def test_normalized(self):
        for m, n in [(2, 0), (2, 3), (3, 4), (4, 2)]:
            state = fock.number_mbs_output(n, m, n + 1)
            assert abs(state.norm() - 1) < 1e-12

    def test_amplitudes(self):
        state = fock.number_mbs_output(4, 3, 5)
        for index in [(4, 0, 0), (2, 1, 1), (1, 3, 0)]:
            expected = np.sqrt(utils.multinomial_oracle(index) / 3.0 ** 4)
            testing.assert_allclose(state.amp[index], expected, rtol=1e-14)
        assert state.amp[1, 1, 1] == 0

    def test_permutation_symmetric_exactly(self):
        state = fock.number_mbs_output(5, 3, 6)
        for perm in itertools.permutations(range(3)):
            testing.assert_array_equal(state.amp,
                                       np.transpose(state.amp, perm))

    def test_level_outside_dimension(self):
        with self.assertRaises(exceptions.CutoffTooSmall):
            fock.number_mbs_output(3, 2, 3)

    def test_uniform_state(self):
        state = fock.uniform_state(2, 3, 3)
        assert state.amp[1, 1, 0] == 1
        assert state.amp[0, 0, 2] == 1
        assert state.amp[1, 1, 1] == 0
        assert abs(state.norm() ** 2 - 6) < 1e-12

    def test_w_state(self):
        state = fock.number_mbs_output(1, 3, 2)
        testing.assert_allclose(
            state.amp, fock.uniform_state(1, 3, 2).amp / np.sqrt(3)
        )

    def test_superpose(self):
        a = fock.uniform_state(0, 2, 2)
        b = fock.uniform_state(1, 2, 2)
        out = fock.superpose([(2, a), (1j, b)])
        assert out.amp[0, 0] == 2
        assert out.amp[0, 1] == 1j

    def test_superpose_mismatch(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            fock.superpose([(1, fock.uniform_state(0, 2, 2)),
                            (1, fock.uniform_state(0, 2, 3))])


class TestInputFamilies(unittest.TestCase):

    def test_trailing_zeros_trimmed(self):
        with self.assertLogs('multiport.fock', 'WARNING'):
            number = fock.NumberSuperposition([1, 2, 0, 0])
        assert number.N == 1
        assert number.trimmed == 2

    def test_empty_superposition(self):
        with self.assertRaises(exceptions.EmptySuperposition):
            fock.NumberSuperposition([0, 0])

    def test_pairs_accepted(self):
        number = fock.NumberSuperposition([[0, 0], [1, 0]])
        assert number.N == 1

    def test_coincident_alphas(self):
        with self.assertRaises(exceptions.CoincidentCoherentAmplitudes):
            fock.CatState([(1, 0.5), (2, 0.5)])

    def test_zero_cat_coefficient(self):
        with self.assertRaises(exceptions.ZeroCatCoefficient):
            fock.CatState([(1, 0.5), (0, 1.5)])

    def test_invariant_errors_share_base(self):
        with self.assertRaises(exceptions.InvariantError):
            fock.CatState([(1, 1), (1, 1)])

    def test_hybrid(self):
        hybrid = fock.Hybrid([1, 1], [(1, 2.0)])
        assert (hybrid.N, hybrid.r) == (1, 1)

    def test_one_mode_rejected(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            fock.InputSpec(fock.NumberSuperposition([1]), 1)


class TestCutoff(unittest.TestCase):

    def test_deficit_matches_vector(self):
        vector, deficit = fock.coherent_mode_vector(1.0, 5)
        testing.assert_allclose(deficit, 1 - np.sum(np.abs(vector) ** 2),
                                rtol=1e-9)

    def test_auto_cutoff_is_smallest(self):
        for alpha in [0.3, 1.0, 2.0 + 1j]:
            d = fock.auto_cutoff([alpha], 1e-10)
            assert fock.truncation_deficit(alpha, d) < 1e-10
            assert fock.truncation_deficit(alpha, d - 1) >= 1e-10

    def test_auto_cutoff_minimum(self):
        assert fock.auto_cutoff([], 1e-10, minimum=4) == 4

    def test_auto_cutoff_cap(self):
        with self.assertRaises(exceptions.CutoffTooSmall):
            fock.auto_cutoff([20.0], 1e-10)

    def test_number_dimension(self):
        spec = fock.InputSpec(fock.NumberSuperposition([1, 0, 1]), 3)
        assert spec.dimension() == 3

    def test_explicit_cutoff_below_minimum(self):
        spec = fock.InputSpec(fock.NumberSuperposition([1, 0, 1]), 3,
                              cutoff=2)
        with self.assertRaises(exceptions.CutoffTooSmall):
            spec.dimension()

    def test_explicit_cutoff_with_deficit(self):
        spec = fock.InputSpec(fock.CatState([(1, 3.0)]), 2, cutoff=3)
        with self.assertRaises(exceptions.CutoffTooSmall):
            spec.dimension()

    def test_cat_dimension_at_least_r(self):
        spec = fock.InputSpec(
            fock.CatState([(1, 0.01), (1, -0.01), (1, 0.01j)]), 2
        )
        assert spec.dimension() >= 3

    def test_hybrid_dimension(self):
        spec = fock.InputSpec(fock.Hybrid([1, 1, 1], [(1, 0.01)]), 2)
        assert spec.dimension() >= 4


class TestCoherentOutput(unittest.TestCase):

    def test_product_form(self):
        state = fock.coherent_mbs_output(1.2, 3)
        vector, _ = fock.coherent_mode_vector(1.2 / np.sqrt(3), state.d)
        testing.assert_allclose(state.amp[:, 0, 0],
                                vector * vector[0] ** 2)

    def test_explicit_dimension_too_small(self):
        with self.assertRaises(exceptions.CutoffTooSmall):
            fock.coherent_mbs_output(3.0, 2, d=4)

    def test_cat_output_normalized(self):
        spec = fock.InputSpec(fock.CatState([(1, 1.2), (1, -1.2)]), 3)
        assert abs(fock.mbs_output(spec).norm() - 1) < 1e-8

    def test_hybrid_output_normalized(self):
        spec = fock.InputSpec(fock.Hybrid([1, 0.5j], [(1, 1.0), (2, -0.5)]),
                              2)
        assert abs(fock.mbs_output(spec).norm() - 1) < 1e-8

    def test_number_output_normalized(self):
        spec = fock.InputSpec(fock.NumberSuperposition([1, 1j, 2]), 3)
        assert abs(fock.mbs_output(spec).norm() - 1) < 1e-12


class TestBalancing(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def _gammas(self, m):
        gammas = self.rng.uniform(0.1, 1, m) * np.exp(
            2j * np.pi * self.rng.uniform(size=m)
        )
        return gammas / np.linalg.norm(gammas)

    def test_balancing_reaches_balanced_output(self):
        for trial in range(50):
            m = 2 + trial % 2
            N = trial % 5
            c = utils.random_coefficients(self.rng, N)
            gammas = self._gammas(m)
            d = N + 1
            general = fock.general_mbs_output(c, gammas, d)
            balanced = fock.superpose(
                (cn, fock.number_mbs_output(n, m, d))
                for n, cn in enumerate(c)
            )
            cert = fock.balancing_certificate(gammas, d)
            fidelity, ok = verify_equivalence(
                apply_certificate(general, cert), balanced, 1e-10
            )
            assert ok, (trial, fidelity)

    def test_balanced_scattering_is_identity(self):
        m = 3
        gammas = np.ones(m) / np.sqrt(m)
        general = fock.general_mbs_output([1, 2], gammas, 2)
        balanced = fock.superpose([(1, fock.number_mbs_output(0, m, 2)),
                                   (2, fock.number_mbs_output(1, m, 2))])
        testing.assert_allclose(general.amp, balanced.amp, atol=1e-14)
        for op in fock.balancing_operators(gammas, 2):
            testing.assert_allclose(op.matrix, np.eye(2), atol=1e-14)

    def test_operator_labels(self):
        ops = fock.balancing_operators(self._gammas(3), 4)
        assert [op.label for op in ops] == ['D1', 'D2', 'D3']
        assert [op.mode for op in ops] == [1, 2, 3]

    def test_zero_amplitude(self):
        with self.assertRaises(exceptions.ZeroScatteringAmplitude):
            fock.general_mbs_output([0, 1], [1, 0], 2)

    def test_not_normalized(self):
        with self.assertRaises(exceptions.NotNormalizedScattering):
            fock.general_mbs_output([0, 1], [0.5, 0.5], 2)
