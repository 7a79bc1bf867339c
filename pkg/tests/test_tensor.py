import unittest

import numpy as np
from numpy import testing

from multiport import exceptions
from multiport.tensor import ModeTensor


class TestModeTensor(unittest.TestCase):

    def setUp(self):
        amp = np.zeros((3, 3), dtype=complex)
        amp[0, 1] = 1
        amp[1, 0] = 1j
        self.amp = amp
        self.state = ModeTensor(amp)

    def test_copies_input(self):
        self.amp[0, 0] = 5
        assert self.state.amp[0, 0] == 0

    def test_read_only(self):
        with self.assertRaises(ValueError):
            self.state.amp[0, 0] = 1

    def test_shape(self):
        assert self.state.m == 2
        assert self.state.d == 3
        assert self.state.vector.shape == (9,)

    def test_one_mode_rejected(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            ModeTensor(np.ones(3))

    def test_unequal_dimensions_rejected(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            ModeTensor(np.ones((2, 3)))

    def test_normalized_flag_checked(self):
        with self.assertRaises(exceptions.NormError):
            ModeTensor(self.amp, normalized=True)

    def test_normalize(self):
        state = self.state.normalize()
        assert state.normalized
        assert abs(state.norm() - 1) < 1e-15

    def test_normalize_zero(self):
        with self.assertRaises(exceptions.ZeroState):
            ModeTensor(np.zeros((2, 2))).normalize()

    def test_from_vector(self):
        state = ModeTensor.from_vector(self.state.vector, 2, 3)
        testing.assert_array_equal(state.amp, self.state.amp)

    def test_from_vector_wrong_size(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            ModeTensor.from_vector(np.ones(8), 2, 3)

    def test_product(self):
        state = ModeTensor.product([[1, 2], [3, 4], [5, 6]])
        assert state.shape == (2, 2, 2)
        assert state.amp[1, 0, 1] == 2 * 3 * 6

    def test_nonzero_order(self):
        assert list(self.state.nonzero()) == [((0, 1), 1), ((1, 0), 1j)]


class TestResize(unittest.TestCase):

    def setUp(self):
        amp = np.zeros((3, 3, 3), dtype=complex)
        amp[1, 0, 1] = 0.5
        amp[0, 0, 0] = 1
        self.state = ModeTensor(amp)

    def test_truncate_support(self):
        small = self.state.truncated(2)
        assert small.d == 2
        assert small.amp[1, 0, 1] == 0.5

    def test_truncate_drops_amplitude(self):
        with self.assertRaises(exceptions.CutoffTooSmall):
            self.state.truncated(1)

    def test_truncate_within_tolerance(self):
        assert self.state.truncated(1, tol=0.5).d == 1

    def test_cannot_grow(self):
        with self.assertRaises(exceptions.ShapeMismatch):
            self.state.truncated(4)
