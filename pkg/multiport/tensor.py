"""
Dense amplitude tensors over m bosonic modes.
"""

import numpy as np

from multiport import exceptions


NORM_TOL = 1e-10


class ModeTensor(object):
    """Complex amplitude tensor of an m-mode state truncated at local
    dimension d. Amplitudes are stored as an array of shape ``(d,) * m``
    indexed by occupation numbers ``(n_1, ..., n_m)``; flattening is row-major,
    so ``n_1`` varies slowest.

    Instances are immutable: the amplitude array is copied on construction
    and marked read-only.

    :param amp: Array-like of shape ``(d,) * m``
    :param bool normalized: Advisory flag; checked against the norm when set

    """
    def __init__(self, amp, normalized=False):
        amp = np.array(amp, dtype=complex)
        if amp.ndim < 2:
            raise exceptions.ShapeMismatch(
                'A mode tensor needs at least two modes'
            )
        if len(set(amp.shape)) != 1 or amp.shape[0] < 1:
            raise exceptions.ShapeMismatch(
                'All modes must share one local dimension; '
                'got shape {0}'.format(amp.shape)
            )
        amp.flags.writeable = False
        self._amp = amp
        if normalized and abs(self.norm() - 1.0) > NORM_TOL:
            raise exceptions.NormError(
                'Tensor flagged normalized has norm {0!r}'.format(self.norm())
            )
        self.normalized = bool(normalized)

    @classmethod
    def from_vector(cls, vector, m, d, normalized=False):
        """Build from a flat vector of length d ** m."""
        vector = np.asarray(vector, dtype=complex)
        if vector.size != d ** m:
            raise exceptions.ShapeMismatch(
                'Expected {0} amplitudes, got {1}'.format(d ** m, vector.size)
            )
        return cls(vector.reshape((d,) * m), normalized=normalized)

    @classmethod
    def product(cls, factors):
        """Tensor product of single-mode vectors of equal length."""
        factors = [np.asarray(factor, dtype=complex) for factor in factors]
        out = factors[0]
        for factor in factors[1:]:
            out = np.multiply.outer(out, factor)
        return cls(out)

    @property
    def amp(self):
        return self._amp

    @property
    def m(self):
        return self._amp.ndim

    @property
    def d(self):
        return self._amp.shape[0]

    @property
    def shape(self):
        return self._amp.shape

    @property
    def vector(self):
        return self._amp.reshape(-1)

    def norm(self):
        return float(np.linalg.norm(self._amp))

    def normalize(self):
        norm = self.norm()
        if norm == 0:
            raise exceptions.ZeroState('Cannot normalize the zero tensor')
        return ModeTensor(self._amp / norm, normalized=True)

    def scaled(self, scalar):
        return ModeTensor(self._amp * complex(scalar))

    def same_space(self, other):
        return self.m == other.m and self.d == other.d

    def truncated(self, d, tol=0.0):
        """Restrict every mode to its first d levels.

        :param int d: New local dimension, at most the current one
        :param float tol: Largest dropped amplitude modulus tolerated
        :raise: CutoffTooSmall if a dropped amplitude exceeds `tol`

        """
        if d > self.d:
            raise exceptions.ShapeMismatch('Truncation cannot grow a tensor')
        region = (slice(0, d),) * self.m
        rest = np.array(self._amp)
        rest[region] = 0
        dropped = float(np.max(np.abs(rest))) if rest.size else 0.0
        if dropped > tol:
            raise exceptions.CutoffTooSmall(
                'Truncation to d={0} drops an amplitude of modulus '
                '{1!r}'.format(d, dropped)
            )
        return ModeTensor(self._amp[region])

    def nonzero(self, tol=0.0):
        """Yield ``(index, amplitude)`` pairs above `tol`, in index order."""
        flat = self.vector
        for position in np.flatnonzero(np.abs(flat) > tol):
            index = np.unravel_index(position, self.shape)
            yield tuple(int(part) for part in index), complex(flat[position])

    def __repr__(self):
        return '<ModeTensor m={0} d={1}>'.format(self.m, self.d)
