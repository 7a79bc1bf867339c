"""
Invertible local operators and replayable equivalence certificates.
"""

import logging

import numpy as np
from scipy import linalg

from multiport import exceptions
from multiport.tensor import ModeTensor

logger = logging.getLogger(__name__)

INVERTIBILITY_TOL = 1e-13
ZERO_TOL = 1e-14
DEFAULT_TOL_FID = 1e-10


class LocalOperator(object):
    """A d x d complex matrix acting on one mode. Construction fails unless
    the smallest singular value exceeds ``tol`` times the largest.

    :param matrix: Square array-like
    :param int mode: Target mode (1-based) when bound into a certificate
    :param str label: Short name, e.g. ``'R'`` or ``'A(2)'``
    :param float tol: Relative invertibility threshold

    """
    def __init__(self, matrix, mode=None, label=None, tol=INVERTIBILITY_TOL):
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise exceptions.ShapeMismatch(
                'Local operators must be square; got shape {0}'.format(
                    matrix.shape
                )
            )
        singular = linalg.svdvals(matrix)
        if singular[0] == 0 or singular[-1] <= tol * singular[0]:
            raise exceptions.NotInvertible(
                'Operator {0} is not invertible (singular values {1!r} .. '
                '{2!r})'.format(label or '', singular[0], singular[-1])
            )
        matrix.flags.writeable = False
        self._matrix = matrix
        self.mode = mode
        self.label = label
        self.tol = tol
        self.condition = float(singular[0] / singular[-1])

    @classmethod
    def diagonal(cls, entries, **kwargs):
        return cls(np.diag(np.asarray(entries, dtype=complex)), **kwargs)

    @classmethod
    def scalar(cls, value, d, **kwargs):
        return cls(complex(value) * np.eye(d), **kwargs)

    @classmethod
    def identity(cls, d, **kwargs):
        return cls(np.eye(d), **kwargs)

    @property
    def matrix(self):
        return self._matrix

    @property
    def d(self):
        return self._matrix.shape[0]

    def bind(self, mode):
        """Copy of this operator targeting `mode`."""
        return LocalOperator(
            self._matrix, mode=mode, label=self.label, tol=self.tol
        )

    def relabel(self, label):
        return LocalOperator(
            self._matrix, mode=self.mode, label=label, tol=self.tol
        )

    def inverse(self):
        label = '{0}^-1'.format(self.label) if self.label else None
        return LocalOperator(
            linalg.inv(self._matrix), mode=self.mode, label=label,
            tol=self.tol,
        )

    def compose(self, other):
        """Operator applying `other` first, then this one."""
        if other.d != self.d:
            raise exceptions.ShapeMismatch('Cannot compose {0}x{0} with '
                                           '{1}x{1}'.format(self.d, other.d))
        return LocalOperator(
            self._matrix.dot(other.matrix), mode=self.mode,
            tol=min(self.tol, other.tol),
        )

    def __repr__(self):
        return '<LocalOperator {0} d={1} mode={2}>'.format(
            self.label or '?', self.d, self.mode
        )


class IloCertificate(object):
    """Ordered list of (mode, operator) steps plus one nonzero global scalar.
    Replaying the steps left to right on the source state and multiplying by
    the scalar yields the target state.

    :param steps: Iterable of ``(mode, LocalOperator)`` pairs
    :param complex global_scalar: Nonzero scalar applied last
    :param str source_label: Description of the source state
    :param str target_label: Description of the target state

    """
    def __init__(self, steps=(), global_scalar=1.0, source_label='',
                 target_label=''):
        bound = []
        for mode, op in steps:
            if not isinstance(op, LocalOperator):
                raise ValueError('Certificate steps must hold LocalOperator '
                                 'instances')
            mode = int(mode)
            if mode < 1:
                raise exceptions.ShapeMismatch('Modes are 1-based')
            bound.append((mode, op if op.mode == mode else op.bind(mode)))
        global_scalar = complex(global_scalar)
        if global_scalar == 0:
            raise exceptions.NotInvertible('Global scalar must be nonzero')
        self.steps = tuple(bound)
        self.global_scalar = global_scalar
        self.source_label = source_label
        self.target_label = target_label

    @classmethod
    def on_modes(cls, op, modes, **kwargs):
        """Certificate applying one operator to each of `modes`."""
        return cls([(mode, op) for mode in modes], **kwargs)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def then(self, other):
        """Certificate replaying this one and then `other`."""
        return IloCertificate(
            self.steps + other.steps,
            global_scalar=self.global_scalar * other.global_scalar,
            source_label=self.source_label,
            target_label=other.target_label,
        )

    def inverse(self):
        return IloCertificate(
            [(mode, op.inverse()) for mode, op in reversed(self.steps)],
            global_scalar=1.0 / self.global_scalar,
            source_label=self.target_label,
            target_label=self.source_label,
        )

    def replay(self, state):
        return apply_certificate(state, self)

    def __repr__(self):
        return '<IloCertificate steps={0} {1!r} -> {2!r}>'.format(
            len(self.steps), self.source_label, self.target_label
        )


def apply_local(state, mode, op):
    """Contract `op` against one mode index of `state`.

    :param ModeTensor state: Input state
    :param int mode: 1-based target mode
    :param LocalOperator op: Operator of matching dimension
    :return: New ModeTensor

    """
    matrix = op.matrix if isinstance(op, LocalOperator) else np.asarray(op)
    if matrix.shape != (state.d, state.d):
        raise exceptions.ShapeMismatch(
            'Operator of shape {0} cannot act on local dimension {1}'.format(
                matrix.shape, state.d
            )
        )
    if not 1 <= mode <= state.m:
        raise exceptions.ShapeMismatch(
            'Mode {0} out of range 1..{1}'.format(mode, state.m)
        )
    axis = mode - 1
    out = np.tensordot(matrix, state.amp, axes=([1], [axis]))
    return ModeTensor(np.moveaxis(out, 0, axis))


def apply_certificate(state, cert):
    for mode, op in cert.steps:
        state = apply_local(state, mode, op)
    return state.scaled(cert.global_scalar)


def fidelity(a, b):
    """Scale- and phase-invariant overlap |<a|b>| / (||a|| ||b||)."""
    if not a.same_space(b):
        raise exceptions.ShapeMismatch(
            'Cannot compare {0!r} with {1!r}'.format(a, b)
        )
    norm_a, norm_b = a.norm(), b.norm()
    if norm_a <= ZERO_TOL or norm_b <= ZERO_TOL:
        raise exceptions.ZeroState('Fidelity undefined for a zero state')
    overlap = np.vdot(a.vector, b.vector)
    return min(float(abs(overlap) / (norm_a * norm_b)), 1.0)


def verify_equivalence(a, b, tol_fid=DEFAULT_TOL_FID):
    """Compare two states up to a global scalar.

    :return: ``(fidelity, ok)`` with ok iff fidelity >= 1 - tol_fid

    """
    value = fidelity(a, b)
    return value, value >= 1.0 - tol_fid
