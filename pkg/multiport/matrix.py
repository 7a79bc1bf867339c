"""
Coefficient-matrix view of a mode tensor: mode 1 indexes the rows, the
remaining modes index the columns in lexicographic order.
"""

import collections

import numpy as np
from scipy import linalg

from multiport import helpers
from multiport import exceptions
from multiport.tensor import ModeTensor

DEFAULT_STRUCTURE_TOL = 1e-10

Mismatch = collections.namedtuple(
    'Mismatch', ['column', 'row', 'col', 'expected', 'actual']
)


class CoefficientMatrix(object):
    """The d x d^(m-1) matricization of a ModeTensor. Column c decodes to
    the digits (n_2, ..., n_m) of c in base d, n_2 most significant. The
    matrix is a read-only view over the tensor's amplitudes.

    :param ModeTensor state: Backing tensor, m >= 2

    """
    def __init__(self, state):
        self.state = state
        self.m = state.m
        self.d = state.d
        self.data = state.amp.reshape(self.d, self.d ** (self.m - 1))

    @property
    def rows(self):
        return self.d

    @property
    def cols(self):
        return self.data.shape[1]

    def entry(self, row, col):
        return complex(self.data[row, col])

    def decode(self, col):
        """Occupations (n_2, ..., n_m) of column `col`."""
        return tuple(
            int(part)
            for part in np.unravel_index(col, (self.d,) * (self.m - 1))
        )

    def block(self, k):
        """The d x d block whose first column is k.

        :return: ``(matrix, norm)`` where norm = n_2 + ... + n_m of column k
        :raise: BadBlockIndex unless k is a multiple of d inside the matrix

        """
        if k % self.d or not 0 <= k < self.cols:
            raise exceptions.BadBlockIndex(
                'Block index {0} is not a multiple of {1} below {2}'.format(
                    k, self.d, self.cols
                )
            )
        return self.data[:, k:k + self.d], sum(self.decode(k))

    def blocks(self):
        """Yield ``(k, matrix, norm)`` for every block, left to right."""
        for k in range(0, self.cols, self.d):
            matrix, norm = self.block(k)
            yield k, matrix, norm

    def blocks_by_norm(self):
        """One representative block per value of n_2 + ... + n_m."""
        out = collections.OrderedDict()
        for _, matrix, norm in self.blocks():
            out.setdefault(norm, matrix)
        return out

    def rank(self, tol=1e-8):
        singular = linalg.svdvals(self.data)
        if not singular.size or singular[0] == 0:
            return 0
        return int(np.sum(singular > tol * singular[0]))

    def to_state(self):
        return ModeTensor(self.data.reshape((self.d,) * self.m))

    def dump(self, blocks=False):
        """Plain-text form: one row per line, entries ``re+imj`` separated by
        spaces, and a ``|`` line between blocks when `blocks` is set.

        """
        if not blocks:
            return '\n'.join(
                ' '.join(helpers.format_complex(value) for value in row)
                for row in self.data
            ) + '\n'
        parts = []
        for _, matrix, _ in self.blocks():
            parts.append('\n'.join(
                ' '.join(helpers.format_complex(value) for value in row)
                for row in matrix
            ))
        return '\n|\n'.join(parts) + '\n'

    def __repr__(self):
        return '<CoefficientMatrix {0}x{1}>'.format(self.rows, self.cols)


def coefficient_matrix_view(state):
    return CoefficientMatrix(state)


class StructureReport(object):
    """Outcome of a block-structure check; truthy when every block matched.
    `mismatch` locates the first failing entry.

    """
    def __init__(self, mismatch=None):
        self.mismatch = mismatch

    @property
    def ok(self):
        return self.mismatch is None

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def __repr__(self):
        if self.ok:
            return '<StructureReport ok>'
        return '<StructureReport mismatch at block {0} ({1}, {2})>'.format(
            self.mismatch.column, self.mismatch.row, self.mismatch.col
        )


def elimination_block_pattern(h, norm, d, stage=-1):
    """Expected block with n_2 + ... + n_m = `norm` for sum_n h_n |Phi_n>
    after elimination stages 0 .. `stage` on mode 1.

    Columns j with norm + j <= stage are reduced to h_N on the antidiagonal
    norm + i + j = N; all other entries keep the Hankel value h_{norm+i+j}
    (zero past N). Stage -1 is the unreduced Hankel block.

    """
    h = helpers.ensure_complex_list(h)
    N = len(h) - 1
    i, j = np.indices((d, d))
    total = norm + i + j
    padded = np.concatenate([h, np.zeros(2 * d + norm, dtype=complex)])
    hankel = padded[np.minimum(total, len(padded) - 1)]
    hankel[total > N] = 0
    reduced = np.where(total == N, h[-1], 0)
    return np.where(norm + j <= stage, reduced, hankel)


def _verify_pattern(view, h, stage, tol):
    for k, matrix, norm in view.blocks():
        expected = elimination_block_pattern(h, norm, view.d, stage)
        diff = np.abs(matrix - expected)
        if np.any(diff > tol):
            row, col = np.unravel_index(np.argmax(diff), diff.shape)
            return StructureReport(Mismatch(
                k, int(row), int(col), complex(expected[row, col]),
                complex(matrix[row, col]),
            ))
    return StructureReport()


def verify_uniform_block_structure(view, h, tol=DEFAULT_STRUCTURE_TOL):
    """Check that every block of `view` is the shifted Hankel matrix with
    entries h_{n+i+j} (zero past N), n = n_2 + ... + n_m.

    :return: StructureReport

    """
    return _verify_pattern(view, h, -1, tol)


def verify_elimination_stage(view, h, stage, tol=DEFAULT_STRUCTURE_TOL):
    """Check the blocks after elimination stages 0 .. `stage`."""
    return _verify_pattern(view, h, stage, tol)
