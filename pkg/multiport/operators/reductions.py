"""
Explicit invertible local operators reducing beam-splitter outputs to their
class representatives.
"""

import logging
import collections

import numpy as np
from scipy import linalg

from multiport import helpers
from multiport import exceptions
from multiport.operators.local import LocalOperator, IloCertificate

logger = logging.getLogger(__name__)

DEFAULT_GRAM_THRESHOLD = 1e12
# Reorthogonalize when projection removes more than this share of the norm
REORTHOGONALIZE = 0.7


CatReduction = collections.namedtuple('CatReduction', ['B', 'W', 'T', 'S'])

HybridReduction = collections.namedtuple(
    'HybridReduction',
    ['F', 'V', 'Q', 'P', 'G', 'A', 'S', 'repair'],
)


def to_uniform_coeffs(c, m):
    """Coefficients h_n = c_n sqrt(n! / m^n) of the uniform-state expansion.

    :raise: DegenerateLeadingCoefficient if c_N is zero

    """
    c = helpers.ensure_complex_list(c)
    if not len(c) or c[-1] == 0:
        raise exceptions.DegenerateLeadingCoefficient(
            'The top coefficient c_N must be nonzero'
        )
    n = np.arange(len(c))
    return c * np.exp(0.5 * (helpers.log_factorial(n) - n * np.log(m)))


def factorial_rescale_op(N, d):
    """R = sum_{n<=N} sqrt(n!) |n><n|, extended by the identity above N."""
    if N >= d:
        raise exceptions.CutoffTooSmall(
            'N={0} does not fit local dimension {1}'.format(N, d)
        )
    entries = np.ones(d)
    levels = np.arange(N + 1)
    entries[:N + 1] = np.exp(0.5 * helpers.log_factorial(levels))
    return LocalOperator.diagonal(entries, label='R')


def elimination_ops(h, d):
    """Stages A(0) .. A(N-1) and the scaling S taking sum_n h_n |Phi_n> to
    |Phi_N> when applied to mode 1.

    Stage k adds lambda_n = -h_n / h_N times row N-k into row n-k for
    n = k .. N-1; every stage is unit upper triangular and acts as the
    identity on levels above N.

    :return: ``(stages, S)``

    """
    h = helpers.ensure_complex_list(h)
    N = len(h) - 1
    if N < 0 or h[-1] == 0:
        raise exceptions.DegenerateLeadingCoefficient(
            'The top uniform coefficient h_N must be nonzero'
        )
    if N >= d:
        raise exceptions.CutoffTooSmall(
            'N={0} does not fit local dimension {1}'.format(N, d)
        )
    lambdas = -h / h[-1]
    stages = []
    for k in range(N):
        matrix = np.eye(d, dtype=complex)
        for n in range(k, N):
            matrix[n - k, N - k] += lambdas[n]
        stages.append(LocalOperator(matrix, label='A({0})'.format(k)))
    S = LocalOperator.scalar(1.0 / h[-1], d, label='S')
    return stages, S


def elimination_certificate(h, d, mode=1):
    stages, S = elimination_ops(h, d)
    return IloCertificate(
        [(mode, op) for op in stages] + [(mode, S)],
        source_label='sum_n h_n Phi_n',
        target_label='Phi_{0}'.format(len(stages)),
    )


def orthonormalize(vectors, fixed=0, tol=1e-12):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Columns are processed in order; the first `fixed` columns are expected
    to be orthonormal already and come out unchanged.

    :param vectors: Array of shape (d, k)
    :return: ``(Q, R)`` with vectors = Q R, R upper triangular
    :raise: IllConditionedGram if a column is numerically dependent on the
        previous ones

    """
    vectors = np.array(vectors, dtype=complex)
    d, k = vectors.shape
    Q = np.zeros((d, k), dtype=complex)
    R = np.zeros((k, k), dtype=complex)
    for j in range(k):
        v = vectors[:, j].copy()
        initial = linalg.norm(v)
        for _ in range(2):
            for i in range(j):
                coef = np.vdot(Q[:, i], v)
                R[i, j] += coef
                v -= coef * Q[:, i]
            if linalg.norm(v) >= REORTHOGONALIZE * initial:
                break
        norm = linalg.norm(v)
        if norm <= tol * max(initial, 1.0):
            raise exceptions.IllConditionedGram(
                'Vector {0} is linearly dependent on its predecessors at '
                'this cutoff'.format(j)
            )
        if j < fixed:
            # already orthonormal: keep exactly
            Q[:, j] = vectors[:, j]
            R[:, j] = 0
            R[j, j] = 1
            continue
        Q[:, j] = v / norm
        R[j, j] = norm
    return Q, R


def complete_basis(Q):
    """Unitary U whose leading columns are the orthonormal columns of Q."""
    complement = linalg.null_space(Q.conj().T)
    return np.hstack([Q, complement])


def gram_condition(vectors):
    gram = vectors.conj().T.dot(vectors)
    return float(np.linalg.cond(gram))


def _check_gram(vectors, threshold):
    condition = gram_condition(vectors)
    if not np.isfinite(condition) or condition > threshold:
        raise exceptions.IllConditionedGram(
            'Gram matrix condition number {0:.3g} exceeds {1:.3g}; coherent '
            'amplitudes are too close at this cutoff'.format(
                condition, threshold
            ),
            condition=condition,
        )
    logger.debug('Gram condition number %.3g', condition)
    return condition


def _span_ops(vectors, fixed, threshold):
    """Shared core of the cat and hybrid constructions.

    :return: ``(forward, unitary)``: forward maps column j of `vectors` to
        the j-th orthonormal vector; unitary is the adjoint of the completed
        basis and maps that vector to |j>.

    """
    _check_gram(vectors, threshold)
    d = vectors.shape[0]
    Q, R = orthonormalize(vectors, fixed=fixed)
    U = complete_basis(Q)
    k = vectors.shape[1]
    inner = np.eye(d, dtype=complex)
    inner[:k, :k] = linalg.inv(R)
    forward = U.dot(inner).dot(U.conj().T)
    return forward, U.conj().T


def _coherent_columns(betas, d, tol):
    from multiport.fock import coherent_mode_vector

    columns = []
    for beta in betas:
        vector, deficit = coherent_mode_vector(beta, d)
        if deficit >= tol:
            raise exceptions.CutoffTooSmall(
                'Coherent amplitude {0!r} has deficit {1!r} at d={2}'.format(
                    beta, deficit, d
                )
            )
        columns.append(vector)
    return np.array(columns).T


def cat_reduction_ops(c, betas, d, norm, tol=1e-10,
                      threshold=DEFAULT_GRAM_THRESHOLD):
    """Operators B, W, T, S reducing (1/N) sum_k c_k |beta_k>^(x m) to
    GHZ_(r). B and W act on every mode, T and S on mode 1.

    :param c: Cat weights c_k, all nonzero
    :param betas: Per-mode amplitudes beta_k, pairwise distinct
    :param int d: Local dimension, at least r
    :param float norm: Normalization factor of the input
    :return: CatReduction

    """
    c = helpers.ensure_complex_list(c)
    betas = helpers.ensure_complex_list(betas)
    r = len(betas)
    if np.any(c == 0):
        raise exceptions.ZeroCatCoefficient('Cat weights must be nonzero')
    if len(set(betas.tolist())) != r:
        raise exceptions.CoincidentCoherentAmplitudes(
            'Coherent amplitudes must be pairwise distinct'
        )
    if r > d:
        raise exceptions.CutoffTooSmall(
            '{0} coherent terms need d >= {0}, got {1}'.format(r, d)
        )
    columns = _coherent_columns(betas, d, tol)
    forward, unitary = _span_ops(columns, 0, threshold)
    weights = np.ones(d, dtype=complex)
    weights[:r] = 1.0 / c
    return CatReduction(
        B=LocalOperator(forward, label='B'),
        W=LocalOperator(unitary, label='W'),
        T=LocalOperator.diagonal(weights, label='T'),
        S=LocalOperator.scalar(norm / np.sqrt(r), d, label='S'),
    )


def cat_certificate(reduction, m, r):
    modes = range(1, m + 1)
    steps = [(q, reduction.B) for q in modes]
    steps += [(q, reduction.W) for q in modes]
    steps += [(1, reduction.T), (1, reduction.S)]
    return IloCertificate(steps, source_label='cat output',
                          target_label='GHZ_({0})'.format(r))


def hybrid_reduction_ops(c, dcat, betas, d, norm, m, tol=1e-10,
                         threshold=DEFAULT_GRAM_THRESHOLD):
    """Operators reducing (1/N)(sum_n c_n |Psi_n> + sum_k d_k |beta_k>^(x m))
    to |Phi_N> + sum_{n=N+1}^{N+r} |n>^(x m).

    F and V act on every mode and send |beta_k> to |N+1+k> while fixing
    |0> .. |N>; Q and P strip the cat weights and the normalization; G is the
    factorial rescaling on levels up to N (identity above); the elimination
    stages A and S then act on mode 1, and `repair` restores the weight of
    the high levels divided out by S.

    :return: HybridReduction

    """
    c = helpers.ensure_complex_list(c)
    dcat = helpers.ensure_complex_list(dcat)
    betas = helpers.ensure_complex_list(betas)
    N = len(c) - 1
    r = len(betas)
    if N + r >= d:
        raise exceptions.CutoffTooSmall(
            'N + r = {0} needs d > {0}, got {1}'.format(N + r, d)
        )
    if np.any(dcat == 0):
        raise exceptions.ZeroCatCoefficient('Cat weights must be nonzero')
    if len(set(betas.tolist())) != r:
        raise exceptions.CoincidentCoherentAmplitudes(
            'Coherent amplitudes must be pairwise distinct'
        )
    h = to_uniform_coeffs(c, m)
    if r:
        columns = np.hstack([
            np.eye(d, N + 1, dtype=complex),
            _coherent_columns(betas, d, tol),
        ])
        forward, unitary = _span_ops(columns, N + 1, threshold)
    else:
        forward = unitary = np.eye(d, dtype=complex)
    weights = np.ones(d, dtype=complex)
    weights[N + 1:N + 1 + r] = 1.0 / dcat
    stages, S = elimination_ops(h, d)
    repair = np.ones(d, dtype=complex)
    repair[N + 1:] = h[-1]
    return HybridReduction(
        F=LocalOperator(forward, label='F'),
        V=LocalOperator(unitary, label='V'),
        Q=LocalOperator.diagonal(weights, label='Q'),
        P=LocalOperator.scalar(norm, d, label='P'),
        G=factorial_rescale_op(N, d).relabel('G'),
        A=stages,
        S=S,
        repair=LocalOperator.diagonal(repair, label='repair'),
    )


def hybrid_certificate(reduction, m):
    modes = range(1, m + 1)
    steps = [(q, reduction.F) for q in modes]
    steps += [(q, reduction.V) for q in modes]
    steps += [(1, reduction.P), (1, reduction.Q)]
    steps += [(q, reduction.G) for q in modes]
    steps += [(1, op) for op in reduction.A]
    steps += [(1, reduction.S), (1, reduction.repair)]
    return IloCertificate(steps, source_label='hybrid output',
                          target_label='Phi_N + sum |n>^m')


def number_certificate(c, m, d, norm=1.0):
    """Certificate reducing (1/norm) sum_n c_n |Psi_n> to |Phi_N>: undo the
    normalization, rescale every mode by R, then eliminate on mode 1.

    """
    c = helpers.ensure_complex_list(c)
    N = len(c) - 1
    h = to_uniform_coeffs(c, m)
    R = factorial_rescale_op(N, d)
    steps = [(1, LocalOperator.scalar(norm, d, label='P'))]
    steps += [(q, R) for q in range(1, m + 1)]
    rescale = IloCertificate(steps, source_label='number output',
                             target_label='sum_n h_n Phi_n')
    return rescale.then(elimination_certificate(h, d))
