"""
Bipartitions, Schmidt ranks, and product states in the ranges of reduced
density matrices.
"""

import logging
import functools
import itertools
import collections

import numpy as np
from scipy import linalg

from multiport import exceptions

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-8
MAX_MODES = 12
MAX_SEARCH_DIM = 4096
ZERO_TOL = 1e-14
POLISH_ITERATIONS = 200
POLISH_BACKTRACKS = 8
MERGE_SAMPLES = (0.25, 0.5, 0.75)


class Bipartition(object):
    """Split of modes {1..m} into two nonempty sides; the canonical form
    keeps mode 1 on the left.

    :param left: Iterable of 1-based modes
    :param int m: Total mode count

    """
    def __init__(self, left, m):
        left = tuple(sorted(set(int(mode) for mode in left)))
        right = tuple(mode for mode in range(1, m + 1) if mode not in left)
        if not left or not right or left[0] < 1 or left[-1] > m:
            raise ValueError('Both sides of a bipartition must be nonempty '
                             'subsets of 1..{0}'.format(m))
        self.m = m
        self.left = left
        self.right = right

    @property
    def canonical(self):
        return 1 in self.left

    def swapped(self):
        return Bipartition(self.right, self.m)

    def __eq__(self, other):
        return (
            isinstance(other, Bipartition)
            and self.m == other.m
            and self.left == other.left
        )

    def __hash__(self):
        return hash((self.m, self.left))

    def __str__(self):
        return '{0}|{1}'.format(
            ','.join(str(mode) for mode in self.left),
            ','.join(str(mode) for mode in self.right),
        )

    def __repr__(self):
        return '<Bipartition {0}>'.format(self)


def bipartitions(m):
    """All 2^(m-1) - 1 canonical bipartitions, ordered by left-side size and
    then lexicographically.

    """
    if not 2 <= m <= MAX_MODES:
        raise exceptions.TooManyModes(
            'Bipartitions are enumerated for 2 <= m <= {0}'.format(MAX_MODES)
        )
    out = []
    for size in range(0, m - 1):
        for rest in itertools.combinations(range(2, m + 1), size):
            out.append(Bipartition((1,) + rest, m))
    return out


def _matricize(state, bp):
    axes = [mode - 1 for mode in bp.left + bp.right]
    amp = np.transpose(state.amp, axes)
    return amp.reshape(state.d ** len(bp.left), -1)


def _check_nonzero(state):
    if state.norm() <= ZERO_TOL:
        raise exceptions.ZeroState('Schmidt analysis of a zero state')


def schmidt_rank(state, bp, tol=DEFAULT_RANK_TOL):
    """Number of singular values above tol * sigma_max across `bp`."""
    _check_nonzero(state)
    singular = linalg.svdvals(_matricize(state, bp))
    return int(np.sum(singular > tol * singular[0]))


def schmidt_ranks(state, tol=DEFAULT_RANK_TOL):
    """Ordered map ``'1|2,3' -> rank`` over every canonical bipartition."""
    return collections.OrderedDict(
        (str(bp), schmidt_rank(state, bp, tol))
        for bp in bipartitions(state.m)
    )


def schmidt_decomposition(state, bp, tol=DEFAULT_RANK_TOL):
    """Schmidt coefficients with left and right vectors across `bp`.

    :return: ``(values, left, right)``; left[:, i] and right[:, i] are the
        flattened Schmidt vectors of value i

    """
    _check_nonzero(state)
    u, s, vh = linalg.svd(_matricize(state, bp), full_matrices=False)
    keep = s > tol * s[0]
    return s[keep], u[:, keep], vh[keep].T


def is_genuinely_entangled(state, tol=DEFAULT_RANK_TOL):
    """True iff every bipartition has Schmidt rank above 1."""
    return all(
        schmidt_rank(state, bp, tol) > 1 for bp in bipartitions(state.m)
    )


class ProductSearchConfig(object):
    """Settings for the multi-start product-state search.

    :param int restarts: Random starting points
    :param int max_iterations: Sweeps per restart
    :param float convergence_tol: Stop when a sweep improves less than this
    :param float dedup_angle: Witnesses closer than this angle (radians) in
        every factor are identified
    :param float membership_tol: Accept overlap ratios >= 1 - membership_tol
    :param int seed: Seed of the random starting points
    :param float range_tol: Relative eigenvalue cut defining the range
    :param float merge_ratio: Accepted restarts joined by a segment whose
        products keep at least this overlap ratio belong to one witness

    """
    def __init__(self, restarts=200, max_iterations=500, convergence_tol=1e-12,
                 dedup_angle=1e-3, membership_tol=1e-6, seed=0,
                 range_tol=DEFAULT_RANK_TOL, merge_ratio=0.75):
        for name, value in [
            ('restarts', restarts), ('max_iterations', max_iterations),
            ('convergence_tol', convergence_tol), ('dedup_angle', dedup_angle),
            ('membership_tol', membership_tol), ('range_tol', range_tol),
        ]:
            if value <= 0:
                raise ValueError('Parameter `{0}` must be positive'.format(
                    name))
        if dedup_angle >= np.pi / 4:
            raise ValueError('Parameter `dedup_angle` must be below pi/4')
        if not 0 < merge_ratio < 1:
            raise ValueError('Parameter `merge_ratio` must lie in (0, 1)')
        self.restarts = int(restarts)
        self.max_iterations = int(max_iterations)
        self.convergence_tol = float(convergence_tol)
        self.dedup_angle = float(dedup_angle)
        self.membership_tol = float(membership_tol)
        self.seed = int(seed)
        self.range_tol = float(range_tol)
        self.merge_ratio = float(merge_ratio)


ProductSearchResult = collections.namedtuple(
    'ProductSearchResult', ['count', 'witnesses', 'unconverged'],
)


def range_projector(state, traced_mode, tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of the range of the reduced density matrix left
    after tracing out `traced_mode`.

    :return: Array of shape ``(d,) * (m - 1) + (k,)``

    """
    _check_nonzero(state)
    axis = traced_mode - 1
    amp = np.moveaxis(state.amp, axis, -1)
    matrix = amp.reshape(-1, state.d)
    reduced = matrix.dot(matrix.conj().T)
    values, vectors = linalg.eigh(reduced)
    keep = values > tol * values[-1]
    basis = vectors[:, keep]
    return basis.reshape((state.d,) * (state.m - 1) + (basis.shape[1],))


def _environment(basis, factors, skip):
    """Contract the range basis with the conjugates of every factor except
    `skip`; returns the d x k matrix G with <P> = ||G^dagger v_skip||^2.

    """
    out = basis
    for index in reversed(range(len(factors))):
        if index != skip:
            out = np.tensordot(out, factors[index].conj(), axes=([index], [0]))
    return out


def _canonical(vector):
    vector = vector / linalg.norm(vector)
    pivot = np.flatnonzero(np.abs(vector) > 1e-8 * np.max(np.abs(vector)))[0]
    return vector * (abs(vector[pivot]) / vector[pivot])


def _same_witness(a, b, threshold):
    return all(
        abs(np.vdot(x, y)) > threshold for x, y in zip(a, b)
    )


def _product(factors):
    return functools.reduce(np.multiply.outer, factors).ravel()


def _residual(basis, factors):
    vector = _product(factors)
    return vector - basis.dot(basis.conj().T.dot(vector)), vector


def _membership(basis, vector):
    return float(linalg.norm(basis.conj().T.dot(vector)) ** 2
                 / linalg.norm(vector) ** 2)


def _shifted(factors, pivots, step):
    updated = [factor.copy() for factor in factors]
    position = 0
    for index, pivot in enumerate(pivots):
        for level in range(len(factors[index])):
            if level == pivot:
                continue
            updated[index][level] += step[position]
            position += 1
    return updated


def _polish(basis, factors, iterations=POLISH_ITERATIONS):
    """Damped Gauss-Newton refinement of a near-witness on
    (1 - P)(v_1 (x) ...) = 0.

    Each factor is pinned to 1 at its largest entry; the remaining entries
    are the unknowns. A step is halved up to POLISH_BACKTRACKS times until
    the relative residual shrinks; refinement stops when no halving does.

    :return: ``(factors, residual)`` with the relative residual norm

    """
    pivots = [int(np.argmax(np.abs(factor))) for factor in factors]
    factors = [factor / factor[pivot]
               for factor, pivot in zip(factors, pivots)]
    d = len(factors[0])
    residual, vector = _residual(basis, factors)
    best = linalg.norm(residual) / linalg.norm(vector)
    for _ in range(iterations):
        if best <= ZERO_TOL:
            break
        columns = []
        for index, pivot in enumerate(pivots):
            for level in range(d):
                if level == pivot:
                    continue
                trial = list(factors)
                trial[index] = np.zeros(d, dtype=complex)
                trial[index][level] = 1.0
                column, _ = _residual(basis, trial)
                columns.append(column)
        step = linalg.lstsq(np.column_stack(columns), -residual)[0]
        for _ in range(POLISH_BACKTRACKS):
            updated = _shifted(factors, pivots, step)
            new_residual, new_vector = _residual(basis, updated)
            score = linalg.norm(new_residual) / linalg.norm(new_vector)
            if score < best:
                break
            step = step / 2
        else:
            break
        factors, residual, best = updated, new_residual, score
    factors = [factor / linalg.norm(factor) for factor in factors]
    return factors, float(best)


def _search_once(basis, parties, d, cfg, rng):
    """One restart: alternating sweeps, then a polish once the overlap
    ratio passes 1 - sqrt(membership_tol).

    :return: ``(factors, ratio, residual, converged)``

    """
    factors = [
        rng.standard_normal(d) + 1j * rng.standard_normal(d)
        for _ in range(parties)
    ]
    factors = [factor / linalg.norm(factor) for factor in factors]
    tensor = basis.reshape((d,) * parties + (-1,))
    gate = 1.0 - np.sqrt(cfg.membership_tol)
    previous = -1.0
    ratio = 0.0
    converged = False
    for _ in range(cfg.max_iterations):
        for index in range(parties):
            environment = _environment(tensor, factors, index)
            left, singular, _ = linalg.svd(environment, full_matrices=False)
            factors[index] = left[:, 0]
            ratio = float(singular[0] ** 2)
        if ratio >= gate or abs(ratio - previous) < cfg.convergence_tol:
            converged = True
            break
        previous = ratio
    residual = np.sqrt(max(1.0 - ratio, 0.0))
    if ratio >= gate:
        # alternating sweeps crawl near degenerate witnesses
        polished, refined = _polish(basis, factors)
        if refined < residual:
            factors, residual = polished, refined
            ratio = 1.0 - refined ** 2
    return factors, ratio, residual, converged


def _aligned(a, b):
    overlap = np.vdot(b, a)
    if abs(overlap) <= ZERO_TOL:
        return b
    return b * (overlap / abs(overlap))


def _connected(basis, a, b, cfg):
    """True iff every sampled product on the factorwise segment from `a`
    to `b` keeps an overlap ratio of at least cfg.merge_ratio.

    """
    for t in MERGE_SAMPLES:
        factors = []
        for x, y in zip(a, b):
            factor = (1 - t) * x + t * _aligned(x, y)
            factors.append(factor / linalg.norm(factor))
        if _membership(basis, _product(factors)) < cfg.merge_ratio:
            return False
    return True


def _cluster(basis, candidates, cfg):
    """Group accepted restarts around distinct witnesses.

    Candidates are visited from the smallest residual up; each joins the
    first witness it matches within dedup_angle or is connected to through
    the range, and otherwise starts a new witness.

    """
    threshold = np.cos(cfg.dedup_angle)
    witnesses = []
    for _, factors in sorted(candidates, key=lambda item: item[0]):
        witness = tuple(_canonical(factor) for factor in factors)
        if not any(_same_witness(witness, seen, threshold)
                   or _connected(basis, witness, seen, cfg)
                   for seen in witnesses):
            witnesses.append(witness)
    return witnesses


def product_state_count(state, traced_mode, cfg=None):
    """Lower bound on the number of product states in the range of the
    reduced density matrix obtained by tracing out `traced_mode`.

    Each restart runs alternating maximization of <v|P|v> over unit product
    vectors v = v_1 (x) ... (x) v_{m-1}, one dominant-eigenvector update per
    factor, and hands restarts within sqrt(membership_tol) of 1 to a damped
    Gauss-Newton polish. Restarts reaching 1 - membership_tol are clustered:
    near a degenerate witness the accepted points spread along a flat
    valley of the overlap ratio, and points joined by a segment that stays
    inside the range count once. Each witness is the best-refined member of
    its cluster.

    Restarts that stop without converging are counted in
    ``ProductSearchResult.unconverged`` and logged.

    :return: ProductSearchResult
    :raise: TooLarge beyond desk-scale dimensions; NoConvergence when no
        restart converges and none reaches a witness

    """
    cfg = cfg or ProductSearchConfig()
    if state.m < 3:
        raise exceptions.ShapeMismatch(
            'Product-state counting needs at least three modes'
        )
    if not 1 <= traced_mode <= state.m:
        raise exceptions.ShapeMismatch(
            'Mode {0} out of range 1..{1}'.format(traced_mode, state.m)
        )
    parties = state.m - 1
    if state.d ** parties > MAX_SEARCH_DIM:
        raise exceptions.TooLarge(
            'Range dimension {0} exceeds {1}'.format(
                state.d ** parties, MAX_SEARCH_DIM
            )
        )
    basis = range_projector(state, traced_mode, cfg.range_tol)
    basis = basis.reshape(-1, basis.shape[-1])
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    candidates = []
    unconverged = 0
    for restart, seed in enumerate(seeds):
        rng = np.random.default_rng(seed)
        factors, ratio, residual, converged = _search_once(
            basis, parties, state.d, cfg, rng
        )
        if not converged:
            unconverged += 1
            logger.debug('Restart %d did not converge (ratio %.3g)',
                         restart, ratio)
        if ratio >= 1.0 - cfg.membership_tol:
            candidates.append((residual, factors))
    if unconverged == cfg.restarts and not candidates:
        raise exceptions.NoConvergence(
            'None of {0} restarts converged tracing mode {1}'.format(
                cfg.restarts, traced_mode
            ),
            unconverged=unconverged,
        )
    if unconverged:
        logger.warning('%d of %d restarts did not converge', unconverged,
                       cfg.restarts)
    witnesses = _cluster(basis, candidates, cfg)
    logger.info('Found %d product state(s) tracing mode %d from %d '
                'accepted restart(s)', len(witnesses), traced_mode,
                len(candidates))
    return ProductSearchResult(len(witnesses), witnesses, unconverged)


def a_values(state, cfg=None):
    """Product-state counts [a_1, ..., a_m], one per traced mode."""
    return [
        product_state_count(state, mode, cfg).count
        for mode in range(1, state.m + 1)
    ]
