"""
Truncated Fock-space inputs and multiport beam-splitter outputs.
"""

import logging

import numpy as np
from scipy.special import gammainc

from multiport import helpers
from multiport import exceptions
from multiport.tensor import ModeTensor
from multiport.operators.local import LocalOperator, IloCertificate

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
MAX_CUTOFF = 200
AUTO = 'auto'


class NumberSuperposition(object):
    """Finite superposition sum_n c_n |n> on the input mode. Trailing zero
    coefficients are trimmed so that c_N != 0.

    :param coefficients: Sequence of complex numbers or [re, im] pairs

    """
    kind = 'number'

    def __init__(self, coefficients):
        coefficients = helpers.ensure_complex_list(coefficients)
        nonzero = np.flatnonzero(coefficients != 0)
        if not nonzero.size:
            raise exceptions.EmptySuperposition(
                'A number superposition needs a nonzero coefficient'
            )
        top = int(nonzero[-1])
        self.trimmed = len(coefficients) - top - 1
        if self.trimmed:
            logger.warning('Trimmed %d trailing zero coefficient(s)',
                           self.trimmed)
        self.coefficients = coefficients[:top + 1]
        self.coefficients.flags.writeable = False

    @property
    def N(self):
        return len(self.coefficients) - 1

    def __repr__(self):
        return '<NumberSuperposition N={0}>'.format(self.N)


class CatState(object):
    """Finite superposition sum_k c_k |alpha_k> of distinct coherent states.

    :param terms: Sequence of ``(c_k, alpha_k)`` pairs

    """
    kind = 'cat'

    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise exceptions.EmptySuperposition('A cat state needs a term')
        self.weights = helpers.ensure_complex_list([c for c, _ in terms])
        self.alphas = helpers.ensure_complex_list([a for _, a in terms])
        for index, weight in enumerate(self.weights):
            if weight == 0:
                raise exceptions.ZeroCatCoefficient(
                    'Cat coefficient {0} is zero'.format(index)
                )
        for i in range(len(self.alphas)):
            for j in range(i):
                if self.alphas[i] == self.alphas[j]:
                    raise exceptions.CoincidentCoherentAmplitudes(
                        'Coherent amplitudes {0} and {1} coincide'.format(j, i)
                    )
        self.weights.flags.writeable = False
        self.alphas.flags.writeable = False

    @property
    def r(self):
        return len(self.alphas)

    def __repr__(self):
        return '<CatState r={0}>'.format(self.r)


class Hybrid(object):
    """Superposition of number states and coherent states on one mode.

    :param number: Coefficients c_0 .. c_N
    :param cat: Sequence of ``(d_k, alpha_k)`` pairs

    """
    kind = 'hybrid'

    def __init__(self, number, cat):
        self.number = (
            number if isinstance(number, NumberSuperposition)
            else NumberSuperposition(number)
        )
        self.cat = cat if isinstance(cat, CatState) else CatState(cat)

    @property
    def N(self):
        return self.number.N

    @property
    def r(self):
        return self.cat.r

    def __repr__(self):
        return '<Hybrid N={0} r={1}>'.format(self.N, self.r)


class InputSpec(object):
    """Input family plus mode count and truncation policy.

    :param variant: NumberSuperposition, CatState or Hybrid
    :param int modes: Number of beam-splitter ports m >= 2
    :param float tolerance: Truncation tolerance for coherent tails
    :param cutoff: Local dimension, or ``'auto'``

    """
    def __init__(self, variant, modes, tolerance=DEFAULT_TOL, cutoff=AUTO):
        if not isinstance(variant, (NumberSuperposition, CatState, Hybrid)):
            raise ValueError('Unknown input variant {0!r}'.format(variant))
        if int(modes) != modes or modes < 2:
            raise exceptions.ShapeMismatch('At least two modes are required')
        if tolerance <= 0:
            raise ValueError('Tolerance must be positive')
        if cutoff != AUTO and (int(cutoff) != cutoff or cutoff < 1):
            raise ValueError('Cutoff must be a positive integer or "auto"')
        self.variant = variant
        self.modes = int(modes)
        self.tolerance = float(tolerance)
        self.cutoff = cutoff

    @property
    def kind(self):
        return self.variant.kind

    @property
    def number(self):
        if self.kind == 'number':
            return self.variant
        if self.kind == 'hybrid':
            return self.variant.number

    @property
    def cat(self):
        if self.kind == 'cat':
            return self.variant
        if self.kind == 'hybrid':
            return self.variant.cat

    @property
    def betas(self):
        """Per-mode coherent amplitudes alpha_k / sqrt(m)."""
        if self.cat is None:
            return np.zeros(0, dtype=complex)
        return self.cat.alphas / np.sqrt(self.modes)

    def minimum_dimension(self):
        if self.kind == 'number':
            return self.number.N + 1
        if self.kind == 'cat':
            return self.cat.r
        return self.number.N + self.cat.r + 1

    def dimension(self):
        """Local dimension d chosen by the cutoff policy.

        :raise: CutoffTooSmall for explicit cutoffs that cannot hold the
            state within tolerance

        """
        minimum = self.minimum_dimension()
        if self.cutoff == AUTO:
            d = max(auto_cutoff(self.betas, self.tolerance), minimum)
            logger.info('Auto cutoff picked d=%d for %r', d, self.variant)
            return d
        d = int(self.cutoff)
        if d < minimum:
            raise exceptions.CutoffTooSmall(
                'Cutoff {0} is below the minimum {1} for {2!r}'.format(
                    d, minimum, self.variant
                )
            )
        deficit = self.deficit(d)
        if deficit >= self.tolerance:
            raise exceptions.CutoffTooSmall(
                'Truncation deficit {0!r} at d={1} exceeds tolerance '
                '{2!r}'.format(deficit, d, self.tolerance)
            )
        return d

    def deficit(self, d):
        """Largest per-mode coherent truncation deficit at dimension d."""
        if not len(self.betas):
            return 0.0
        return max(truncation_deficit(beta, d) for beta in self.betas)

    def normalization(self):
        """Norm of the untruncated single-mode input state."""
        total = 0j
        number, cat = self.number, self.cat
        if number is not None:
            total += np.sum(np.abs(number.coefficients) ** 2)
        if cat is not None:
            for cj, aj in zip(cat.weights, cat.alphas):
                for ck, ak in zip(cat.weights, cat.alphas):
                    total += cj.conjugate() * ck * helpers.coherent_overlap(
                        aj, ak
                    )
        if number is not None and cat is not None:
            for n, cn in enumerate(number.coefficients):
                for dk, ak in zip(cat.weights, cat.alphas):
                    total += 2 * (
                        cn.conjugate() * dk
                        * helpers.number_coherent_overlap(n, ak)
                    ).real
        return float(np.sqrt(abs(total.real)))

    def __repr__(self):
        return '<InputSpec {0!r} m={1} cutoff={2}>'.format(
            self.variant, self.modes, self.cutoff
        )


def _check_level(n, d):
    if not 0 <= n < d:
        raise exceptions.CutoffTooSmall(
            'Level {0} does not fit local dimension {1}'.format(n, d)
        )


def number_mbs_output(n, m, d):
    """Balanced beam-splitter output |Psi_n> of the input |n, 0, ..., 0>,
    with amplitudes m^(-n/2) sqrt(n! / (n_1! ... n_m!)) on the shell of
    total n.

    """
    _check_level(n, d)
    amp = np.zeros((d,) * m, dtype=complex)
    scale = m ** n
    # exact integer multinomials keep mode-permuted amplitudes bit-identical
    for index in np.argwhere(helpers.shell_mask(m, d, n)):
        amp[tuple(index)] = np.sqrt(
            helpers.multinomial(int(k) for k in index) / scale
        )
    return ModeTensor(amp, normalized=True)


def uniform_state(n, m, d):
    """Unnormalized uniform state |Phi_n>: amplitude 1 on every occupation
    pattern of total n.

    """
    _check_level(n, d)
    return ModeTensor(helpers.shell_mask(m, d, n).astype(complex))


def superpose(terms):
    """Linear combination of states sharing (m, d).

    :param terms: Iterable of ``(scalar, ModeTensor)`` pairs
    :return: Unnormalized ModeTensor

    """
    terms = list(terms)
    if not terms:
        raise ValueError('Nothing to superpose')
    first = terms[0][1]
    out = np.zeros(first.shape, dtype=complex)
    for scalar, state in terms:
        if not state.same_space(first):
            raise exceptions.ShapeMismatch(
                'Cannot superpose {0!r} with {1!r}'.format(state, first)
            )
        out += complex(scalar) * state.amp
    return ModeTensor(out)


def truncation_deficit(alpha, d):
    """Poisson tail 1 - sum_{n<d} |<n|alpha>|^2 of a truncated coherent state."""
    mean = abs(complex(alpha)) ** 2
    if mean == 0:
        return 0.0
    # P(X >= d) for X ~ Poisson(mean) is the regularized lower gamma P(d, mean)
    return float(gammainc(d, mean))


def coherent_mode_vector(alpha, d):
    """Truncated expansion of |alpha> over levels 0 .. d-1.

    :return: ``(vector, deficit)``

    """
    if d < 1:
        raise exceptions.CutoffTooSmall('Local dimension must be positive')
    alpha = complex(alpha)
    vector = np.empty(d, dtype=complex)
    vector[0] = np.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, d):
        vector[n] = vector[n - 1] * alpha / np.sqrt(n)
    return vector, truncation_deficit(alpha, d)


def auto_cutoff(alphas, eps=DEFAULT_TOL, minimum=1):
    """Smallest d >= minimum whose Poisson tail is below eps for every
    amplitude in `alphas`.

    """
    alphas = list(alphas)
    d = max(int(minimum), 1)
    while any(truncation_deficit(alpha, d) >= eps for alpha in alphas):
        d += 1
        if d > MAX_CUTOFF:
            raise exceptions.CutoffTooSmall(
                'No cutoff up to {0} reaches tolerance {1!r}'.format(
                    MAX_CUTOFF, eps
                )
            )
    return d


def coherent_mbs_output(alpha, m, d=None, tol=DEFAULT_TOL):
    """Output |alpha/sqrt(m)>^(x m) of a coherent input.

    :param d: Local dimension, or None for the automatic cutoff
    :raise: CutoffTooSmall if an explicit d leaves a deficit above `tol`

    """
    beta = complex(alpha) / np.sqrt(m)
    if d is None or d == AUTO:
        d = auto_cutoff([beta], tol)
    vector, deficit = coherent_mode_vector(beta, d)
    if deficit >= tol:
        raise exceptions.CutoffTooSmall(
            'Coherent deficit {0!r} at d={1} exceeds {2!r}'.format(
                deficit, d, tol
            )
        )
    return ModeTensor.product([vector] * m)


def mbs_output(spec, d=None):
    """Normalized-input beam-splitter output for a whole InputSpec:
    (1/N)(sum_n c_n |Psi_n> + sum_k d_k |beta_k>^(x m)).

    :param InputSpec spec: Input description
    :param int d: Local dimension; defaults to ``spec.dimension()``

    """
    d = spec.dimension() if d is None else d
    m = spec.modes
    amp = np.zeros((d,) * m, dtype=complex)
    if spec.number is not None:
        for n, cn in enumerate(spec.number.coefficients):
            if cn != 0:
                amp += cn * number_mbs_output(n, m, d).amp
    if spec.cat is not None:
        for weight, beta in zip(spec.cat.weights, spec.betas):
            vector, _ = coherent_mode_vector(beta, d)
            amp += weight * ModeTensor.product([vector] * m).amp
    return ModeTensor(amp / spec.normalization())


def _check_scattering(gammas, tol):
    gammas = helpers.ensure_complex_list(gammas)
    if np.any(gammas == 0):
        raise exceptions.ZeroScatteringAmplitude(
            'Every scattering amplitude must be nonzero'
        )
    total = float(np.sum(np.abs(gammas) ** 2))
    if abs(total - 1.0) > tol:
        raise exceptions.NotNormalizedScattering(
            'Scattering amplitudes have squared norm {0!r}'.format(total)
        )
    return gammas


def general_mbs_output(number, gammas, d, tol=DEFAULT_TOL):
    """Output of an arbitrary beam-splitter sending a_1^dagger to
    sum_q gamma_q a_q^dagger, for a number-superposition input.

    :param number: NumberSuperposition or coefficient list
    :param gammas: First column of the scattering matrix, length m
    :param int d: Local dimension

    """
    if not isinstance(number, NumberSuperposition):
        number = NumberSuperposition(number)
    gammas = _check_scattering(gammas, tol)
    _check_level(number.N, d)
    m = len(gammas)
    occupations = np.indices((d,) * m)
    totals = occupations.sum(axis=0)
    log_root = 0.5 * (
        helpers.log_factorial(totals)
        - helpers.log_factorial(occupations).sum(axis=0)
    )
    powers = np.ones((d,) * m, dtype=complex)
    for q, gamma in enumerate(gammas):
        powers = powers * gamma ** occupations[q]
    weights = np.zeros((d,) * m, dtype=complex)
    for n, cn in enumerate(number.coefficients):
        weights[totals == n] = cn
    return ModeTensor(weights * np.exp(log_root) * powers)


def balancing_operators(gammas, d):
    """Diagonal operators D_q = sum_n (gamma_q sqrt(m))^(-n) |n><n| mapping
    a general beam-splitter output onto the balanced one.

    """
    gammas = helpers.ensure_complex_list(gammas)
    if np.any(gammas == 0):
        raise exceptions.ZeroScatteringAmplitude(
            'Balancing needs nonzero scattering amplitudes'
        )
    m = len(gammas)
    levels = np.arange(d)
    return [
        LocalOperator.diagonal(
            (1.0 / (gamma * np.sqrt(m))) ** levels,
            mode=q + 1, label='D{0}'.format(q + 1),
        )
        for q, gamma in enumerate(gammas)
    ]


def balancing_certificate(gammas, d):
    ops = balancing_operators(gammas, d)
    return IloCertificate(
        [(op.mode, op) for op in ops],
        source_label='general beam-splitter output',
        target_label='balanced beam-splitter output',
    )
