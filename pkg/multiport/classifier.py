"""
End-to-end classification of beam-splitter outputs.
"""

import logging

import numpy as np

from multiport import fock
from multiport import schmidt
from multiport import exceptions
from multiport.operators import reductions
from multiport.operators.local import apply_certificate, verify_equivalence

logger = logging.getLogger(__name__)

NUMBER = 'number'
CAT = 'cat'
SUCCESS = 'success'
FAILED = 'failed'

EQUIVALENT = 'equivalent'
INEQUIVALENT = 'inequivalent'
UNDECIDED = 'undecided'

APPROACHABILITY_NOTE = (
    'Every class in the chain contains states arbitrarily close to any state '
    'of a lower class; no state of a lower class comes arbitrarily close to '
    'a state of a higher class, since local invertible operators cannot raise '
    'a Schmidt rank.'
)
CROSS_SCENARIO_NOTE = (
    'Hybrid classes are inequivalent to the number and cat classes of equal '
    'Schmidt rank; no containment between scenarios is claimed.'
)


class ClassLabel(object):
    """SLOCC class of an output: C{N}, R{r} or Hybrid{N, r}.

    :param str variant: ``'C'``, ``'R'`` or ``'Hybrid'``

    """
    def __init__(self, variant, N=None, r=None, a_value=None):
        if variant not in ('C', 'R', 'Hybrid'):
            raise ValueError('Unknown class variant {0!r}'.format(variant))
        self.variant = variant
        self.N = N
        self.r = r
        self.a_value = a_value

    @property
    def schmidt_rank(self):
        if self.variant == 'C':
            return self.N + 1
        if self.variant == 'R':
            return self.r
        return self.N + self.r + 1

    @property
    def params(self):
        return (self.variant, self.N, self.r)

    def __eq__(self, other):
        return isinstance(other, ClassLabel) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __str__(self):
        if self.variant == 'C':
            return 'C{0}'.format(self.N)
        if self.variant == 'R':
            return 'R{0}'.format(self.r)
        return 'Hybrid({0},{1})'.format(self.N, self.r)

    def __repr__(self):
        return '<ClassLabel {0}>'.format(self)


class ClassificationReport(object):
    """Result of `Classifier.classify`."""

    def __init__(self, label, representative, certificate, fidelity,
                 per_bipartition_ranks, hierarchy_note, warnings=None,
                 a_values=None, status=SUCCESS, modes=None, dimension=None):
        self.label = label
        self.representative = representative
        self.certificate = certificate
        self.fidelity = fidelity
        self.per_bipartition_ranks = per_bipartition_ranks
        self.hierarchy_note = hierarchy_note
        self.warnings = list(warnings or [])
        self.a_values = a_values
        self.status = status
        self.modes = modes
        self.dimension = dimension

    @property
    def ok(self):
        return self.status == SUCCESS

    @property
    def schmidt_rank(self):
        ranks = set(self.per_bipartition_ranks.values())
        if len(ranks) == 1:
            return ranks.pop()

    def __repr__(self):
        return '<ClassificationReport {0} {1}>'.format(self.label, self.status)


class Hierarchy(object):

    def __init__(self, scenario, nodes, note):
        self.scenario = scenario
        self.nodes = nodes
        self.note = note

    @property
    def text(self):
        return ' ⊂ '.join(self.nodes)

    def __str__(self):
        return self.text


def class_hierarchy(scenario, upto):
    """Containment chain C0 < ... < C_upto or R1 < ... < R_upto.

    :param str scenario: ``'number'`` or ``'cat'``
    :param int upto: Highest class index

    """
    if upto < 0:
        raise ValueError('Parameter `upto` must be non-negative')
    if scenario == NUMBER:
        nodes = ['C{0}'.format(n) for n in range(0, upto + 1)]
    elif scenario == CAT:
        nodes = ['R{0}'.format(r) for r in range(1, upto + 1)]
    else:
        raise ValueError('Scenario must be "number" or "cat"')
    return Hierarchy(scenario, nodes, APPROACHABILITY_NOTE)


def _hierarchy_note(label):
    if label.variant == 'C':
        nodes = ['C{0}'.format(n)
                 for n in range(max(label.N - 1, 0), label.N + 2)]
    elif label.variant == 'R':
        nodes = ['R{0}'.format(r)
                 for r in range(max(label.r - 1, 1), label.r + 2)]
    else:
        return CROSS_SCENARIO_NOTE
    return ' ⊂ '.join(nodes)


def representative(label, m, d):
    """Class representative at local dimension d: |Phi_N>, GHZ_(r), or
    |Phi_N> + sum_{n=N+1}^{N+r} |n>^(x m).

    """
    amp = np.zeros((d,) * m, dtype=complex)
    if label.variant in ('C', 'Hybrid'):
        amp += fock.uniform_state(label.N, m, d).amp
    if label.variant == 'R':
        levels = range(label.r)
        scale = 1.0 / np.sqrt(label.r)
    elif label.variant == 'Hybrid':
        levels = range(label.N + 1, label.N + label.r + 1)
        scale = 1.0
    else:
        levels, scale = (), 1.0
    for level in levels:
        amp[(level,) * m] += scale
    return fock.ModeTensor(amp)


def cross_scenario_compare(a, b):
    """Compare two successful reports under SLOCC.

    :return: ``'equivalent'``, ``'inequivalent'`` or ``'undecided'``
    :raise: IncomparableModes for different mode counts

    """
    if a.modes != b.modes:
        raise exceptions.IncomparableModes(
            'Reports cover {0} and {1} modes'.format(a.modes, b.modes)
        )
    if not (a.ok and b.ok):
        raise exceptions.VerificationFailed(
            'Only successful reports can be compared'
        )
    if a.per_bipartition_ranks != b.per_bipartition_ranks:
        return INEQUIVALENT
    if a.label == b.label:
        return EQUIVALENT
    if a.a_values is not None and b.a_values is not None \
            and list(a.a_values) != list(b.a_values):
        return INEQUIVALENT
    rank = a.schmidt_rank
    # bipartite classes are fixed by the Schmidt rank; rank 1 is separable
    if rank is not None and (a.modes == 2 or rank == 1):
        return EQUIVALENT
    return UNDECIDED


class Classifier(object):
    """Builds beam-splitter outputs, reduces them to class representatives
    with explicit certificates, and verifies the result.

    :param float tol: Relative singular-value threshold for Schmidt ranks
    :param float tol_fid: Fidelity tolerance; defaults to 1e-10 for number
        inputs and 1e-8 for inputs with coherent terms
    :param bool compute_a: Search product-state counts (costly)
    :param int restarts: Search restarts; requires `compute_a`
    :param int max_iterations: Sweeps per restart; requires `compute_a`
    :param float membership_tol: Search acceptance; requires `compute_a`
    :param int seed: Seed for the search
    :param float gram_threshold: Largest accepted Gram condition number

    """
    def __init__(self, tol=schmidt.DEFAULT_RANK_TOL, tol_fid=None,
                 compute_a=False, restarts=None, max_iterations=None,
                 membership_tol=None, seed=0,
                 gram_threshold=reductions.DEFAULT_GRAM_THRESHOLD):

        self.tol = tol
        self.tol_fid = tol_fid
        self.gram_threshold = gram_threshold
        self.seed = seed

        # Set up product-state search
        self.compute_a = compute_a
        search = dict(
            (key, value) for key, value in [
                ('restarts', restarts),
                ('max_iterations', max_iterations),
                ('membership_tol', membership_tol),
            ]
            if value is not None
        )
        if search and not compute_a:
            raise ValueError('Parameter `{0}` is provided, but a-value search '
                             'is turned off'.format(sorted(search)[0]))
        self.search_config = schmidt.ProductSearchConfig(seed=seed, **search)

    def __repr__(self):
        return '<Classifier tol={0} compute_a={1}>'.format(
            self.tol, self.compute_a
        )

    def label_for(self, spec):
        """Class label read structurally off the InputSpec."""
        if spec.kind == 'number':
            return ClassLabel('C', N=spec.number.N)
        if spec.kind == 'cat':
            return ClassLabel('R', r=spec.cat.r)
        return ClassLabel('Hybrid', N=spec.number.N, r=spec.cat.r)

    def build(self, spec):
        return fock.mbs_output(spec, spec.dimension())

    def representative(self, spec, d=None):
        d = spec.dimension() if d is None else d
        return representative(self.label_for(spec), spec.modes, d)

    def fidelity_tol(self, spec):
        if self.tol_fid is not None:
            return self.tol_fid
        return 1e-10 if spec.kind == 'number' else 1e-8

    def _rank_tol(self, deficit):
        # truncation perturbs singular values at the deficit scale
        return max(self.tol, 10 * deficit)

    def _replay_rank_tol(self, deficit, fidelity):
        # a replay off by delta moves every singular value by at most delta
        return max(self._rank_tol(deficit),
                   10 * np.sqrt(max(1.0 - fidelity, 0.0)))

    def certificate(self, spec, d=None):
        """Certificate reducing the output of `spec` to its representative."""
        d = spec.dimension() if d is None else d
        m = spec.modes
        norm = spec.normalization()
        if spec.kind == 'number':
            logger.info('Reducing number superposition N=%d', spec.number.N)
            return reductions.number_certificate(
                spec.number.coefficients, m, d, norm
            )
        if spec.kind == 'cat':
            logger.info('Reducing cat state r=%d', spec.cat.r)
            reduction = reductions.cat_reduction_ops(
                spec.cat.weights, spec.betas, d, norm, tol=spec.tolerance,
                threshold=self.gram_threshold,
            )
            return reductions.cat_certificate(reduction, m, spec.cat.r)
        logger.info('Reducing hybrid N=%d r=%d', spec.number.N, spec.cat.r)
        reduction = reductions.hybrid_reduction_ops(
            spec.number.coefficients, spec.cat.weights, spec.betas, d, norm,
            m, tol=spec.tolerance, threshold=self.gram_threshold,
        )
        return reductions.hybrid_certificate(reduction, m)

    def ranks(self, spec):
        d = spec.dimension()
        state = fock.mbs_output(spec, d)
        return schmidt.schmidt_ranks(state, self._rank_tol(spec.deficit(d)))

    def a_values(self, state, support):
        """Product-state counts of a class representative restricted to its
        first `support` levels.

        :raise: CutoffTooSmall if `state` has amplitude beyond `support`

        """
        return schmidt.a_values(state.truncated(support), self.search_config)

    def classify(self, spec):
        """Classify the output of `spec`.

        Per-bipartition ranks are measured on the replayed state once the
        replay verifies, and on the raw output otherwise.

        :return: ClassificationReport
        :raise: VerificationFailed with the failed report attached

        """
        d = spec.dimension()
        m = spec.modes
        deficit = spec.deficit(d)
        warnings = []
        if deficit > 0:
            warnings.append(
                'coherent truncation deficit {0:.3g} at d={1}'.format(
                    deficit, d
                )
            )
        state = fock.mbs_output(spec, d)
        label = self.label_for(spec)
        target = representative(label, m, d)
        cert = self.certificate(spec, d)
        conditions = [op.condition for _, op in cert.steps]
        if conditions and max(conditions) > 1e8:
            warnings.append('certificate condition number {0:.3g}'.format(
                max(conditions)))

        replayed = apply_certificate(state, cert)
        fidelity, ok = verify_equivalence(
            replayed, target, self.fidelity_tol(spec)
        )
        if ok:
            ranks = schmidt.schmidt_ranks(
                replayed, self._replay_rank_tol(deficit, fidelity)
            )
        else:
            ranks = schmidt.schmidt_ranks(state, self._rank_tol(deficit))
        problems = []
        if not ok:
            problems.append('replay fidelity {0!r} below threshold'.format(
                fidelity))
        bad = [key for key, value in ranks.items()
               if value != label.schmidt_rank]
        if bad:
            problems.append('rank mismatch on {0}'.format(', '.join(bad)))

        a_values = None
        if self.compute_a and m >= 3:
            a_values = self.a_values(target, label.schmidt_rank)
            if len(set(a_values)) == 1:
                label.a_value = a_values[0]
            else:
                warnings.append('a-values differ across modes')
        elif self.compute_a:
            warnings.append('a-values need at least three modes')

        report = ClassificationReport(
            label=label,
            representative=target,
            certificate=cert,
            fidelity=fidelity,
            per_bipartition_ranks=ranks,
            hierarchy_note=_hierarchy_note(label),
            warnings=warnings,
            a_values=a_values,
            status=FAILED if problems else SUCCESS,
            modes=m,
            dimension=d,
        )
        if problems:
            logger.error('Verification failed for %r: %s', spec,
                         '; '.join(problems))
            raise exceptions.VerificationFailed('; '.join(problems),
                                                report=report)
        logger.info('Classified %r as %s (fidelity %.12f)', spec, label,
                    fidelity)
        return report


def classify(spec, **kwargs):
    """Classify with a one-off `Classifier`; see its keyword arguments."""
    return Classifier(**kwargs).classify(spec)
