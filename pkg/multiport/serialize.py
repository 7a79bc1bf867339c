"""
JSON, CSV and text forms of input specs, certificates, reports and states.
Complex numbers are always written as ``[re, im]`` pairs.
"""

import io
import csv
import json
import numbers
import logging

import numpy as np

from multiport import fock
from multiport import helpers
from multiport import exceptions
from multiport.operators.local import LocalOperator, IloCertificate

logger = logging.getLogger(__name__)

INPUT_TYPES = ('number', 'cat', 'hybrid')


def _pointer(*parts):
    return ''.join('/{0}'.format(part) for part in parts)


def _require(document, key, path):
    if not isinstance(document, dict):
        raise exceptions.SchemaError('Expected an object', pointer=_pointer(*path))
    if key not in document:
        raise exceptions.SchemaError(
            'Missing key {0!r}'.format(key), pointer=_pointer(*path)
        )
    return document[key]


def _complex(value, path):
    try:
        return helpers.ensure_complex(value)
    except ValueError as error:
        raise exceptions.SchemaError(str(error), pointer=_pointer(*path))


def _array(value, path):
    if not isinstance(value, list):
        raise exceptions.SchemaError('Expected an array',
                                     pointer=_pointer(*path))
    return value


def _parse_number(document, path):
    path = path + ('coefficients',)
    coefficients = _array(_require(document, 'coefficients', path[:-1]), path)
    return fock.NumberSuperposition([
        _complex(value, path + (index,))
        for index, value in enumerate(coefficients)
    ])


def _parse_cat(document, path):
    path = path + ('terms',)
    terms = _array(_require(document, 'terms', path[:-1]), path)
    parsed = []
    for index, term in enumerate(terms):
        here = path + (index,)
        parsed.append((
            _complex(_require(term, 'c', here), here + ('c',)),
            _complex(_require(term, 'alpha', here), here + ('alpha',)),
        ))
    return fock.CatState(parsed)


def _parse_variant(document, path):
    kind = _require(document, 'type', path)
    if kind == 'number':
        return _parse_number(document, path)
    if kind == 'cat':
        return _parse_cat(document, path)
    if kind == 'hybrid':
        number = _require(document, 'number', path)
        cat = _require(document, 'cat', path)
        return fock.Hybrid(
            _parse_number(number, path + ('number',)),
            _parse_cat(cat, path + ('cat',)),
        )
    raise exceptions.SchemaError(
        'Input type must be one of {0}'.format(', '.join(INPUT_TYPES)),
        pointer=_pointer(*(path + ('type',))),
    )


def spec_from_dict(document):
    """Validated InputSpec from a decoded spec document.

    :raise: SchemaError with a JSON pointer; InvariantError subclasses for
        inputs violating the family invariants

    """
    modes = _require(document, 'modes', ())
    if not isinstance(modes, int) or isinstance(modes, bool) or modes < 2:
        raise exceptions.SchemaError('"modes" must be an integer >= 2',
                                     pointer='/modes')
    cutoff = document.get('cutoff', fock.AUTO)
    if cutoff != fock.AUTO and (
            not isinstance(cutoff, int) or isinstance(cutoff, bool)
            or cutoff < 1):
        raise exceptions.SchemaError('"cutoff" must be a positive integer or '
                                     '"auto"', pointer='/cutoff')
    tolerance = document.get('tolerance', fock.DEFAULT_TOL)
    if not isinstance(tolerance, numbers.Real) or isinstance(tolerance, bool) \
            or tolerance <= 0:
        raise exceptions.SchemaError('"tolerance" must be a positive number',
                                     pointer='/tolerance')
    variant = _parse_variant(_require(document, 'input', ()), ('input',))
    logger.debug('Parsed %s input on %d modes', variant.kind, modes)
    return fock.InputSpec(variant, modes, tolerance=tolerance, cutoff=cutoff)


def parse_input_spec(text):
    """Parse an input spec from JSON text.

    :param str text: JSON document
    :return: InputSpec

    """
    try:
        document = json.loads(text)
    except ValueError as error:
        raise exceptions.SchemaError('Malformed JSON: {0}'.format(error))
    return spec_from_dict(document)


def _matrix_to_list(matrix):
    return [[helpers.complex_pair(value) for value in row] for row in matrix]


def _matrix_from_list(rows, path):
    rows = _array(rows, path)
    return np.array([
        [_complex(value, path + (i, j)) for j, value in enumerate(
            _array(row, path + (i,)))]
        for i, row in enumerate(rows)
    ], dtype=complex)


def certificate_to_dict(cert):
    return {
        'steps': [
            {
                'mode': mode,
                'label': op.label,
                'matrix': _matrix_to_list(op.matrix),
            }
            for mode, op in cert.steps
        ],
        'global_scalar': helpers.complex_pair(cert.global_scalar),
        'source': cert.source_label,
        'target': cert.target_label,
    }


def certificate_from_dict(document):
    """Certificate from its JSON form; a full report is accepted too."""
    if isinstance(document, dict) and 'certificate' in document:
        document = document['certificate']
        path = ('certificate',)
    else:
        path = ()
    steps = []
    raw = _array(_require(document, 'steps', path), path + ('steps',))
    for index, step in enumerate(raw):
        here = path + ('steps', index)
        mode = _require(step, 'mode', here)
        if not isinstance(mode, int) or isinstance(mode, bool):
            raise exceptions.SchemaError('Step mode must be an integer',
                                         pointer=_pointer(*(here + ('mode',))))
        matrix = _matrix_from_list(_require(step, 'matrix', here),
                                   here + ('matrix',))
        steps.append((mode, LocalOperator(matrix, label=step.get('label'))))
    scalar = _complex(document.get('global_scalar', [1.0, 0.0]),
                      path + ('global_scalar',))
    return IloCertificate(
        steps, global_scalar=scalar,
        source_label=document.get('source', ''),
        target_label=document.get('target', ''),
    )


def label_to_dict(label):
    out = {'variant': label.variant}
    if label.N is not None:
        out['N'] = label.N
    if label.r is not None:
        out['r'] = label.r
    return out


def report_to_dict(report):
    out = {
        'status': report.status,
        'label': str(report.label),
        'class': label_to_dict(report.label),
        'modes': report.modes,
        'dimension': report.dimension,
        'schmidt_rank': report.label.schmidt_rank,
        'schmidt_ranks': dict(report.per_bipartition_ranks),
        'fidelity': report.fidelity,
        'certificate': certificate_to_dict(report.certificate),
        'hierarchy': report.hierarchy_note,
        'warnings': list(report.warnings),
    }
    if report.a_values is not None:
        out['a_values'] = list(report.a_values)
    return out


def dumps(document):
    """Deterministic JSON text: sorted keys, fixed indentation."""
    return json.dumps(document, sort_keys=True, indent=2) + '\n'


def report_to_json(report):
    return dumps(report_to_dict(report))


def state_to_dict(state, normalized=None, tol=0.0):
    """Nonzero amplitudes of `state` in index order."""
    if normalized is None:
        normalized = abs(state.norm() - 1.0) <= 1e-10
    return {
        'modes': state.m,
        'dimension': state.d,
        'normalized': bool(normalized),
        'amplitudes': [
            {'index': list(index), 'value': helpers.complex_pair(value)}
            for index, value in state.nonzero(tol)
        ],
    }


def ranks_to_csv(ranks):
    """Two-column CSV table ``bipartition,rank``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['bipartition', 'rank'])
    for key, value in ranks.items():
        writer.writerow([key, value])
    return buffer.getvalue()


def ranks_to_text(ranks):
    width = max(len(key) for key in ranks) if ranks else 0
    return ''.join(
        '{0:<{2}}  {1}\n'.format(key, value, width)
        for key, value in ranks.items()
    )
