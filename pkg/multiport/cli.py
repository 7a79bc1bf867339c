"""
Command-line front door: ``multiport <command> --spec PATH``.
"""

import sys
import json
import logging
import argparse

from multiport import fock
from multiport import serialize
from multiport import exceptions
from multiport.matrix import coefficient_matrix_view
from multiport.classifier import Classifier, class_hierarchy
from multiport.operators.local import apply_certificate, verify_equivalence

logger = logging.getLogger(__name__)

COMMANDS = ('build', 'classify', 'rank', 'verify', 'dump-matrix', 'hierarchy')
FORMATS = ('json', 'csv', 'text')
SPEC_COMMANDS = ('build', 'classify', 'rank', 'verify', 'dump-matrix')


class RunConfig(object):
    """Everything one command invocation needs.

    :param str command: One of `COMMANDS`
    :param str spec_path: Input spec JSON; required by every command except
        ``hierarchy``
    :param str out_path: Output file; stdout when None
    :param str fmt: ``json``, ``csv`` or ``text``; csv applies to ``rank``
    :param int seed: Seed of the product-state search
    :param bool compute_a: Search a-values during ``classify``

    """
    def __init__(self, command, spec_path=None, out_path=None, fmt='json',
                 seed=0, compute_a=False, tol=None, tol_fid=None,
                 certificate_path=None, blocks=False, scenario=None, upto=None):
        if command not in COMMANDS:
            raise ValueError('Unknown command {0!r}'.format(command))
        if fmt not in FORMATS:
            raise ValueError('Unknown format {0!r}'.format(fmt))
        if fmt == 'csv' and command != 'rank':
            raise ValueError('CSV output is only offered for rank tables')
        if command in SPEC_COMMANDS and not spec_path:
            raise ValueError('Command {0!r} needs --spec'.format(command))
        if command == 'verify' and not certificate_path:
            raise ValueError('Command "verify" needs --certificate')
        if command == 'hierarchy' and (scenario is None or upto is None):
            raise ValueError('Command "hierarchy" needs --scenario and --upto')
        self.command = command
        self.spec_path = spec_path
        self.out_path = out_path
        self.fmt = fmt
        self.seed = seed
        self.compute_a = compute_a
        self.tol = tol
        self.tol_fid = tol_fid
        self.certificate_path = certificate_path
        self.blocks = blocks
        self.scenario = scenario
        self.upto = upto

    def classifier(self):
        kwargs = {'seed': self.seed, 'compute_a': self.compute_a}
        if self.tol is not None:
            kwargs['tol'] = self.tol
        if self.tol_fid is not None:
            kwargs['tol_fid'] = self.tol_fid
        return Classifier(**kwargs)

    def __repr__(self):
        return '<RunConfig {0}>'.format(self.command)


def _read(path):
    with open(path) as fp:
        return fp.read()


def _load_spec(config):
    return serialize.parse_input_spec(_read(config.spec_path))


def _build(config):
    spec = _load_spec(config)
    state = fock.mbs_output(spec)
    return serialize.dumps(serialize.state_to_dict(state, normalized=True))


def _format_report(report, fmt):
    if fmt == 'text':
        lines = ['{0} ({1})'.format(report.label, report.status),
                 'fidelity {0!r}'.format(report.fidelity)]
        lines += ['{0}  {1}'.format(key, value)
                  for key, value in report.per_bipartition_ranks.items()]
        if report.a_values is not None:
            lines.append('a-values {0}'.format(report.a_values))
        lines += ['warning: {0}'.format(note) for note in report.warnings]
        return '\n'.join(lines) + '\n'
    return serialize.report_to_json(report)


def _classify(config):
    report = config.classifier().classify(_load_spec(config))
    return _format_report(report, config.fmt)


def _rank(config):
    ranks = config.classifier().ranks(_load_spec(config))
    if config.fmt == 'csv':
        return serialize.ranks_to_csv(ranks)
    if config.fmt == 'text':
        return serialize.ranks_to_text(ranks)
    return serialize.dumps(dict(ranks))


def _verify(config):
    spec = _load_spec(config)
    classifier = config.classifier()
    d = spec.dimension()
    try:
        document = json.loads(_read(config.certificate_path))
    except ValueError as error:
        raise exceptions.SchemaError('Malformed JSON: {0}'.format(error))
    cert = serialize.certificate_from_dict(document)
    state = fock.mbs_output(spec, d)
    target = classifier.representative(spec, d)
    fidelity, ok = verify_equivalence(
        apply_certificate(state, cert), target, classifier.fidelity_tol(spec)
    )
    if not ok:
        raise exceptions.VerificationFailed(
            'Certificate replay reaches fidelity {0!r}'.format(fidelity),
            fidelity=fidelity,
        )
    return serialize.dumps({'fidelity': fidelity, 'ok': ok})


def _dump_matrix(config):
    state = fock.mbs_output(_load_spec(config))
    return coefficient_matrix_view(state).dump(blocks=config.blocks)


def _hierarchy(config):
    chain = class_hierarchy(config.scenario, config.upto)
    if config.fmt == 'text':
        return '{0}\n{1}\n'.format(chain.text, chain.note)
    return serialize.dumps({
        'scenario': chain.scenario,
        'chain': chain.nodes,
        'text': chain.text,
        'note': chain.note,
    })


_handlers = {
    'build': _build,
    'classify': _classify,
    'rank': _rank,
    'verify': _verify,
    'dump-matrix': _dump_matrix,
    'hierarchy': _hierarchy,
}


def run(config, stdout=None):
    """Execute one command and write its artifact.

    :return: Output text
    :raise: MultiportError subclasses from the library

    """
    logger.info('Running %r', config)
    text = _handlers[config.command](config)
    _write(config, text, stdout)
    return text


def _write(config, text, stdout=None):
    if config.out_path:
        with open(config.out_path, 'w') as fp:
            fp.write(text)
    else:
        (stdout or sys.stdout).write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='multiport',
        description='Simulate multiport beam-splitter outputs and classify '
                    'them under invertible local operations.',
    )
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='Debug logging on stderr')
    commands = parser.add_subparsers(dest='command')
    commands.required = True
    for name in COMMANDS:
        sub = commands.add_parser(name)
        if name in SPEC_COMMANDS:
            sub.add_argument('--spec', dest='spec_path', required=True)
        sub.add_argument('--out', dest='out_path')
        sub.add_argument('--format', dest='fmt', choices=FORMATS,
                         default='json')
        sub.add_argument('--seed', type=int, default=0)
        sub.add_argument('--compute-a', dest='compute_a',
                         action='store_true')
        sub.add_argument('--tol', type=float)
        sub.add_argument('--tol-fid', dest='tol_fid', type=float)
        if name == 'verify':
            sub.add_argument('--certificate', dest='certificate_path',
                             required=True)
        if name == 'dump-matrix':
            sub.add_argument('--blocks', action='store_true')
        if name == 'hierarchy':
            sub.add_argument('--scenario', choices=('number', 'cat'),
                             required=True)
            sub.add_argument('--upto', type=int, required=True)
    return parser


def _fail(error, status, stderr):
    stderr.write(json.dumps(error, sort_keys=True) + '\n')
    return status


def main(argv=None, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=stderr,
    )
    options = vars(args)
    options.pop('verbose')
    try:
        config = RunConfig(**options)
    except ValueError as error:
        return _fail({'error': 'ValueError', 'message': str(error)}, 2, stderr)
    try:
        run(config, stdout=stdout)
    except exceptions.SchemaError as error:
        return _fail(error.to_dict(), 2, stderr)
    except exceptions.VerificationFailed as error:
        # the failed report still goes where the artifact would have
        if error.report is not None:
            _write(config, _format_report(error.report, config.fmt), stdout)
        return _fail(error.to_dict(), 1, stderr)
    except exceptions.MultiportError as error:
        return _fail(error.to_dict(), 1, stderr)
    except (IOError, OSError) as error:
        return _fail({'error': error.__class__.__name__,
                      'message': str(error)}, 1, stderr)
    except ValueError as error:
        return _fail({'error': 'ValueError', 'message': str(error)}, 1,
                     stderr)
    return 0


if __name__ == '__main__':
    sys.exit(main())
