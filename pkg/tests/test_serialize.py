import json
import unittest

import numpy as np
from numpy import testing

from multiport import fock
from multiport import serialize
from multiport import exceptions
from multiport.classifier import Classifier
from multiport.operators.local import apply_certificate, verify_equivalence
from tests import fixtures


class TestParseInputSpec(unittest.TestCase):

    def test_number(self):
        spec = serialize.parse_input_spec(fixtures.dumps(fixtures.w_spec))
        assert spec.kind == 'number'
        assert spec.modes == 3
        testing.assert_array_equal(spec.number.coefficients, [0, 1])

    def test_cat(self):
        spec = serialize.parse_input_spec(fixtures.dumps(fixtures.ghz2_spec))
        assert spec.kind == 'cat'
        testing.assert_array_equal(spec.cat.alphas, [1.2, -1.2])

    def test_hybrid(self):
        spec = serialize.parse_input_spec(
            fixtures.dumps(fixtures.hybrid_spec_11)
        )
        assert (spec.number.N, spec.cat.r) == (1, 1)
        assert spec.cutoff == 'auto'
        assert spec.dimension() >= 3

    def test_overrides(self):
        document = fixtures.number_spec([1, 1], cutoff=4, tolerance=1e-6)
        spec = serialize.spec_from_dict(document)
        assert spec.dimension() == 4
        assert spec.tolerance == 1e-6

    def test_trailing_zeros(self):
        document = fixtures.number_spec([1, 1, 0])
        with self.assertLogs('multiport.fock', 'WARNING'):
            spec = serialize.spec_from_dict(document)
        assert spec.number.N == 1

    def test_duplicate_alphas(self):
        document = fixtures.cat_spec([(1, 0.5), (2, 0.5)])
        with self.assertRaises(exceptions.CoincidentCoherentAmplitudes):
            serialize.spec_from_dict(document)
        with self.assertRaises(exceptions.InvariantError):
            serialize.spec_from_dict(document)

    def test_malformed_json(self):
        with self.assertRaises(exceptions.SchemaError):
            serialize.parse_input_spec('{"modes": ')

    def test_missing_input(self):
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict({'modes': 3})
        assert raised.exception.pointer == ''

    def test_bad_modes(self):
        document = dict(fixtures.w_spec, modes=1)
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/modes'

    def test_bad_cutoff(self):
        document = dict(fixtures.w_spec, cutoff=0)
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/cutoff'

    def test_bad_coefficient(self):
        document = fixtures.number_spec([1, 1])
        document['input']['coefficients'][1] = 'one'
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/input/coefficients/1'

    def test_bad_type(self):
        document = fixtures.number_spec([1])
        document['input']['type'] = 'squeezed'
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/input/type'

    def test_missing_alpha(self):
        document = fixtures.cat_spec([(1, 0.5)])
        del document['input']['terms'][0]['alpha']
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/input/terms/0'

    def test_hybrid_pointer(self):
        document = fixtures.hybrid_spec([1, 1], [(1, 1.0)])
        document['input']['number']['coefficients'][0] = [1, 2, 3]
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.spec_from_dict(document)
        assert raised.exception.pointer == '/input/number/coefficients/0'

    def test_error_dict(self):
        error = exceptions.SchemaError('bad', pointer='/modes')
        assert error.to_dict() == {'error': 'SchemaError', 'message': 'bad',
                                   'pointer': '/modes'}


class TestReports(unittest.TestCase):

    def setUp(self):
        self.spec = serialize.spec_from_dict(fixtures.number_spec([1, 1]))
        self.report = Classifier().classify(self.spec)

    def test_report_fields(self):
        document = serialize.report_to_dict(self.report)
        assert document['status'] == 'success'
        assert document['label'] == 'C1'
        assert document['class'] == {'variant': 'C', 'N': 1}
        assert document['schmidt_rank'] == 2
        assert document['schmidt_ranks'] == {'1|2,3': 2, '1,2|3': 2,
                                             '1,3|2': 2}
        assert 'a_values' not in document

    def test_json_is_deterministic(self):
        assert serialize.report_to_json(self.report) == \
            serialize.report_to_json(Classifier().classify(self.spec))

    def test_certificate_round_trip(self):
        text = serialize.report_to_json(self.report)
        cert = serialize.certificate_from_dict(json.loads(text))
        d = self.spec.dimension()
        fidelity, _ = verify_equivalence(
            apply_certificate(fock.mbs_output(self.spec, d), cert),
            self.report.representative,
        )
        assert abs(fidelity - self.report.fidelity) < 1e-12
        assert [op.label for _, op in cert] == \
            [op.label for _, op in self.report.certificate]

    def test_bare_certificate(self):
        document = serialize.certificate_to_dict(self.report.certificate)
        cert = serialize.certificate_from_dict(document)
        assert len(cert) == len(self.report.certificate)
        assert cert.global_scalar == self.report.certificate.global_scalar

    def test_certificate_bad_matrix(self):
        document = serialize.certificate_to_dict(self.report.certificate)
        document['steps'][0]['matrix'][0][0] = 'x'
        with self.assertRaises(exceptions.SchemaError) as raised:
            serialize.certificate_from_dict(document)
        assert raised.exception.pointer == '/steps/0/matrix/0/0'


class TestStatesAndTables(unittest.TestCase):

    def test_state(self):
        document = serialize.state_to_dict(fock.number_mbs_output(1, 3, 2))
        assert document['normalized']
        assert [entry['index'] for entry in document['amplitudes']] == \
            [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        value = document['amplitudes'][0]['value']
        testing.assert_allclose(value, [1 / np.sqrt(3), 0])

    def test_csv(self):
        text = serialize.ranks_to_csv({'1|2': 2})
        assert text == 'bipartition,rank\n1|2,2\n'

    def test_text(self):
        text = serialize.ranks_to_text({'1|2,3': 2, '1,2|3': 3})
        assert text.splitlines() == ['1|2,3  2', '1,2|3  3']
