import json


def number_spec(coefficients, modes=3, **extra):
    document = {
        'modes': modes,
        'input': {
            'type': 'number',
            'coefficients': [[float(c.real), float(c.imag)]
                             for c in map(complex, coefficients)],
        },
    }
    document.update(extra)
    return document


def _terms(terms):
    return [
        {'c': [float(complex(c).real), float(complex(c).imag)],
         'alpha': [float(complex(a).real), float(complex(a).imag)]}
        for c, a in terms
    ]


def cat_spec(terms, modes=3, **extra):
    document = {
        'modes': modes,
        'input': {'type': 'cat', 'terms': _terms(terms)},
    }
    document.update(extra)
    return document


def hybrid_spec(coefficients, terms, modes=3, **extra):
    number = number_spec(coefficients)['input']
    document = {
        'modes': modes,
        'input': {
            'type': 'hybrid',
            'number': {'coefficients': number['coefficients']},
            'cat': {'terms': _terms(terms)},
        },
    }
    document.update(extra)
    return document


def dumps(document):
    return json.dumps(document)


# |1, 0, 0> through a balanced tritter: the W state
w_spec = number_spec([0, 1], modes=3)

# Two-term cat: GHZ class with two terms
ghz2_spec = cat_spec([(1, 1.2), (1, -1.2)], modes=3)

ghz3_spec = cat_spec([(1, 1.5), (1, -1.5), (1, 1.5j)], modes=3)

hybrid_spec_11 = hybrid_spec([1, 1], [(1, 1.0)], modes=3)
