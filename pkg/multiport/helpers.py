"""
Miscellaneous helper functions
"""

import math
import numbers

import numpy as np
from scipy.special import gammaln


def multinomial(counts):
    """Exact multinomial coefficient (n_1 + ... + n_m)! / (n_1! ... n_m!).

    :param counts: Iterable of non-negative integers
    :return: Python integer

    """
    out = 1
    total = 0
    for count in counts:
        total += count
        out *= math.comb(total, count)
    return out


def log_factorial(n):
    """Elementwise log(n!) for scalars or integer arrays."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def shell_mask(m, d, n):
    """Boolean mask (shape (d,) * m) of the multi-indices with total n."""
    return np.indices((d,) * m).sum(axis=0) == n


def coherent_overlap(alpha, beta):
    """<alpha|beta> for untruncated coherent states."""
    alpha = complex(alpha)
    beta = complex(beta)
    return np.exp(
        -abs(alpha) ** 2 / 2.0 - abs(beta) ** 2 / 2.0 + alpha.conjugate() * beta
    )


def number_coherent_overlap(n, alpha):
    """<n|alpha> for an untruncated coherent state."""
    alpha = complex(alpha)
    if n == 0:
        return np.exp(-abs(alpha) ** 2 / 2.0)
    if alpha == 0:
        return 0j
    return np.exp(
        -abs(alpha) ** 2 / 2.0 + n * np.log(alpha) - 0.5 * log_factorial(n)
    )


def ensure_complex(value):
    """Coerce a scalar or an [re, im] pair to a Python complex.

    :param value: Number, complex, or two-element sequence
    :return: complex
    :raise: ValueError if the value cannot be read as a complex number

    """
    if isinstance(value, numbers.Number) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(
            isinstance(part, numbers.Real) and not isinstance(part, bool)
            for part in (re, im)
        ):
            return complex(float(re), float(im))
    raise ValueError('Cannot read {0!r} as a complex number'.format(value))


def ensure_complex_list(values):
    """Coerce a sequence of scalars or [re, im] pairs to a complex array."""
    return np.array(
        [ensure_complex(value) for value in values],
        dtype=complex,
    )


def complex_pair(value):
    """Inverse of `ensure_complex` for serialization: [re, im] floats."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def format_complex(value, digits=12):
    """Text form ``re+imj`` used by the matrix dump format."""
    value = complex(value)
    return '{0:.{2}g}{1:+.{2}g}j'.format(value.real, value.imag, digits)
