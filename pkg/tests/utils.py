import math

import numpy as np
from scipy import linalg

from multiport.tensor import ModeTensor


def multinomial_oracle(counts):
    """Multinomial coefficient from plain factorials."""
    counts = list(counts)
    out = math.factorial(sum(counts))
    for count in counts:
        out //= math.factorial(count)
    return out


def random_complex(rng, size=None):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_coefficients(rng, N, floor=1e-3):
    """Random c_0 .. c_N with |c_N| >= floor."""
    c = random_complex(rng, N + 1)
    while abs(c[-1]) < floor:
        c[-1] = random_complex(rng)
    return c


def random_alphas(rng, r, radius=2.0, separation=0.5):
    """r points in the disc |alpha| <= radius, pairwise at least
    `separation` apart.

    """
    alphas = []
    while len(alphas) < r:
        candidate = radius * np.sqrt(rng.uniform()) * np.exp(
            2j * np.pi * rng.uniform()
        )
        if all(abs(candidate - other) >= separation for other in alphas):
            alphas.append(candidate)
    return np.array(alphas)


def random_invertible(rng, d, spread=2.0):
    """Random d x d matrix with singular values in [1/spread, spread]."""
    left, _ = linalg.qr(random_complex(rng, (d, d)))
    right, _ = linalg.qr(random_complex(rng, (d, d)))
    singular = np.exp(rng.uniform(-np.log(spread), np.log(spread), d))
    return left.dot(np.diag(singular)).dot(right)


def random_state(rng, m, d):
    return ModeTensor(random_complex(rng, (d,) * m)).normalize()


def ghz(r, m, d=None):
    d = r if d is None else d
    amp = np.zeros((d,) * m, dtype=complex)
    for level in range(r):
        amp[(level,) * m] = 1.0
    return ModeTensor(amp)
