import random
from fractions import Fraction

import numpy as np
import pytest


def rand_fraction(rng: random.Random, lo=-9, hi=9, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def companion_real_root_count(coeffs_low_first, tol=1e-9) -> int:
    """Float oracle: distinct real roots of a square-free polynomial via the
    companion matrix, with a Newton polish before the imaginary-part test."""
    cs = [float(c) for c in coeffs_low_first]
    while cs and cs[-1] == 0.0:
        cs.pop()
    if len(cs) <= 1:
        return 0
    poly = np.polynomial.Polynomial(cs)
    deriv = poly.deriv()
    roots = np.roots(list(reversed(cs)))
    count = 0
    for r in roots:
        z = complex(r)
        for _ in range(6):
            dz = deriv(z)
            if dz == 0:
                break
            z = z - poly(z) / dz
        if abs(z.imag) < tol:
            count += 1
    return count


@pytest.fixture
def rng():
    return random.Random(20260810)
