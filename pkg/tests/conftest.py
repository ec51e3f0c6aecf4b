"""Shared corpus generators for the property suites.

Random polynomials follow one shape throughout: coefficients are
unit * s^k with a unit from F_p^* and 0 <= k <= 3, entered exactly into
the completed base field.
"""

import random

import pytest

from hypellval.localfield import LocalPolynomial, base_field

CORPUS_PRIMES = (5, 7, 11, 13)


def random_coeff_spec(rng, p, degree):
    """Per-index (unit, k) or None (structural zero); the leading and at
    least one other coefficient are always present."""
    spec = []
    for i in range(degree + 1):
        if i not in (0, degree) and rng.random() < 0.25:
            spec.append(None)
        else:
            spec.append((rng.randrange(1, p), rng.randrange(0, 4)))
    return spec


def spec_to_local_poly(field, spec):
    coeffs = []
    for entry in spec:
        if entry is None:
            coeffs.append(field.zero())
        else:
            unit, k = entry
            coeffs.append(field.monomial(field.residue.from_int(unit), k))
    return LocalPolynomial(field, coeffs)


def make_corpus(seed, count, precision=64):
    """(p, spec) pairs with deg f in [2, min(6, p-1)] so that p > deg f."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = rng.choice(CORPUS_PRIMES)
        degree = rng.randrange(2, min(6, p - 1) + 1)
        out.append((p, random_coeff_spec(rng, p, degree)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return make_corpus(seed=20260823, count=500)


@pytest.fixture(scope="session")
def corpus_fields():
    cache = {}

    def get(p, precision=64):
        key = (p, precision)
        if key not in cache:
            cache[key] = base_field(p, precision)
        return cache[key]

    return get
