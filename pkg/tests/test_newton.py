"""Newton hull segments against the brute-force slope oracle."""

from fractions import Fraction

import pytest

from hypellval.errors import EmptyHull, PrecisionExhausted
from hypellval.localfield import LocalPolynomial, base_field, from_rational_function
from hypellval.newton import critical_segments, s_of_mu

from conftest import spec_to_local_poly


def _poly(field, pairs):
    """pairs: list of (numerator ints, denominator ints) or None."""
    coeffs = []
    for pr in pairs:
        if pr is None:
            coeffs.append(field.zero())
        else:
            coeffs.append(from_rational_function(field, pr[0], pr[1]))
    return LocalPolynomial(field, coeffs)


def test_elliptic_example_segment():
    field = base_field(7, 32)
    f = _poly(field, [([2, 1], [1]), ([1], [1]), None, ([1], [1])])
    segs = critical_segments(f, "all")
    assert len(segs) == 1
    sd = segs[0]
    assert sd.S == (0, 1, 3)
    assert sd.mu == 0
    assert sd.eS == 1
    assert sd.cS.lead == 0


def test_ramified_segment():
    field = base_field(7, 32)
    f = _poly(field, [([0, -1], [1]), None, ([1], [1])])  # X^2 - s
    segs = critical_segments(f, "all")
    assert len(segs) == 1
    sd = segs[0]
    assert sd.S == (0, 2)
    assert sd.mu == Fraction(1, 2)
    assert sd.eS == 2
    assert sd.cS.lead == -1


def test_two_segments_ordered_by_mu():
    field = base_field(7, 32)
    # valuations 2, 0, 0 at indices 0, 1, 2: segments mu = 2 and mu = 0
    f = _poly(field, [([0, 0, 3], [1]), ([1], [1]), ([2], [1])])
    segs = critical_segments(f, "all")
    assert [sd.mu for sd in segs] == [0, 2]
    assert segs[0].S == (1, 2)
    assert segs[1].S == (0, 1)


def test_positive_only_filter():
    field = base_field(7, 32)
    f = _poly(field, [([0, 0, 3], [1]), ([1], [1]), ([2], [1])])
    segs = critical_segments(f, "positiveOnly")
    assert [sd.mu for sd in segs] == [2]


def test_empty_hull():
    field = base_field(7, 32)
    f = _poly(field, [None, None, ([1], [1])])  # X^2 only
    with pytest.raises(EmptyHull):
        critical_segments(f, "all")


def test_indeterminate_above_hull_is_tolerated():
    field = base_field(7, 16)
    one = field.one()
    f = LocalPolynomial(field, [one, field.approx_zero(10), one])
    segs = critical_segments(f, "all")
    assert len(segs) == 1 and segs[0].S == (0, 2)


def test_indeterminate_on_hull_raises():
    field = base_field(7, 16)
    one = field.one()
    f = LocalPolynomial(field, [one, field.approx_zero(0), one])
    with pytest.raises(PrecisionExhausted):
        critical_segments(f, "all")


def test_indeterminate_outside_span_raises():
    field = base_field(7, 16)
    one = field.one()
    f = LocalPolynomial(field, [field.approx_zero(12), one, one])
    with pytest.raises(PrecisionExhausted):
        critical_segments(f, "all")


def test_hull_matches_slope_oracle_on_corpus(corpus, corpus_fields):
    """Every reported slope has the reported S by brute force, and no other
    rational slope a/b with |a|, b <= 12 achieves |S| >= 2."""
    rational_slopes = sorted(
        {Fraction(a, b) for b in range(1, 13) for a in range(-12, 13)}
    )
    for p, spec in corpus:
        field = corpus_fields(p)
        f = spec_to_local_poly(field, spec)
        try:
            segs = critical_segments(f, "all")
        except EmptyHull:
            segs = []
        reported = {sd.mu: sd.S for sd in segs}
        for mu, S in reported.items():
            assert s_of_mu(f, mu) == S
        for mu in rational_slopes:
            if mu in reported:
                continue
            assert len(s_of_mu(f, mu)) < 2, (p, spec, mu)


def test_segment_spacing_divides():
    field = base_field(7, 32)
    # indices 0 and 4 at valuations 0 and 2: slope -1/2, eS = 2, d = 4
    f = _poly(field, [([1], [1]), None, None, None, ([0, 0, 1], [1])])
    (sd,) = critical_segments(f, "all")
    assert sd.S == (0, 4)
    assert sd.eS == 2
    assert sd.d % sd.eS == 0
