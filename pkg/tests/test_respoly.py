"""Residue polynomials: worked examples, degree bound, constant term, and
multiplicity-profile invariance under unit rescalings of c_S."""

import random

import pytest

from hypellval.errors import EmptyHull, InternalInconsistency
from hypellval.localfield import LocalPolynomial, base_field, from_rational_function
from hypellval.newton import critical_segments
from hypellval.respoly import build_residue_poly, mult_profile

from conftest import spec_to_local_poly


def _poly(field, pairs):
    coeffs = []
    for pr in pairs:
        if pr is None:
            coeffs.append(field.zero())
        else:
            coeffs.append(from_rational_function(field, pr[0], pr[1]))
    return LocalPolynomial(field, coeffs)


def _ints(q):
    return [c.coeffs[0] for c in q.coeffs]


def test_elliptic_respoly():
    field = base_field(7, 32)
    f = _poly(field, [([2, 1], [1]), ([1], [1]), None, ([1], [1])])
    (sd,) = critical_segments(f, "all")
    rp = build_residue_poly(f, sd)
    # unit-proportional to t^3 + t + 2: computed as 1 + 4t + 4t^3
    assert _ints(rp.poly) == [1, 4, 0, 4]
    assert [(_ints(q), m) for q, m in rp.factor_list()] == [
        ([1, 1], 1),
        ([3, 1], 2),
    ]
    assert rp.mult_profile == (1, 2)
    assert rp.max_mult == 2


def test_ramified_respoly():
    field = base_field(7, 32)
    f = _poly(field, [([0, -1], [1]), None, ([1], [1])])  # X^2 - s
    (sd,) = critical_segments(f, "all")
    rp = build_residue_poly(f, sd)
    assert _ints(rp.poly) == [1, 6]  # 1 - t
    assert rp.exponents == {0: 0, 1: 1}
    assert rp.mult_profile == (1,)


def test_case_a_shape_respoly():
    field = base_field(7, 32)
    f = _poly(field, [([1, 1], [1]), ([-2], [1]), ([1], [1])])
    (sd,) = critical_segments(f, "all")
    rp = build_residue_poly(f, sd)
    assert _ints(rp.poly) == [1, 5, 1]  # (t - 1)^2 up to the unit normalization
    assert [(_ints(q), m) for q, m in rp.factor_list()] == [([6, 1], 2)]


def test_wrong_c_is_rejected():
    field = base_field(7, 32)
    f = _poly(field, [([0, -1], [1]), None, ([1], [1])])
    (sd,) = critical_segments(f, "all")
    with pytest.raises(InternalInconsistency):
        build_residue_poly(f, sd, c=field.uniformizer(3))


def test_corpus_degree_bound_and_invariance(corpus, corpus_fields):
    """Criterion-3 properties over the 500-polynomial corpus."""
    rng = random.Random(99)
    built = 0
    for p, spec in corpus:
        field = corpus_fields(p, 16)
        f = spec_to_local_poly(field, spec)
        try:
            segs = critical_segments(f, "all")
        except EmptyHull:
            continue
        for sd in segs:
            rp = build_residue_poly(f, sd)
            built += 1
            expected_deg = (sd.S[-1] - sd.S[0]) // sd.eS
            assert rp.poly.degree == expected_deg <= sd.S[-1]
            assert rp.poly.coeff(0) == field.residue.one()
            profile = rp.mult_profile
            for _ in range(20):
                digits = [field.residue.from_int(rng.randrange(1, p))]
                digits += [
                    field.residue.from_int(rng.randrange(p))
                    for _ in range(rng.randrange(0, 3))
                ]
                unit = field.make(0, digits, None)
                rp2 = build_residue_poly(f, sd, c=sd.cS * unit)
                assert mult_profile(rp2)[1] and rp2.mult_profile == profile
    assert built >= 400  # the corpus overwhelmingly has at least one segment
