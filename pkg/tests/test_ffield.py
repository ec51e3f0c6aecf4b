"""Finite fields: construction, arithmetic axioms, factorization against a
trial-division oracle, embeddings."""

import random

import pytest

from hypellval.errors import NotPrime, ZeroPolynomial
from hypellval.ffield import (
    Embedding,
    FqPolynomial,
    fq_embed,
    fq_factor,
    fq_field_make,
    fq_poly_gcd,
    fq_purely_inseparable_profile,
    find_root_in,
    is_prime,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
    for n in range(2, 25):
        assert is_prime(n) == (n in primes)
    assert not is_prime(1)
    assert not is_prime(0)


def test_field_make_rejects_composite():
    with pytest.raises(NotPrime):
        fq_field_make(6, 1)


def test_canonical_modulus_f49():
    # least monic irreducible of degree 2 over F_7 in base-7 code order
    f49 = fq_field_make(7, 2)
    assert f49.modulus == (1, 0, 1)  # t^2 + 1


def test_canonical_modulus_deterministic():
    for p, k in [(2, 3), (3, 2), (5, 2), (7, 3), (13, 2)]:
        a = fq_field_make(p, k)
        b = fq_field_make(p, k)
        assert a.modulus == b.modulus
        # really irreducible: no roots for degree 2/3 moduli
        mod_poly = FqPolynomial.from_ints(a, list(a.modulus))
        # evaluate over the prime subfield embedded as constants: enough to
        # check the modulus has no linear factor over F_p by brute force
        fp = fq_field_make(p, 1)
        mp = FqPolynomial.from_ints(fp, list(a.modulus))
        assert all(not mp.evaluate(fp.from_int(c)).is_zero() for c in range(p))
        assert mod_poly.degree == k


def test_element_arithmetic_axioms():
    rng = random.Random(101)
    for p, k in [(2, 1), (7, 1), (7, 2), (3, 3), (5, 2)]:
        field = fq_field_make(p, k)
        q = field.order
        for _ in range(200):
            a = field.from_code(rng.randrange(q))
            b = field.from_code(rng.randrange(q))
            c = field.from_code(rng.randrange(q))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a - a == field.zero()
            if not a.is_zero():
                assert a * a.inv() == field.one()
        # Frobenius fixed field / Fermat
        for code in range(min(q, 60)):
            a = field.from_code(code)
            assert a ** q == a


def test_polynomial_divmod_roundtrip():
    rng = random.Random(202)
    field = fq_field_make(7, 2)
    for _ in range(100):
        a = FqPolynomial(
            field, [field.from_code(rng.randrange(49)) for _ in range(rng.randrange(1, 8))]
        )
        b = FqPolynomial(
            field, [field.from_code(rng.randrange(49)) for _ in range(rng.randrange(1, 5))]
        )
        if b.is_zero():
            continue
        quo, rem = divmod(a, b)
        assert quo * b + rem == a
        assert rem.degree < b.degree or rem.is_zero()


def _oracle_factor_low_degree(f):
    """Trial division by linear factors; valid as a full factorization
    oracle for deg <= 3 (a nonlinear remainder without roots is
    irreducible)."""
    field = f.field
    assert f.degree <= 3
    work = f.monic()
    out = {}
    for elem in field:
        root_poly = FqPolynomial(field, [-elem, field.one()])
        while work.degree >= 1:
            quo, rem = divmod(work, root_poly)
            if not rem.is_zero():
                break
            work = quo
            out[root_poly] = out.get(root_poly, 0) + 1
    if work.degree >= 1:
        out[work] = 1
    return sorted(out.items(), key=lambda qm: qm[0].sort_key())


def test_factor_matches_trial_division_low_degree():
    rng = random.Random(303)
    fields = [fq_field_make(2, 1), fq_field_make(7, 1), fq_field_make(3, 2),
              fq_field_make(5, 1), fq_field_make(2, 3)]
    checked = 0
    for _ in range(300):
        field = rng.choice(fields)
        deg = rng.randrange(1, 4)
        coeffs = [field.from_code(rng.randrange(field.order)) for _ in range(deg)]
        coeffs.append(field.from_code(rng.randrange(1, field.order)))
        f = FqPolynomial(field, coeffs)
        assert fq_factor(f) == _oracle_factor_low_degree(f)
        checked += 1
    assert checked == 300


def test_factor_reconstruction_random():
    rng = random.Random(404)
    fields = [fq_field_make(2, 1), fq_field_make(7, 1), fq_field_make(7, 3),
              fq_field_make(3, 2), fq_field_make(5, 3), fq_field_make(2, 8)]
    for _ in range(250):
        field = rng.choice(fields)
        deg = rng.randrange(1, 9)
        coeffs = [field.from_code(rng.randrange(field.order)) for _ in range(deg)]
        coeffs.append(field.from_code(rng.randrange(1, field.order)))
        f = FqPolynomial(field, coeffs)
        factors = fq_factor(f)
        prod = FqPolynomial(field, [f.leading()])
        total_deg = 0
        for q, m in factors:
            assert q.leading() == field.one()
            total_deg += q.degree * m
            for _ in range(m):
                prod = prod * q
        assert total_deg == f.degree
        assert prod == f


def test_factor_known_example():
    f7 = fq_field_make(7, 1)
    f = FqPolynomial.from_ints(f7, [2, 1, 0, 1])  # t^3 + t + 2
    factors = fq_factor(f)
    assert [(list(c.coeffs for c in q.coeffs), m) for q, m in factors] == [
        ([(1,), (1,)], 1),   # t + 1
        ([(3,), (1,)], 2),   # (t + 3)^2
    ]


def test_factor_determinism():
    field = fq_field_make(13, 1)
    rng = random.Random(505)
    for _ in range(30):
        coeffs = [field.from_int(rng.randrange(13)) for _ in range(6)] + [field.one()]
        f = FqPolynomial(field, coeffs)
        assert fq_factor(f) == fq_factor(f)


def test_factor_rejects_constants():
    field = fq_field_make(7, 1)
    with pytest.raises(ZeroPolynomial):
        fq_factor(FqPolynomial(field, []))
    with pytest.raises(ZeroPolynomial):
        fq_factor(FqPolynomial.from_ints(field, [3]))


def test_repeated_factor_multiplicity_p():
    # (t+1)^7 over F_7 has zero derivative; the p-th root path must find it
    field = fq_field_make(7, 1)
    lin = FqPolynomial.from_ints(field, [1, 1])
    f = FqPolynomial(field, [field.one()])
    for _ in range(7):
        f = f * lin
    assert fq_factor(f) == [(lin, 7)]


def test_purely_inseparable_profile():
    field = fq_field_make(7, 1)
    lin = FqPolynomial.from_ints(field, [-3, 1])
    f = lin * lin * lin
    beta, r = fq_purely_inseparable_profile(f)
    assert (beta, r) == (field.from_int(3), 3)
    g = FqPolynomial.from_ints(field, [2, 1, 0, 1])
    assert fq_purely_inseparable_profile(g) is None


def test_embedding_is_homomorphism():
    rng = random.Random(606)
    src = fq_field_make(3, 2)
    dst = fq_field_make(3, 4)
    emb = fq_embed(src, dst)
    for _ in range(150):
        a = src.from_code(rng.randrange(9))
        b = src.from_code(rng.randrange(9))
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
    assert emb(src.one()) == dst.one()
    # injective on a full sweep of the small source
    images = {emb(src.from_code(c)).code() for c in range(9)}
    assert len(images) == 9


def test_find_root_in_extension():
    fp = fq_field_make(7, 1)
    f49 = fq_field_make(7, 2)
    emb = fq_embed(fp, f49)
    q = FqPolynomial.from_ints(fp, [1, 0, 1])  # t^2 + 1, irreducible over F_7
    root = find_root_in(q, f49, emb)
    assert (root * root + f49.one()).is_zero()
    # least root is chosen: deterministic
    assert root == find_root_in(q, f49, emb)


def test_poly_gcd_oracle():
    rng = random.Random(707)
    field = fq_field_make(5, 1)
    for _ in range(100):
        g = FqPolynomial(
            field, [field.from_int(rng.randrange(5)) for _ in range(2)] + [field.one()]
        )
        a = g * FqPolynomial.from_ints(field, [rng.randrange(5), 1])
        b = g * FqPolynomial.from_ints(field, [rng.randrange(5), 2, 1])
        got = fq_poly_gcd(a, b)
        # gcd must divide both and be divisible by g
        assert (a % got).is_zero() and (b % got).is_zero()
        assert (got % fq_poly_gcd(got, g.monic())).is_zero()
