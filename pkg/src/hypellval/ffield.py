"""Exact arithmetic and factorization over finite fields F_{p^k}.

Fields are constructed with a deterministic modulus (the lexicographically
least monic irreducible of degree k over F_p, ordered by the base-p integer
code of the coefficient vector), so that equal parameters always give
interchangeable fields.  Elements are coefficient tuples over F_p reduced
mod the modulus; everything is immutable.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import (
    DegreeOutOfRange,
    FieldMismatch,
    NoEmbedding,
    NotPrime,
    ZeroPolynomial,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# bootstrap arithmetic on F_p[t], used to pick and verify the field modulus
# (dense int-list coefficients, index = degree)

def _zp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zp_trim(out)


def _zp_mod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _zp_trim(a)
    return a


def _zp_powmod(a, e, m, p):
    result = [1]
    base = _zp_mod(a, m, p)
    while e:
        if e & 1:
            result = _zp_mod(_zp_mul(result, base, p), m, p)
        base = _zp_mod(_zp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _zp_gcd_clean(a, b, p):
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    while b:
        a, b = b, _zp_mod(a, b, p)
    return a


def _zp_is_irreducible(m, p):
    """Rabin test: m monic of degree k is irreducible over F_p iff
    t^(p^k) == t (mod m) and gcd(t^(p^(k/l)) - t, m) = 1 for primes l | k."""
    k = len(m) - 1
    if k == 1:
        return True
    t = [0, 1]
    for ell in sorted({q for q in range(2, k + 1) if k % q == 0 and is_prime(q)}):
        h = _zp_powmod(t, p ** (k // ell), m, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        _zp_trim(diff)
        if len(_zp_gcd_clean(diff, m, p)) != 1:
            return False
    h = _zp_powmod(t, p ** k, m, p)
    diff = list(h) + [0] * (2 - len(h))
    diff[1] = (diff[1] - 1) % p
    _zp_trim(diff)
    return not diff


@lru_cache(maxsize=None)
def _least_irreducible(p: int, k: int) -> tuple:
    """Monic irreducible of degree k over F_p with least base-p integer code."""
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        m = coeffs + [1]
        if m[0] == 0:
            continue
        if _zp_is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FqField:
    """The finite field F_{p^k} with a canonically chosen modulus."""

    __slots__ = ("p", "k", "modulus")

    def __init__(self, p: int, k: int, modulus: tuple):
        self.p = p
        self.k = k
        self.modulus = modulus

    @property
    def order(self) -> int:
        return self.p ** self.k

    def element(self, coeffs) -> "FqElement":
        c = [x % self.p for x in coeffs]
        c += [0] * (self.k - len(c))
        if len(c) > self.k:
            c = _zp_mod(c, list(self.modulus), self.p)
            c += [0] * (self.k - len(c))
        return FqElement(self, tuple(c))

    def from_int(self, n: int) -> "FqElement":
        return FqElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_code(self, code: int) -> "FqElement":
        coeffs = []
        for _ in range(self.k):
            coeffs.append(code % self.p)
            code //= self.p
        return FqElement(self, tuple(coeffs))

    def zero(self) -> "FqElement":
        return self.from_int(0)

    def one(self) -> "FqElement":
        return self.from_int(1)

    def gen(self) -> "FqElement":
        if self.k == 1:
            return self.one()
        return FqElement(self, (0, 1) + (0,) * (self.k - 2))

    def __iter__(self):
        for code in range(self.order):
            yield self.from_code(code)

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.k}" if self.k > 1 else f"F_{self.p}"


class FqElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def code(self) -> int:
        """Base-p integer encoding; used for canonical ordering."""
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FqElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FqElement(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        if f.k == 1:
            return FqElement(f, ((self.coeffs[0] * other.coeffs[0]) % f.p,))
        prod = _zp_mul(list(self.coeffs), list(other.coeffs), f.p)
        red = _zp_mod(prod, list(f.modulus), f.p)
        red += [0] * (f.k - len(red))
        return FqElement(f, tuple(red))

    def inv(self):
        f = self.field
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if f.k == 1:
            return FqElement(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        # extended Euclid in F_p[t] against the modulus
        p = f.p
        r0, r1 = list(f.modulus), _zp_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, rem = _zp_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _zp_trim(
                [
                    (a - b) % p
                    for a, b in _zip_pad(s0, _zp_mul(q, s1, p))
                ]
            )
        lead_inv = pow(r0[-1], p - 2, p)
        out = [(c * lead_inv) % p for c in s0]
        out += [0] * (f.k - len(out))
        return FqElement(f, tuple(out))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, FqElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        return f"[{','.join(map(str, self.coeffs))}]"


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _zp_divmod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _zp_trim(a)
    return _zp_trim(q), a


# ---------------------------------------------------------------------------


class FqPolynomial:
    """Dense univariate polynomial over an FqField.  coeffs[i] is the t^i
    coefficient; the zero polynomial has an empty coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, field: FqField, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()

    def leading(self) -> FqElement:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FqElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPolynomial(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPolynomial(
            self.field, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return FqPolynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return FqPolynomial(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return FqPolynomial(self.field, out)

    def scale(self, c: FqElement) -> "FqPolynomial":
        return FqPolynomial(self.field, [a * c for a in self.coeffs])

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.leading().inv()
        q = [self.field.zero()] * max(len(rem) - db, 1)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lead
            shift = len(rem) - 1 - db
            q[shift] = c
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * bi
            while rem and rem[-1].is_zero():
                rem.pop()
        return FqPolynomial(self.field, q), FqPolynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "FqPolynomial":
        if self.is_zero():
            return self
        return self.scale(self.leading().inv())

    def derivative(self) -> "FqPolynomial":
        f = self.field
        return FqPolynomial(
            f,
            [f.from_int(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def evaluate(self, x: FqElement) -> FqElement:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_root(self) -> FqElement:
        """For a linear monic polynomial t - beta, return beta."""
        assert self.degree == 1
        return -(self.coeffs[0] * self.coeffs[1].inv())

    def sort_key(self):
        return (self.degree, tuple(c.code() for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, FqPolynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"{c!r}")
            elif i == 1:
                parts.append(f"{c!r}*t" if not _is_one(c) else "t")
            else:
                parts.append(f"{c!r}*t^{i}" if not _is_one(c) else f"t^{i}")
        return " + ".join(parts)


def _is_one(c: FqElement) -> bool:
    return c == c.field.one()


# ---------------------------------------------------------------------------
# public operations


def fq_field_make(p: int, k: int) -> FqField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeOutOfRange(f"extension degree {k} < 1")
    return FqField(p, k, _least_irreducible(p, k))


def fq_poly_gcd(a: FqPolynomial, b: FqPolynomial) -> FqPolynomial:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _powmod(base: FqPolynomial, e: int, mod: FqPolynomial) -> FqPolynomial:
    result = FqPolynomial(base.field, [base.field.one()])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root_poly(f: FqPolynomial) -> FqPolynomial:
    """For f with f' = 0 (so f = r(t)^p), return r."""
    field = f.field
    p = field.p
    exp = field.order // p  # a -> a^(q/p) is the inverse of Frobenius
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(f.coeff(i) ** exp)
    return FqPolynomial(field, coeffs)


def _squarefree_part(f: FqPolynomial) -> FqPolynomial:
    """Monic product of the distinct irreducible factors of f."""
    f = f.monic()
    df = f.derivative()
    if df.is_zero():
        return _squarefree_part(_pth_root_poly(f))
    g = fq_poly_gcd(f, df)
    sf = (f // g).monic()
    # factors of multiplicity divisible by p vanish from f/gcd(f,f');
    # recover them from g
    if g.degree > 0:
        rest = _squarefree_part(g)
        extra = (rest // fq_poly_gcd(rest, sf)).monic()
        if extra.degree > 0:
            sf = sf * extra
    return sf


def _edf_seed(f: FqPolynomial) -> int:
    field = f.field
    data = (field.p, field.k, field.modulus) + tuple(c.coeffs for c in f.coeffs)
    return hash(data) & 0x7FFFFFFF


def _equal_degree_split(f: FqPolynomial, d: int, rng: random.Random) -> list:
    """Cantor-Zassenhaus: f squarefree monic, all factors of degree d."""
    field = f.field
    if f.degree == d:
        return [f]
    q = field.order
    while True:
        a = FqPolynomial(
            field,
            [field.from_code(rng.randrange(q)) for _ in range(f.degree)],
        )
        if a.degree < 1:
            continue
        if q % 2 == 1:
            b = _powmod(a, (q ** d - 1) // 2, f)
            b = b - FqPolynomial(field, [field.one()])
        else:
            # trace map splitting for characteristic 2
            b = FqPolynomial(field, [])
            t = a % f
            for _ in range(d * field.k):
                b = (b + t) % f
                t = (t * t) % f
        g = fq_poly_gcd(b, f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(
                (f // g).monic(), d, rng
            )


def _factor_squarefree(f: FqPolynomial) -> list:
    """Distinct-degree then equal-degree factorization of a squarefree monic f."""
    field = f.field
    q = field.order
    rng = random.Random(_edf_seed(f))
    out = []
    t = FqPolynomial(field, [field.zero(), field.one()])
    h = t
    d = 0
    rem = f
    while rem.degree > 2 * (d + 1) - 1 and rem.degree > 0:
        d += 1
        h = _powmod(h, q, rem)
        g = fq_poly_gcd(h - t, rem)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            rem = (rem // g).monic()
            h = h % rem
    if rem.degree > 0:
        out.append(rem)
    return out


def fq_factor(f: FqPolynomial) -> list:
    """Full factorization: list of (monic irreducible, multiplicity), sorted
    canonically; lc(f) * prod q_i^{m_i} = f."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree < 1:
        raise ZeroPolynomial("cannot factor a constant polynomial")
    work = f.monic()
    factors = []
    sf = _squarefree_part(work)
    for q in _factor_squarefree(sf):
        m = 0
        while True:
            quo, rem = divmod(work, q)
            if not rem.is_zero():
                break
            work = quo
            m += 1
        factors.append((q, m))
    assert work.degree == 0
    factors.sort(key=lambda qm: qm[0].sort_key())
    return factors


def fq_purely_inseparable_profile(f: FqPolynomial):
    """Return (beta, r) iff f = lc * (t - beta)^r, i.e. f has a single
    distinct root of full multiplicity; None otherwise."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if f.degree < 1:
        return None
    factors = fq_factor(f)
    if len(factors) == 1 and factors[0][0].degree == 1:
        q, r = factors[0]
        return q.shift_root(), r
    return None


class Embedding:
    """Field homomorphism F_{p^j} -> F_{p^k} (j | k), determined by sending
    the source generator to the least root of the source modulus."""

    __slots__ = ("src", "dst", "_gen_image")

    def __init__(self, src: FqField, dst: FqField, gen_image: FqElement):
        self.src = src
        self.dst = dst
        self._gen_image = gen_image

    def __call__(self, x: FqElement) -> FqElement:
        if x.field != self.src:
            raise FieldMismatch("element not in the embedding source field")
        acc = self.dst.zero()
        for c in reversed(x.coeffs):
            acc = acc * self._gen_image + self.dst.from_int(c)
        return acc

    def map_poly(self, f: FqPolynomial) -> FqPolynomial:
        return FqPolynomial(self.dst, [self(c) for c in f.coeffs])


def fq_embed(src: FqField, dst: FqField) -> Embedding:
    if src.p != dst.p or dst.k % src.k != 0:
        raise NoEmbedding(f"no embedding {src} -> {dst}")
    if src == dst:
        return Embedding(src, dst, dst.gen())
    if src.k == 1:
        return Embedding(src, dst, dst.one())
    mod_in_dst = FqPolynomial(
        dst, [dst.from_int(c) for c in src.modulus]
    )
    roots = [q.shift_root() for q, _ in fq_factor(mod_in_dst) if q.degree == 1]
    if not roots:
        raise NoEmbedding(f"source modulus has no root in {dst}")  # unreachable
    roots.sort(key=lambda r: r.code())
    return Embedding(src, dst, roots[0])


def find_root_in(q: FqPolynomial, dst: FqField, emb: Embedding) -> FqElement:
    """Least root in dst of an irreducible q over the embedding source field."""
    q_dst = emb.map_poly(q)
    roots = [g.shift_root() for g, _ in fq_factor(q_dst) if g.degree == 1]
    if not roots:
        raise NoEmbedding("polynomial has no root in target field")
    roots.sort(key=lambda r: r.code())
    return roots[0]
