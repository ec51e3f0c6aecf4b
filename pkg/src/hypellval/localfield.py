"""Truncated uniformizer-adic series arithmetic in F_p((s)) and its tame
tower extensions.

A field in the tower is described by its residue field, its absolute
ramification index e_abs over F_p((s)) and the list of extension steps that
built it.  Internally every valuation is an integer multiple of 1/e_abs and
the current uniformizer PI has internal value 1; the absolute value of an
element is lead/e_abs.

All computation happens over the COMPLETION of the base field (and of each
extension).  Residue fields lift into the series as constants (equal
characteristic), so unramified steps act digitwise and tamely ramified
steps only re-expand the old uniformizer as a series in the new one.

Elements track what they know: `known_to` is an absolute digit position
(exclusive) up to which the expansion is certain, or None when the
expansion is exact (terminating).  An element whose known digits are all
zero but which is not tracked as exactly zero has an indeterminate
valuation; asking for it raises PrecisionExhausted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NegativeValuation,
    NotIrreducible,
    NotPrime,
    NotPrimitive,
    NotSimpleRoot,
    OrderMismatch,
    PrecisionExhausted,
    PrecisionTooSmall,
    WildRamification,
)
from .ffield import (
    FqElement,
    FqField,
    FqPolynomial,
    fq_embed,
    fq_factor,
    fq_field_make,
    find_root_in,
    is_prime,
)

MIN_PRECISION = 8


def _min_known(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class UnramifiedStep:
    __slots__ = ("q", "emb", "root")

    def __init__(self, q, emb, root):
        self.q = q          # irreducible FqPolynomial over the old residue field
        self.emb = emb      # residue-field embedding old -> new
        self.root = root    # chosen root of q in the new residue field

    kind = "unramified"


class KummerStep:
    __slots__ = ("e", "bezout", "pi_old_image")

    def __init__(self, e, bezout, pi_old_image):
        self.e = e                      # ramification order of this step
        self.bezout = bezout            # (x, y) with x*M + y*e = 1, x >= 0 minimal
        self.pi_old_image = pi_old_image  # old uniformizer as a new-field element

    kind = "kummer"


class LocalFieldDescriptor:
    __slots__ = ("p", "residue", "e_abs", "steps", "precision_cap")

    def __init__(self, p, residue, e_abs, steps, precision_cap):
        self.p = p
        self.residue = residue
        self.e_abs = e_abs
        self.steps = steps
        self.precision_cap = precision_cap

    # --- element constructors -------------------------------------------

    def make(self, lead, digits, known_to):
        """Normalize and build an element; strips leading zero digits and
        enforces the precision cap."""
        digits = list(digits)
        if known_to is not None and known_to - lead < len(digits):
            digits = digits[: max(known_to - lead, 0)]
        while digits and digits[0].is_zero():
            digits.pop(0)
            lead += 1
        if not digits:
            if known_to is None:
                return LocalElement(self, 0, (), None, True)
            return LocalElement(self, 0, (), known_to, False)
        if known_to is None:
            while digits and digits[-1].is_zero():
                digits.pop()
            if len(digits) > self.precision_cap:
                digits = digits[: self.precision_cap]
                known_to = lead + self.precision_cap
        else:
            known_to = min(known_to, lead + len(digits), lead + self.precision_cap)
            digits = digits[: known_to - lead]
            # re-normalize in case the cap cut everything
            while digits and digits[0].is_zero():
                digits.pop(0)
                lead += 1
            if not digits:
                return LocalElement(self, 0, (), known_to, False)
        return LocalElement(self, lead, tuple(digits), known_to, False)

    def zero(self):
        return LocalElement(self, 0, (), None, True)

    def one(self):
        return self.make(0, [self.residue.one()], None)

    def lift(self, r: FqElement):
        if r.field != self.residue:
            raise FieldMismatch("residue element not in this field's residue field")
        if r.is_zero():
            return self.zero()
        return self.make(0, [r], None)

    def monomial(self, r: FqElement, lead: int):
        if r.is_zero():
            return self.zero()
        return self.make(lead, [r], None)

    def uniformizer(self, power: int = 1):
        return self.monomial(self.residue.one(), power)

    def approx_zero(self, known_to: int):
        return LocalElement(self, 0, (), known_to, False)

    # ----------------------------------------------------------------------

    @property
    def residue_degree(self) -> int:
        return self.residue.k

    def describe(self) -> dict:
        return {
            "p": self.p,
            "residueDegree": self.residue_degree,
            "ramification": self.e_abs,
            "precision": self.precision_cap,
        }

    def __repr__(self):
        return (
            f"LocalField(p={self.p}, residue={self.residue!r}, "
            f"e_abs={self.e_abs}, cap={self.precision_cap})"
        )


class LocalElement:
    """One element of a tower field.

    States:
      exact zero        -- digits empty, exact flag set
      indeterminate     -- digits empty, known_to finite: the element is
                           O(PI^known_to) but may or may not be zero
      determinate       -- first digit nonzero; exact iff known_to is None
    """

    __slots__ = ("parent", "lead", "digits", "known_to", "exact_zero")

    def __init__(self, parent, lead, digits, known_to, exact_zero):
        self.parent = parent
        self.lead = lead
        self.digits = digits
        self.known_to = known_to
        self.exact_zero = exact_zero

    # --- predicates -------------------------------------------------------

    def is_exact(self) -> bool:
        return self.exact_zero or self.known_to is None

    def is_determinate(self) -> bool:
        return bool(self.digits)

    def is_zero_to_precision(self) -> bool:
        """True when no nonzero digit is known (exact zero or indeterminate)."""
        return not self.digits

    def _check(self, other):
        if self.parent is not other.parent:
            raise FieldMismatch("elements of different tower fields")

    # --- valuation / residue ------------------------------------------------

    def val(self):
        if self.exact_zero:
            return inf
        if not self.digits:
            raise PrecisionExhausted(
                f"valuation indeterminate: element is O(PI^{self.known_to}) "
                "but not tracked as exactly zero"
            )
        return Fraction(self.lead, self.parent.e_abs)

    def val_internal(self) -> int:
        v = self.val()
        if v is inf:
            return inf
        return self.lead

    def residue(self) -> FqElement:
        if self.exact_zero:
            return self.parent.residue.zero()
        if not self.digits:
            if self.known_to > 0:
                return self.parent.residue.zero()
            raise PrecisionExhausted("residue indeterminate at current precision")
        if self.lead < 0:
            raise NegativeValuation("residue of an element with negative valuation")
        if self.lead > 0:
            return self.parent.residue.zero()
        return self.digits[0]

    def digit_at(self, pos: int) -> FqElement:
        i = pos - self.lead
        if self.digits and 0 <= i < len(self.digits):
            return self.digits[i]
        return self.parent.residue.zero()

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        if self.exact_zero:
            return other
        if other.exact_zero:
            return self
        ka = self.known_to
        kb = other.known_to
        known = _min_known(ka, kb)
        la = self.lead if self.digits else self.known_to
        lb = other.lead if other.digits else other.known_to
        lead = min(la, lb)
        if known is None:
            hi = max(
                (self.lead + len(self.digits)) if self.digits else lead,
                (other.lead + len(other.digits)) if other.digits else lead,
            )
        else:
            hi = known
        if hi <= lead:
            return self.parent.make(lead, [], known)
        out = [
            self.digit_at(pos) + other.digit_at(pos) for pos in range(lead, hi)
        ]
        return self.parent.make(lead, out, known)

    def __neg__(self):
        if self.exact_zero:
            return self
        return LocalElement(
            self.parent, self.lead, tuple(-d for d in self.digits),
            self.known_to, False,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.exact_zero or other.exact_zero:
            return self.parent.zero()
        if not self.digits or not other.digits:
            # a product with an indeterminate factor is O(PI^bound)
            ka = self.known_to if not self.digits else self.lead
            kb = other.known_to if not other.digits else other.lead
            return self.parent.approx_zero(ka + kb)
        lead = self.lead + other.lead
        ka, kb = self.known_to, other.known_to
        known = _min_known(
            None if ka is None else ka + other.lead,
            None if kb is None else kb + self.lead,
        )
        if known is None:
            n = len(self.digits) + len(other.digits) - 1
        else:
            n = min(known - lead, len(self.digits) + len(other.digits) - 1)
        zero = self.parent.residue.zero()
        out = [zero] * n
        for i, a in enumerate(self.digits):
            if a.is_zero() or i >= n:
                continue
            jmax = min(len(other.digits), n - i)
            for j in range(jmax):
                b = other.digits[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self.parent.make(lead, out, known)

    def inv(self):
        if self.exact_zero:
            raise DivisionByZero("inverse of exact zero")
        if not self.digits:
            raise PrecisionExhausted("inverse of an element of indeterminate valuation")
        cap = self.parent.precision_cap
        window = cap if self.known_to is None else (self.known_to - self.lead)
        n = min(window, cap)
        u = self.digits
        u0inv = u[0].inv()
        zero = self.parent.residue.zero()
        v = [zero] * n
        v[0] = u0inv
        for m in range(1, n):
            acc = zero
            for i in range(1, min(m, len(u) - 1) + 1):
                if not u[i].is_zero():
                    acc = acc + u[i] * v[m - i]
            v[m] = -(u0inv * acc)
        if self.known_to is None and len(self.digits) == 1:
            return self.parent.make(-self.lead, [u0inv], None)
        return self.parent.make(-self.lead, v, -self.lead + n)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.parent.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int):
        """Multiply by PI^k."""
        if self.exact_zero:
            return self
        if not self.digits:
            return self.parent.approx_zero(self.known_to + k)
        return LocalElement(
            self.parent, self.lead + k, self.digits,
            None if self.known_to is None else self.known_to + k, False,
        )

    def mul_int(self, n: int):
        return self * self.parent.lift(self.parent.residue.from_int(n))

    def agrees_with(self, other) -> bool:
        """Digitwise equality on the overlap of the known windows."""
        diff = self - other
        return diff.is_zero_to_precision()

    def __repr__(self):
        if self.exact_zero:
            return "0(exact)"
        if not self.digits:
            return f"O(PI^{self.known_to})"
        body = " + ".join(
            f"{d!r}*PI^{self.lead + i}"
            for i, d in enumerate(self.digits)
            if not d.is_zero()
        )
        tail = "" if self.known_to is None else f" + O(PI^{self.known_to})"
        return body + tail


# ---------------------------------------------------------------------------
# public operations


def base_field(p: int, precision_cap: int) -> LocalFieldDescriptor:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if precision_cap < MIN_PRECISION:
        raise PrecisionTooSmall(
            f"precision cap {precision_cap} below floor {MIN_PRECISION}"
        )
    return LocalFieldDescriptor(p, fq_field_make(p, 1), 1, [], precision_cap)


def from_rational_function(field, numerator, denominator) -> LocalElement:
    """Exact entry of an element of F_p(s) into the completed base field.

    numerator/denominator are integer coefficient lists in s.  Terminating
    expansions within the cap are marked exact.
    """
    if field.steps:
        raise FieldMismatch("rational-function entry only at the base field")
    p = field.p
    num = [c % p for c in numerator]
    den = [c % p for c in denominator]
    if not any(den):
        raise DivisionByZero("zero denominator")
    if not any(num):
        return field.zero()
    ord_n = next(i for i, c in enumerate(num) if c)
    ord_d = next(i for i, c in enumerate(den) if c)
    u = num[ord_n:]
    v = den[ord_d:]
    cap = field.precision_cap
    r = u + [0] * (cap + len(v))
    v0inv = pow(v[0], p - 2, p)
    q = []
    exact_at = None
    for i in range(cap):
        qi = r[i] * v0inv % p
        q.append(qi)
        if qi:
            for j, vj in enumerate(v):
                r[i + j] = (r[i + j] - qi * vj) % p
        if not any(r[i + 1 :]):
            exact_at = i + 1
            break
    res = field.residue
    digits = [res.from_int(c) for c in q]
    lead = ord_n - ord_d
    if exact_at is not None:
        return field.make(lead, digits[:exact_at], None)
    return field.make(lead, digits, lead + cap)


def val(x: LocalElement):
    return x.val()


def residue(x: LocalElement) -> FqElement:
    return x.residue()


def lift(r: FqElement, field: LocalFieldDescriptor) -> LocalElement:
    return field.lift(r)


def arith(x: LocalElement, y, op: str) -> LocalElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# polynomials over a tower field


class LocalPolynomial:
    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].exact_zero:
            coeffs.pop()
        self.parent = parent
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> LocalElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.parent.zero()

    def evaluate(self, x: LocalElement) -> LocalElement:
        acc = self.parent.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "LocalPolynomial":
        return LocalPolynomial(
            self.parent,
            [c.mul_int(i) for i, c in enumerate(self.coeffs)][1:],
        )

    def residue_poly(self) -> FqPolynomial:
        """Digit-at-zero of every coefficient; requires all val >= 0."""
        return FqPolynomial(
            self.parent.residue, [c.residue() for c in self.coeffs]
        )

    def map_coeffs(self, fn, new_parent) -> "LocalPolynomial":
        return LocalPolynomial(new_parent, [fn(c) for c in self.coeffs])

    def __repr__(self):
        return "LocalPoly[" + ", ".join(repr(c) for c in self.coeffs) + "]"


# ---------------------------------------------------------------------------
# extension steps


def unramified_step(field: LocalFieldDescriptor, q: FqPolynomial):
    """Enlarge the residue field by an irreducible q; the value group is
    unchanged.  Returns (new_field, embed, alpha) with alpha the constant
    lift of the chosen residue root of q."""
    if q.field != field.residue:
        raise FieldMismatch("q must be over the current residue field")
    if q.degree < 1:
        raise NotIrreducible("constant polynomial")
    if q.degree > 1:
        factors = fq_factor(q)
        if len(factors) != 1 or factors[0][1] != 1 or factors[0][0].degree != q.degree:
            raise NotIrreducible(f"{q!r} is reducible")
    if q.degree == 1:
        alpha = field.lift(q.monic().shift_root())
        return field, (lambda x: x), alpha

    new_res = fq_field_make(field.p, field.residue.k * q.degree)
    emb = fq_embed(field.residue, new_res)
    root = find_root_in(q, new_res, emb)
    step = UnramifiedStep(q, emb, root)
    new_field = LocalFieldDescriptor(
        field.p, new_res, field.e_abs, field.steps + [step], field.precision_cap
    )

    def embed(x: LocalElement) -> LocalElement:
        if x.parent is not field:
            raise FieldMismatch("element not in the step's source field")
        if x.exact_zero:
            return new_field.zero()
        if not x.digits:
            return new_field.approx_zero(x.known_to)
        return new_field.make(x.lead, [emb(d) for d in x.digits], x.known_to)

    alpha = new_field.lift(root)
    return new_field, embed, alpha


def kummer_step(field: LocalFieldDescriptor, e: int, u: LocalElement):
    """Tame totally ramified step of order e defined by adjoining an e-th
    root of u.  Returns (new_field, embed, lam) with lam^e = u to working
    precision.  The new uniformizer satisfies PI_new^e = u^x * PI_old^(y*e)
    for the canonical Bezout pair x*M + y*e = 1 (x minimal non-negative),
    M = internal valuation of u."""
    if u.parent is not field:
        raise FieldMismatch("u not in the given field")
    if e == 1:
        return field, (lambda x: x), u
    if e % field.p == 0:
        raise WildRamification(f"p = {field.p} divides e = {e}")
    if not u.digits:
        raise PrecisionExhausted("kummer step needs a determinate u")
    M = u.lead
    if gcd(M % e, e) != 1:
        raise OrderMismatch(
            f"val(u) = {M} internal units has order < {e} modulo the value group"
        )
    x = next(x for x in range(e) if (x * M) % e == 1 % e)
    y = (1 - x * M) // e
    g0 = (u ** x) * field.uniformizer(y * e)
    assert g0.lead == 1

    new_field = LocalFieldDescriptor(
        field.p, field.residue, field.e_abs * e, field.steps, field.precision_cap
    )
    # g0 = PI_old * U(PI_old) with U a unit series; solve PI_new^e = P * U(P)
    # for P, the image of PI_old, by fixed-point iteration (each pass gains
    # at least e digits).
    c = list(g0.digits)
    cap = field.precision_cap
    pi_e = new_field.uniformizer(e)
    if len(c) == 1 and g0.known_to is None:
        P = pi_e * new_field.lift(c[0].inv())
    else:
        consts = [new_field.lift(ci) for ci in c]

        def u_series_at(Pv):
            acc = new_field.zero()
            for cc in reversed(consts):
                acc = acc * Pv + cc
            return acc

        P = pi_e * new_field.lift(c[0].inv())
        for _ in range(cap + 4):
            P_next = pi_e * u_series_at(P).inv()
            if P_next.agrees_with(P):
                P = P_next
                break
            P = P_next
        if g0.known_to is not None:
            # u was inexact; the re-expansion cannot know more than g0 did
            P = new_field.make(P.lead, P.digits, e * g0.known_to)
    step = KummerStep(e, (x, y), P)
    new_field.steps = field.steps + [step]

    P_inv = P.inv()

    def embed(z: LocalElement) -> LocalElement:
        if z.parent is not field:
            raise FieldMismatch("element not in the step's source field")
        if z.exact_zero:
            return new_field.zero()
        if not z.digits:
            return new_field.approx_zero(e * z.known_to)
        acc = new_field.zero()
        for d in reversed(z.digits):
            acc = acc * P + new_field.lift(d)
        if z.lead >= 0:
            acc = acc * (P ** z.lead)
        else:
            acc = acc * (P_inv ** (-z.lead))
        if z.known_to is not None:
            acc = new_field.make(acc.lead, acc.digits, min(
                e * z.known_to,
                acc.known_to if acc.known_to is not None else e * z.known_to,
            ))
        return acc

    u_new = embed(u)
    v_unit = u_new.shift(-e * M)
    rho0 = (u * field.uniformizer(-M)).residue()
    beta = rho0 ** y
    assert beta ** e == v_unit.residue()
    one = new_field.one()
    poly = LocalPolynomial(
        new_field,
        [-v_unit] + [new_field.zero()] * (e - 1) + [one],
    )
    w = hensel_root(poly, beta)
    lam = new_field.uniformizer(M) * w
    return new_field, embed, lam


def hensel_root(C: LocalPolynomial, beta: FqElement) -> LocalElement:
    """Newton iteration for the root of a primitive polynomial whose residue
    polynomial has beta as a simple root."""
    field = C.parent
    for c in C.coeffs:
        if c.digits and c.lead < 0:
            raise NotPrimitive("coefficient with negative valuation")
        if not c.digits and not c.exact_zero and c.known_to < 0:
            raise PrecisionExhausted("coefficient precision below the integer ring")
    cbar = C.residue_poly()
    if cbar.is_zero():
        raise NotPrimitive("all coefficients have positive valuation")
    if not cbar.evaluate(beta).is_zero():
        raise NotSimpleRoot("beta is not a root of the residue polynomial")
    if cbar.derivative().evaluate(beta).is_zero():
        raise NotSimpleRoot("beta is a multiple root of the residue polynomial")
    dC = C.derivative()
    alpha = field.lift(beta)
    max_iter = field.precision_cap.bit_length() + 6
    for _ in range(max_iter):
        f_alpha = C.evaluate(alpha)
        if f_alpha.is_zero_to_precision():
            return alpha
        d_alpha = dC.evaluate(alpha)
        alpha = alpha - f_alpha * d_alpha.inv()
    f_alpha = C.evaluate(alpha)
    if f_alpha.is_zero_to_precision():
        return alpha
    raise PrecisionExhausted("Newton iteration failed to converge")
