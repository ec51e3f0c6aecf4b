"""Multiplicity-reduction transforms and the certificate orchestrator.

Two transforms drive the recursion:

  case a -- the residue polynomial is a pure power (t - beta)^r on a
            contiguous segment starting at 0 with e_S = 1.  The variable is
            recentred at a Hensel root alpha of the derived polynomial C,
            which kills the coefficient at index r-1 and strictly lowers
            the maximal multiplicity.

  case b -- an irreducible factor q of the residue polynomial with
            multiplicity r_q >= 2.  The residue field grows by q
            (unramified step), then a tame Kummer step of order e_S makes
            lambda with lambda^e_S = alpha^{-1} c_S available; substituting
            X = lambda^{-1}(X_1 + 1) moves the repeated root to 0.  The new
            maximal multiplicity is < r_q except possibly for one pure-power
            successor, which the next level handles as case a.

The orchestrator walks all hull segments, applies these transforms until
every factor is simple, and emits the certificate tree: per node the
segment data, residue polynomial, factorization, branch verdict and the
overt bound (degree squared), plus the total bound and the count of
separable (base-case) leaves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import (
    DepthExceeded,
    EmptyHull,
    InternalInconsistency,
    NotAFactor,
    NotPurelyInseparable,
    PrecisionExhausted,
)
from .ffield import FqPolynomial
from .localfield import (
    LocalFieldDescriptor,
    LocalPolynomial,
    base_field,
    from_rational_function,
    hensel_root,
    kummer_step,
    unramified_step,
)
from .newton import SData, critical_segments
from .respoly import ResiduePolyData, build_residue_poly, mult_profile


# ---------------------------------------------------------------------------
# small valuation predicates (zero-to-precision counts as "positive")


def _val_positive(x) -> bool:
    if x.exact_zero:
        return True
    if not x.digits:
        return x.known_to > 0
    return x.lead > 0


def _val_zero(x) -> bool:
    return bool(x.digits) and x.lead == 0


def is_case_a_trigger(rp: ResiduePolyData) -> bool:
    """Pure power (t-beta)^r, r >= 2, on a contiguous segment {0, ..., r}
    with e_S = 1.  Pure powers elsewhere route through case b with the
    linear factor q = t - beta."""
    factors = rp.factor_list()
    if len(factors) != 1:
        return False
    q, r = factors[0]
    if q.degree != 1 or r < 2:
        return False
    sd = rp.sdata
    return sd.eS == 1 and sd.S[0] == 0


# ---------------------------------------------------------------------------
# case a


def case_a_transform(field, f: LocalPolynomial, sdata: SData, rp=None):
    """Recentre at the Hensel root; returns (g, meta) over the same field."""
    if rp is None:
        rp = build_residue_poly(f, sdata)
    if not is_case_a_trigger(rp):
        raise NotPurelyInseparable(
            "residue polynomial is not a pure linear power on {0..r} with e_S=1"
        )
    q, r = rp.factor_list()[0]
    n = f.degree
    if tuple(sdata.S) != tuple(range(r + 1)):
        raise InternalInconsistency(
            "pure-power residue polynomial with a non-contiguous segment"
        )
    # normalize by a pure uniformizer power only: a global unit factor does
    # not move the root of C, the forced zero, or any valuation checkpoint,
    # and it keeps exact coefficients exact (no series inversion)
    c = sdata.cS
    v0 = f.coeff(0).lead
    b = [(f.coeff(i) * c ** (-i)).shift(-v0) for i in range(n + 1)]
    # unit/positivity checkpoints of the pure-power shape
    if not _val_zero(b[r]) or not _val_zero(b[r - 1]):
        raise InternalInconsistency("expected units at indices r-1, r")
    for i in range(r + 1, n + 1):
        if not _val_positive(b[i]):
            raise InternalInconsistency(f"expected positive valuation at index {i}")

    r_in_res = field.residue.from_int(r)
    beta = -(b[r - 1].residue() * (r_in_res * b[r].residue()).inv())
    if q.shift_root() != beta:
        raise InternalInconsistency("factor root disagrees with the -b_{r-1}/(r b_r) formula")

    C = LocalPolynomial(
        field,
        [b[r - 1 + i].mul_int(comb(r - 1 + i, i)) for i in range(n - r + 2)],
    )
    alpha = hensel_root(C, beta)

    apow = [field.one()]
    for _ in range(n):
        apow.append(apow[-1] * alpha)
    cjs = []
    for j in range(n + 1):
        acc = field.zero()
        for k in range(j, n + 1):
            acc = acc + b[k].mul_int(comb(k, j)) * apow[k - j]
        cjs.append(acc)

    # C(alpha) = 0 exactly in the completion, so the index r-1 coefficient
    # vanishes; require that no nonzero digit of it is known, then force it
    if not cjs[r - 1].is_zero_to_precision():
        raise InternalInconsistency(
            "coefficient r-1 of the recentred polynomial is visibly nonzero"
        )
    cjs[r - 1] = field.zero()
    if not _val_zero(cjs[r]):
        raise InternalInconsistency("recentred polynomial lost its unit at index r")
    for i in range(r + 1, n + 1):
        if not _val_positive(cjs[i]):
            raise InternalInconsistency("multiplicity transfer failed above index r")

    g = LocalPolynomial(field, cjs)
    meta = {"beta": beta, "alpha": alpha, "r": r}
    return g, meta


# ---------------------------------------------------------------------------
# case b


def case_b_transform(field, f: LocalPolynomial, sdata: SData, q: FqPolynomial,
                     r_q: int, rp=None):
    """Unramified step by q, tame Kummer step of order e_S, then the shift
    X = lambda^{-1}(X_1 + 1).  Returns (new_field, g, meta)."""
    if rp is None:
        rp = build_residue_poly(f, sdata)
    match = [m for qq, m in rp.factor_list() if qq == q]
    if not match or match[0] != r_q:
        raise NotAFactor(
            f"{q!r} with multiplicity {r_q} is not a factor of the residue polynomial"
        )

    n = f.degree
    i0 = sdata.S[0]
    nf1, emb1, alpha = unramified_step(field, q)
    f1 = f.map_coeffs(emb1, nf1)
    c1 = emb1(sdata.cS) if nf1 is not field else sdata.cS

    u = alpha.inv() * c1
    nf2, emb2, lam = kummer_step(nf1, sdata.eS, u)
    f2 = f1.map_coeffs(emb2, nf2)

    lam_pow = {0: nf2.one()}

    def lpow(k):
        if k not in lam_pow:
            lam_pow[k] = lam ** k
        return lam_pow[k]

    # normalize by a uniformizer power instead of a_{i0}^{-1}: the global
    # unit factor changes no hull slope, index set or residue polynomial
    # downstream, and exact coefficients stay exact
    v0 = f2.coeff(i0).lead
    b = [(f2.coeff(i) * lpow(i0 - i)).shift(-v0) for i in range(n + 1)]
    for i in range(n + 1):
        if i in sdata.S:
            if not _val_zero(b[i]):
                raise InternalInconsistency(f"expected unit at S index {i}")
        elif not _val_positive(b[i]):
            raise InternalInconsistency(f"expected positive valuation off S at {i}")

    cjs = []
    for j in range(n + 1):
        acc = nf2.zero()
        for i in range(j, n + 1):
            acc = acc + b[i].mul_int(comb(i, j))
        cjs.append(acc)

    # multiplicity transfer: the repeated residue root moved to 0
    for j in range(r_q):
        if not _val_positive(cjs[j]):
            raise InternalInconsistency(
                f"coefficient {j} should have positive valuation after the shift"
            )
    if not _val_zero(cjs[r_q]):
        raise InternalInconsistency(f"coefficient {r_q} should be a unit after the shift")

    g = LocalPolynomial(nf2, cjs)
    meta = {"alpha": alpha, "lambda": lam, "q": q, "r_q": r_q}
    return nf2, g, meta


# ---------------------------------------------------------------------------
# certificate tree


@dataclass
class CertificateNode:
    field_desc: dict
    poly_digest: list
    sdata: SData            # None for overt-only nodes
    respoly: ResiduePolyData
    factors: list
    branch: str             # BaseCaseLeaf | CaseA | CaseB | OvertOnly
    overt_bound: int
    depth: int
    origin: dict
    children: list = dc_field(default_factory=list)


@dataclass
class Certificate:
    p: int
    degree: int
    precision: int
    total_bound: int
    covert_leaf_count: int
    depth: int
    roots: list

    def walk(self):
        stack = list(self.roots)
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)


@dataclass
class AnalyzeConfig:
    precision: int = 64
    max_precision: int = 1024


def _coeff_digest(c) -> dict:
    if c.exact_zero:
        return {"val": "+inf", "residue": None}
    if not c.digits:
        return {"val": f"O({c.known_to}/{c.parent.e_abs})", "residue": None}
    v = c.val()
    entry = {"val": f"{v.numerator}/{v.denominator}"}
    entry["residue"] = list(c.digits[0].coeffs)
    return entry


def _poly_digest(f: LocalPolynomial) -> list:
    return [_coeff_digest(f.coeff(i)) for i in range(f.degree + 1)]


def analyze(field: LocalFieldDescriptor, f: LocalPolynomial,
            config: AnalyzeConfig = None) -> Certificate:
    """Single-pass analysis at the field's precision; PrecisionExhausted
    propagates to the caller (see `certify` for the retry ladder)."""
    n = f.degree
    if n < 2:
        raise InternalInconsistency("degree must be at least 2")
    if field.p <= n:
        raise InternalInconsistency("residue characteristic must exceed the degree")
    depth_cap = 2 * n + 4
    roots = _analyze_level(field, f, "all", None, None, 1, depth_cap, None)
    total = 0
    covert = 0
    depth = 0
    stack = list(roots)
    while stack:
        node = stack.pop()
        total += node.overt_bound
        covert += sum(1 for _, m in (node.factors or []) if m == 1)
        depth = max(depth, node.depth)
        stack.extend(node.children)
    return Certificate(
        p=field.p,
        degree=n,
        precision=field.precision_cap,
        total_bound=total,
        covert_leaf_count=covert,
        depth=depth,
        roots=roots,
    )


def _analyze_level(field, poly, slope_filter, allowed_max, parent_measure,
                   depth, depth_cap, origin):
    if depth > depth_cap:
        raise DepthExceeded(
            f"depth {depth} exceeds cap {depth_cap}: descent invariant broken"
        )
    try:
        segments = critical_segments(poly, slope_filter)
    except EmptyHull:
        segments = []
    if not segments:
        # no candidate S with |S| >= 2: only overt extensions remain
        return [
            CertificateNode(
                field_desc=field.describe(),
                poly_digest=_poly_digest(poly),
                sdata=None,
                respoly=None,
                factors=[],
                branch="OvertOnly",
                overt_bound=poly.degree ** 2,
                depth=depth,
                origin=origin,
            )
        ]

    nodes = []
    for sd in segments:
        if allowed_max is not None and sd.S[-1] > allowed_max:
            raise InternalInconsistency(
                f"segment {sd} exceeds the transfer bound max S <= {allowed_max}"
            )
        rp = build_residue_poly(poly, sd)
        max_mult, factors = mult_profile(rp)
        trigger = is_case_a_trigger(rp)

        if parent_measure is not None:
            pr, pkind = parent_measure
            if max_mult > pr or (
                max_mult == pr and (pkind == "a" or not trigger)
            ):
                raise InternalInconsistency(
                    f"multiplicity measure did not descend: parent {parent_measure}, "
                    f"child maxMult {max_mult} (caseA trigger: {trigger})"
                )

        if trigger and max_mult >= 2:
            g, _meta = case_a_transform(field, poly, sd, rp)
            children = _analyze_level(
                field, g, "positiveOnly", max_mult, (max_mult, "a"),
                depth + 1, depth_cap, {"kind": "caseA", "r": max_mult},
            )
            branch = "CaseA"
        else:
            children = []
            for q, r_q in factors:
                if r_q < 2:
                    continue
                nf, g, _meta = case_b_transform(field, poly, sd, q, r_q, rp)
                children.extend(
                    _analyze_level(
                        nf, g, "positiveOnly", r_q, (r_q, "b"),
                        depth + 1, depth_cap,
                        {
                            "kind": "caseB",
                            "factor": [list(c.coeffs) for c in q.coeffs],
                            "mult": r_q,
                        },
                    )
                )
            branch = "CaseB" if children else "BaseCaseLeaf"

        nodes.append(
            CertificateNode(
                field_desc=field.describe(),
                poly_digest=_poly_digest(poly),
                sdata=sd,
                respoly=rp,
                factors=factors,
                branch=branch,
                overt_bound=poly.degree ** 2,
                depth=depth,
                origin=origin,
                children=children,
            )
        )
    return nodes


# ---------------------------------------------------------------------------
# exact input + retry ladder


def build_local_poly(field, rational_coeffs) -> LocalPolynomial:
    """rational_coeffs: list of (numerator, denominator) integer coefficient
    lists in s, index = power of X."""
    return LocalPolynomial(
        field,
        [from_rational_function(field, num, den) for num, den in rational_coeffs],
    )


def certify(p: int, rational_coeffs, precision: int = 64,
            max_precision: int = 1024) -> Certificate:
    """Analyze with the doubling retry ladder: any PrecisionExhausted
    restarts the whole analysis at twice the precision, up to the cap."""
    prec = precision
    while True:
        field = base_field(p, prec)
        f = build_local_poly(field, rational_coeffs)
        try:
            return analyze(field, f)
        except PrecisionExhausted:
            if prec >= max_precision:
                raise
            prec = min(2 * prec, max_precision)


# ---------------------------------------------------------------------------
# serialization (integers and strings only; byte-exact across runs)

SCHEMA = "hypellval-certificate/1"


def _sdata_dict(sd: SData) -> dict:
    return {
        "S": list(sd.S),
        "mu": f"{sd.mu.numerator}/{sd.mu.denominator}",
        "eS": sd.eS,
        "cS": f"PI^{sd.cS.lead}" if not sd.cS.exact_zero else "0",
    }


def _fqpoly_vectors(q: FqPolynomial) -> list:
    return [list(c.coeffs) for c in q.coeffs]


def node_to_dict(node: CertificateNode) -> dict:
    out = {
        "field": dict(node.field_desc),
        "poly": node.poly_digest,
        "sdata": _sdata_dict(node.sdata) if node.sdata else None,
        "respoly": (
            {
                "coeffs": _fqpoly_vectors(node.respoly.poly),
                "exponents": {str(j): n for j, n in node.respoly.exponents.items()},
            }
            if node.respoly
            else None
        ),
        "factors": [
            {"poly": _fqpoly_vectors(q), "mult": m} for q, m in (node.factors or [])
        ],
        "branch": node.branch,
        "overtBound": node.overt_bound,
        "depth": node.depth,
        "origin": node.origin,
        "children": [node_to_dict(c) for c in node.children],
    }
    return out


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "schema": SCHEMA,
        "p": cert.p,
        "degree": cert.degree,
        "precision": cert.precision,
        "totalBound": cert.total_bound,
        "covertLeafCount": cert.covert_leaf_count,
        "depth": cert.depth,
        "nodes": [node_to_dict(n) for n in cert.roots],
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2, sort_keys=True)


def strip_precision(doc):
    """Certificate dict with all precision fields removed; used to compare
    runs at different working precision."""
    if isinstance(doc, dict):
        return {
            k: strip_precision(v)
            for k, v in doc.items()
            if k not in ("precision",)
        }
    if isinstance(doc, list):
        return [strip_precision(v) for v in doc]
    return doc
