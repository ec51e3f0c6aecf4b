"""Residue polynomials of Newton hull segments and their multiplicity
profiles.

For a segment S = {i_0 < ... < i_k} with slope data (mu, e_S, c_S), the
residue polynomial has coefficient residue(a_{i_j} * a_{i_0}^{-1} * c_S^{-n_j})
at exponent n_j = (i_j - i_0)/e_S; every such combination is a unit by
construction, so all residues are well defined.  The multiplicity profile
is read off the factorization (finite fields are perfect, so root
multiplicities equal factor multiplicities).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InternalInconsistency
from .ffield import FqPolynomial, fq_factor
from .localfield import LocalPolynomial
from .newton import SData


@dataclass
class ResiduePolyData:
    poly: FqPolynomial
    exponents: dict          # j -> n_j
    sdata: SData
    factors: list = dc_field(default=None)   # [(monic irreducible, mult)]

    @property
    def mult_profile(self):
        """Multiset of root multiplicities over the algebraic closure:
        a factor of degree d and multiplicity m contributes d copies of m."""
        profile = []
        for q, m in self.factor_list():
            profile.extend([m] * q.degree)
        return tuple(sorted(profile))

    def factor_list(self):
        if self.factors is None:
            self.factors = fq_factor(self.poly)
        return self.factors

    @property
    def max_mult(self) -> int:
        return max(m for _, m in self.factor_list())


def build_residue_poly(f: LocalPolynomial, sdata: SData, c=None) -> ResiduePolyData:
    """The residue polynomial of (f, S).  `c` defaults to the canonical
    c_S; any unit multiple of it gives the same multiplicity profile."""
    if c is None:
        c = sdata.cS
    field = f.parent
    i0 = sdata.S[0]
    inv_a0 = f.coeff(i0).inv()
    n_max = (sdata.S[-1] - i0) // sdata.eS
    coeffs = [field.residue.zero()] * (n_max + 1)
    exponents = {}
    for j, i in enumerate(sdata.S):
        if (i - i0) % sdata.eS != 0:
            raise InternalInconsistency(
                f"index {i} not reachable from {i0} in steps of e_S = {sdata.eS}"
            )
        n_j = (i - i0) // sdata.eS
        term = f.coeff(i) * inv_a0 * c ** (-n_j)
        v = term.val()  # PrecisionExhausted propagates
        if v != 0:
            raise InternalInconsistency(
                f"expected unit at S index {i}, got valuation {v}; "
                "S-data does not match the polynomial"
            )
        coeffs[n_j] = term.residue()
        exponents[j] = n_j
    poly = FqPolynomial(field.residue, coeffs)
    assert poly.degree == n_max <= sdata.S[-1], "residue-degree bound violated"
    return ResiduePolyData(poly=poly, exponents=exponents, sdata=sdata)


def mult_profile(rp: ResiduePolyData):
    """(max multiplicity, factor list) of the residue polynomial."""
    factors = rp.factor_list()
    return max(m for _, m in factors), factors
