"""Candidate index sets from the lower Newton hull.

For a polynomial f = sum a_i X^i over a tower field, each segment of the
lower convex hull of the points (i, val(a_i)) yields one candidate slope
mu = w(X) (MINUS the geometric slope of the segment) together with the
index set S of all points on the segment.  These are exactly the slopes
at which the minimum of val(a_i) + i*mu is attained at least twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EmptyHull, PrecisionExhausted
from .localfield import LocalElement, LocalPolynomial


@dataclass(frozen=True)
class SData:
    S: tuple            # sorted index set, |S| >= 2
    mu: Fraction        # the forced value w(X), absolute normalization
    eS: int             # order of mu modulo the current value group
    cS: LocalElement    # pure uniformizer power with val(cS) + eS*mu = 0
    d: int              # gcd of index differences

    def __repr__(self):
        return f"SData(S={list(self.S)}, mu={self.mu}, eS={self.eS})"


def _finite_points(f: LocalPolynomial):
    """Determinate points (index, valuation) and indeterminate lower bounds
    (index, known-valuation bound); exact zeros are omitted."""
    pts = []
    bounds = []
    e_abs = f.parent.e_abs
    for i in range(f.degree + 1):
        c = f.coeff(i)
        if c.exact_zero:
            continue
        if not c.digits:
            bounds.append((i, Fraction(c.known_to, e_abs)))
        else:
            pts.append((i, c.val()))
    return pts, bounds


def _check_bounds_above_hull(hull, bounds):
    """An indeterminate coefficient is harmless only when its valuation lower
    bound lies strictly above the interior of the lower hull; otherwise the
    hull itself is uncertain and more precision is required."""
    for i, lb in bounds:
        if i < hull[0][0] or i > hull[-1][0]:
            raise PrecisionExhausted(
                f"indeterminate coefficient at index {i} outside the hull span"
            )
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                hv = y1 + Fraction(y2 - y1, x2 - x1) * (i - x1)
                if lb <= hv:
                    raise PrecisionExhausted(
                        f"indeterminate coefficient at index {i}: bound {lb} "
                        f"does not clear the hull value {hv}"
                    )
                break


def critical_segments(f: LocalPolynomial, slope_filter: str = "all"):
    """All SData of f, ordered by increasing mu.

    slope_filter: "all" or "positiveOnly" (keep only mu > 0, used in the
    recursion where the transformed variable has positive value)."""
    if slope_filter not in ("all", "positiveOnly"):
        raise ValueError(f"bad slope filter {slope_filter!r}")
    pts, bounds = _finite_points(f)
    if len(pts) <= 1:
        if bounds:
            raise PrecisionExhausted(
                "too few determinate Newton points to place the hull"
            )
        raise EmptyHull("at most one finite Newton point")

    # lower convex hull, monotone chain (points already sorted by index)
    hull = []
    for q in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (q[1] - y1) <= (q[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(q)
    _check_bounds_above_hull(hull, bounds)

    vals = dict(pts)
    e_abs = f.parent.e_abs
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        mu = -slope
        if slope_filter == "positiveOnly" and mu <= 0:
            continue
        S = tuple(
            i for i, v in pts if v == y1 + slope * (i - x1)
        )
        assert len(S) >= 2
        mu_int = mu * e_abs
        eS = mu_int.denominator
        M = mu_int.numerator
        d = 0
        for i in S[1:]:
            d = gcd(d, i - S[0])
        assert d % eS == 0, "segment spacing incompatible with slope denominator"
        cS = f.parent.uniformizer(-M)
        out.append(SData(S=S, mu=mu, eS=eS, cS=cS, d=d))
    # hull slopes increase left to right, so mu decreases; report increasing mu
    out.reverse()
    return out


def s_of_mu(f: LocalPolynomial, mu: Fraction):
    """Brute-force argmin of val(a_i) + i*mu; the oracle counterpart of
    critical_segments."""
    pts, _bounds = _finite_points(f)
    if not pts:
        return ()
    best = min(v + i * mu for i, v in pts)
    return tuple(i for i, v in pts if v + i * mu == best)
