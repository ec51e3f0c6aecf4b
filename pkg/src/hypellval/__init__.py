"""Finiteness certificates for residually transcendental valuation
extensions on hyperelliptic function fields over F_p(s).

The public surface: exact finite-field arithmetic (`ffield`), truncated
series arithmetic in tame tower extensions of F_p((s)) (`localfield`),
Newton-hull candidate enumeration (`newton`), residue polynomials
(`respoly`), the reduction recursion and certificates (`reduction`) and
the command-line interface (`cli`).
"""

from .reduction import Certificate, analyze, certificate_to_dict, certify

__all__ = ["Certificate", "analyze", "certificate_to_dict", "certify"]

__version__ = "0.1.0"
