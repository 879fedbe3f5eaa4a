"""Exact linear-programming energy bounds for T-avoiding spherical codes on S^47."""
from .certify import (
    BoundCertificate,
    lower_certificate,
    sandwich_report,
    upper_certificate,
    verify_certificate,
)
from .designs import P48, DistanceDistribution, design_energy, moment, quadrature_from, solve_distribution
from .gegenbauer import GegenbauerExpansion, assemble, expand, gegenbauer_poly, sign_report
from .interpolate import LOWER_T1, LOWER_T2, T1, T2, UPPER_T1, NodeMultiset, hermite_interpolant, partial_products, remainder_sign
from .potentials import Potential, gaussian, parse_potential, poly_potential_from_shifted_basis, riesz
from .ratpoly import Poly, poly_derivative, poly_eval, poly_from_roots

__version__ = "0.1.0"
