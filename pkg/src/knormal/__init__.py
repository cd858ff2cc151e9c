"""Exact computation with k-normal and primitive elements of finite fields.

The package builds towers F_p < F_q < F_{q^n} deterministically, factors
x^n - 1 and q^n - 1 exactly, classifies elements by the degree of their
Frobenius-order polynomial, evaluates existence criteria for primitive
k-normal elements in exact integer arithmetic, and cross-checks every
counting formula against literal whole-field enumeration.
"""

from .basefield import FqField
from .conjecture import ArtinSchreierRecord, artin_schreier_check, primitive_roots
from .cyclotomic import factor_xm_minus_1
from .errors import BudgetError, InternalCheckError
from .ff import (
    ENUMERATION_CAP,
    FFElement,
    FieldContext,
    build_field,
    field_with_modulus,
    find_primitive,
    frobenius,
    in_subfield,
    is_primitive,
    multiplicative_order,
    trace_to_subfield,
)
from .intfactor import FactorCache, FactoredInt, factor_integer, is_prime
from .normality import (
    CensusRecord,
    associate_poly,
    brute_census,
    clear_scan,
    construct_k_normal,
    count_k_normals,
    enumerate_by_order,
    find_normal,
    fq_order,
    is_normal,
    lambda_poly,
    normality_index,
    phi_of_divisor,
    psi_poly,
    q_associate,
)
from .polyring import (
    FactoredPoly,
    FqPoly,
    count_squarefree_divisors_poly,
    degree_set,
    divisors_of_degree,
    all_divisors,
    euler_phi_poly,
    format_poly,
    is_irreducible,
    least_irreducible,
    mobius_poly,
    parse_poly,
    poly_gcd,
)
from .practical import is_fq_practical, is_phi_practical, practical_family_check
from .sieve import (
    HMargin,
    SieveReport,
    divisor_bound_check,
    divisor_bound_scan,
    h_margin,
    power_of_two_bound_check,
    sieve_1normal,
    sieve_verdict,
    squarefree_divisor_count_int,
)
from .trace_lift import lift_by_trace, projection_check

def factor_xn_minus_1(ctx: FieldContext) -> FactoredPoly:
    """Factorization of x^n - 1 over the base field of ctx (cached)."""
    return ctx.xn_minus_1()

__all__ = [
    "ArtinSchreierRecord",
    "BudgetError",
    "CensusRecord",
    "ENUMERATION_CAP",
    "FFElement",
    "FactorCache",
    "FactoredInt",
    "FactoredPoly",
    "FieldContext",
    "FqField",
    "FqPoly",
    "HMargin",
    "InternalCheckError",
    "SieveReport",
    "all_divisors",
    "artin_schreier_check",
    "associate_poly",
    "brute_census",
    "build_field",
    "clear_scan",
    "construct_k_normal",
    "count_k_normals",
    "count_squarefree_divisors_poly",
    "degree_set",
    "divisor_bound_check",
    "divisor_bound_scan",
    "divisors_of_degree",
    "enumerate_by_order",
    "euler_phi_poly",
    "factor_integer",
    "factor_xm_minus_1",
    "factor_xn_minus_1",
    "field_with_modulus",
    "find_normal",
    "find_primitive",
    "format_poly",
    "fq_order",
    "frobenius",
    "h_margin",
    "in_subfield",
    "is_fq_practical",
    "is_irreducible",
    "is_normal",
    "is_phi_practical",
    "is_prime",
    "is_primitive",
    "lambda_poly",
    "least_irreducible",
    "lift_by_trace",
    "mobius_poly",
    "multiplicative_order",
    "normality_index",
    "parse_poly",
    "phi_of_divisor",
    "poly_gcd",
    "power_of_two_bound_check",
    "practical_family_check",
    "primitive_roots",
    "projection_check",
    "psi_poly",
    "q_associate",
    "sieve_1normal",
    "sieve_verdict",
    "squarefree_divisor_count_int",
    "trace_to_subfield",
]
