"""Practical numbers: degrees of divisors of x^n - 1 with no gaps.

n is F_q-practical when x^n - 1 has a monic divisor of every degree from
0 to n, which by the counting formula is exactly when k-normal elements
exist for every k.  The integer analogue replaces the factorization over
F_q by the cyclotomic one over the integers, whose degrees are the phi(d)
for d | n; only the degree multiset matters, so no integer polynomials
are ever built.
"""

from __future__ import annotations

from .basefield import FqField
from .cyclotomic import factor_xm_minus_1
from .ff import build_field
from .intfactor import factor_integer
from .polyring import degree_set

SUBSET_SUM_MAX_N = 1_000_000


def fq_of_prime_power(q: int) -> FqField:
    """The base field for a prime power q, with the canonical modulus."""
    fi = factor_integer(q)
    if len(fi.factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e = fi.factors[0]
    return build_field(p, e, 1).fq


def is_fq_practical(q: int, n: int) -> bool:
    """Whether x^n - 1 over F_q has divisors of every degree 0..n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SUBSET_SUM_MAX_N:
        raise ValueError(f"n={n} beyond the subset-sum limit")
    fq = fq_of_prime_power(q)
    return degree_set(factor_xm_minus_1(fq, n)) == set(range(n + 1))


def is_phi_practical(n: int) -> bool:
    """The integer analogue: subset sums of {phi(d) : d | n} cover 0..n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SUBSET_SUM_MAX_N:
        raise ValueError(f"n={n} beyond the subset-sum limit")
    reach = 1
    for d in range(1, n + 1):
        if n % d == 0:
            reach |= reach << factor_integer(d).phi()
    mask = (1 << (n + 1)) - 1
    return reach & mask == mask


def practical_family_check(q: int, n: int) -> bool:
    """Hypothesis of the explicit family: every prime divisor of n divides
    p(q - 1).  When it holds, n is F_q-practical."""
    if n < 1:
        raise ValueError("n must be positive")
    fi = factor_integer(q)
    if len(fi.factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fi.factors[0][0]
    bound = p * (q - 1)
    return all(bound % r == 0 for r in factor_integer(n).primes)
