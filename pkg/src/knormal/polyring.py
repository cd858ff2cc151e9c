"""Dense univariate polynomial arithmetic over F_q.

Polynomials are represented as tuples of F_q element codes, constant
coefficient first, with no trailing zeros; the empty tuple is the zero
polynomial.  All operations are exact.  Multiplication is schoolbook for
small or sparse operands and an integer convolution mod p above a size
threshold (for extension fields, one convolution per pair of base-p digit
planes, then reduction of the generator powers); division skips zero
divisor coefficients, so dividing by a sparse polynomial costs
O(deg * terms).

The canonical ordering used everywhere (divisor listings, factor lists,
"least irreducible" modulus selection) is: by degree, then lexicographic
on the coefficient tuple (c0, c1, ..., cd) as integers.

Text formats accepted by parse_poly and produced by format_poly:

    3 + x + 2*x^4        sum-of-terms form, decimal coefficient codes
    [3, 1, 0, 0, 2]      compact list form, constant first

Coefficient codes at or above q are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .basefield import FqField
from .errors import BudgetError

_CONVOLUTION_CUTOFF = 32

# Divisor enumeration refuses to materialize more than this many divisors.
DIVISOR_CAP = 1 << 20


class FqPoly:
    """Immutable dense polynomial over an FqField."""

    __slots__ = ("fq", "coeffs")

    def __init__(self, fq: FqField, coeffs=()):
        coeffs = tuple(coeffs)
        for c in coeffs:
            if not (0 <= c < fq.q):
                raise ValueError(f"coefficient code {c} out of range for q={fq.q}")
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "fq", fq)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("FqPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, fq: FqField) -> "FqPoly":
        return cls(fq, ())

    @classmethod
    def one(cls, fq: FqField) -> "FqPoly":
        return cls(fq, (1,))

    @classmethod
    def x(cls, fq: FqField) -> "FqPoly":
        return cls(fq, (0, 1))

    @classmethod
    def monomial(cls, fq: FqField, d: int, c: int = 1) -> "FqPoly":
        return cls(fq, (0,) * d + (c,))

    @classmethod
    def x_pow_minus_one(cls, fq: FqField, n: int) -> "FqPoly":
        """x^n - 1."""
        return cls(fq, (fq.neg(1),) + (0,) * (n - 1) + (1,))

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqPoly)
            and self.fq == other.fq
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.fq, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __lt__(self, other: "FqPoly") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"FqPoly({format_poly(self)})"

    def _check_same_field(self, other: "FqPoly") -> None:
        if self.fq != other.fq:
            raise ValueError("polynomials live over different fields")

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "FqPoly") -> "FqPoly":
        self._check_same_field(other)
        fq = self.fq
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = fq.add(out[i], c)
        return FqPoly(fq, out)

    def __neg__(self) -> "FqPoly":
        fq = self.fq
        return FqPoly(fq, tuple(fq.neg(c) for c in self.coeffs))

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self + (-other)

    def scale(self, c: int) -> "FqPoly":
        fq = self.fq
        if c == 0:
            return FqPoly.zero(fq)
        return FqPoly(fq, tuple(fq.mul(c, a) for a in self.coeffs))

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        self._check_same_field(other)
        if not self or not other:
            return FqPoly.zero(self.fq)
        return FqPoly(self.fq, _mul(self.fq, list(self.coeffs), list(other.coeffs)))

    def __pow__(self, k: int) -> "FqPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = FqPoly.one(self.fq)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        self._check_same_field(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        fq = self.fq
        d = other.degree
        lead_inv = fq.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        if len(rem) <= d:
            return FqPoly.zero(fq), self
        quot = [0] * (len(rem) - d)
        sparse = [(i, c) for i, c in enumerate(other.coeffs[:-1]) if c]
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c = fq.mul(c, lead_inv)
            quot[i - d] = c
            rem[i] = 0
            for j, bj in sparse:
                k = i - d + j
                rem[k] = fq.sub(rem[k], fq.mul(c, bj))
        return FqPoly(fq, quot), FqPoly(fq, rem)

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def divides(self, other: "FqPoly") -> bool:
        return not other % self

    def monic(self) -> "FqPoly":
        if not self or self.coeffs[-1] == 1:
            return self
        return self.scale(self.fq.inv(self.coeffs[-1]))

    def derivative(self) -> "FqPoly":
        fq = self.fq
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(fq.mul(i % fq.p, c))
        return FqPoly(fq, out)

    def eval(self, a: int) -> int:
        """Horner evaluation at an F_q element code."""
        fq = self.fq
        acc = 0
        for c in reversed(self.coeffs):
            acc = fq.add(fq.mul(acc, a), c)
        return acc

    def nonzero_terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs of nonzero terms, low to high."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c]


def _mul(fq: FqField, a: list[int], b: list[int]) -> list[int]:
    na, nb = len(a), len(b)
    terms_a = sum(1 for c in a if c)
    terms_b = sum(1 for c in b if c)
    if min(terms_a, terms_b) * 4 <= min(na, nb) or min(na, nb) < _KARATSUBA_CUTOFF:
        return _mul_school(fq, a, b)
    return _mul_karatsuba(fq, a, b)


def _mul_school(fq: FqField, a: list[int], b: list[int]) -> list[int]:
    if sum(1 for c in a if c) > sum(1 for c in b if c):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    if fq.e == 1:
        p = fq.p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = (out[k] + ai * bj) % p
    else:
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = fq.add(out[k], fq.mul(ai, bj))
    return out


def _mul_karatsuba(fq: FqField, a: list[int], b: list[int]) -> list[int]:
    n = min(len(a), len(b))
    if n < _KARATSUBA_CUTOFF:
        return _mul_school(fq, a, b)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _mul(fq, a0, b0)
    z2 = _mul(fq, a1, b1)
    s_a = [fq.add(x, y) for x, y in zip(a0, a1)] + list(a1[len(a0):]) + list(a0[len(a1):])
    s_b = [fq.add(x, y) for x, y in zip(b0, b1)] + list(b1[len(b0):]) + list(b0[len(b1):])
    z1 = _mul(fq, s_a, s_b)
    for i, c in enumerate(z0):
        z1[i] = fq.sub(z1[i], c)
    for i, c in enumerate(z2):
        z1[i] = fq.sub(z1[i], c)
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = c
    for i, c in enumerate(z1):
        if c:
            out[i + h] = fq.add(out[i + h], c)
    for i, c in enumerate(z2):
        if c:
            out[i + 2 * h] = fq.add(out[i + 2 * h], c)
    return out


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    """Monic greatest common divisor; gcd(f, 0) = monic(f)."""
    a._check_same_field(b)
    while b:
        a, b = b, a % b
    return a.monic()


def powmod(base: FqPoly, k: int, mod: FqPoly) -> FqPoly:
    """base^k reduced mod `mod`, square and multiply."""
    if k < 0:
        raise ValueError("negative exponent")
    result = FqPoly.one(base.fq) % mod
    base = base % mod
    while k:
        if k & 1:
            result = result * base % mod
        base = base * base % mod
        k >>= 1
    return result


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: FqPoly) -> bool:
    """Deterministic irreducibility test for monic f over F_q.

    f of degree d is irreducible iff x^(q^d) = x mod f and, for every prime
    l dividing d, gcd(x^(q^(d/l)) - x, f) = 1.  The Frobenius iterates
    x^(q^j) mod f are computed by repeated q-th powering.
    """
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    fq = f.fq
    if f.coeffs[0] == 0:
        return False  # divisible by x
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    x = FqPoly.x(fq)
    checkpoints = {d // l for l in _prime_divisors(d)}
    t = x
    for j in range(1, d + 1):
        t = powmod(t, fq.q, f)
        if j in checkpoints and poly_gcd(t - x, f).degree > 0:
            return False
        if j == d:
            return t == x
    return False


def least_irreducible(fq: FqField, d: int) -> FqPoly:
    """The canonically least monic irreducible of degree d over F_q."""
    if d < 1:
        raise ValueError("degree must be positive")
    q = fq.q
    for idx in range(q**d):
        # lex order on (c0, ..., c_{d-1}): c0 is the most significant digit
        coeffs = []
        rest = idx
        for i in range(d - 1, -1, -1):
            c, rest = divmod(rest, q**i)
            coeffs.append(c)
        f = FqPoly(fq, tuple(coeffs) + (1,))
        if is_irreducible(f):
            return f
    raise RuntimeError(f"no irreducible of degree {d} found over F_{q}")


# -- factored polynomials -------------------------------------------------


@dataclass(frozen=True)
class FactoredPoly:
    """A monic polynomial held as its irreducible factorization.

    factors: (irreducible monic FqPoly, multiplicity) pairs, pairwise
    distinct, sorted by the canonical polynomial order.
    """

    fq: FqField
    factors: tuple[tuple[FqPoly, int], ...]

    def __post_init__(self):
        keys = [f.sort_key() for f, _ in self.factors]
        if keys != sorted(set(keys)):
            raise ValueError("factors must be distinct and canonically sorted")

    def product(self) -> FqPoly:
        out = FqPoly.one(self.fq)
        for f, m in self.factors:
            out = out * f**m
        return out

    @property
    def degree(self) -> int:
        return sum(f.degree * m for f, m in self.factors)

    def num_distinct(self) -> int:
        return len(self.factors)

    def multiplicity(self, f: FqPoly) -> int:
        for g, m in self.factors:
            if g == f:
                return m
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for f, m in self.factors:
            s = f"({format_poly(f)})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return " * ".join(parts)


def euler_phi_poly(fp: FactoredPoly) -> int:
    """Order of the unit group of F_q[x]/(f) from the factorization of f."""
    q = fp.fq.q
    out = 1
    for f, m in fp.factors:
        d = f.degree
        out *= q ** (d * m) - q ** (d * (m - 1))
    return out


def mobius_poly(fp: FactoredPoly) -> int:
    """Polynomial Mobius function: 0 unless squarefree, else (-1)^r."""
    for _, m in fp.factors:
        if m > 1:
            return 0
    return -1 if len(fp.factors) % 2 else 1


def count_squarefree_divisors_poly(fp: FactoredPoly) -> int:
    return 1 << len(fp.factors)


def _divisor_count(fp: FactoredPoly) -> int:
    return reduce(lambda acc, fm: acc * (fm[1] + 1), fp.factors, 1)


def all_divisors(fp: FactoredPoly) -> list[FqPoly]:
    """Every monic divisor, in canonical order."""
    if _divisor_count(fp) > DIVISOR_CAP:
        raise BudgetError(f"too many divisors ({_divisor_count(fp)} > {DIVISOR_CAP})")
    divs = [FqPoly.one(fp.fq)]
    for f, m in fp.factors:
        powers = [f**i for i in range(m + 1)]
        divs = [d * pw for d in divs for pw in powers]
    return sorted(divs, key=FqPoly.sort_key)


def divisors_of_degree(fp: FactoredPoly, k: int) -> list[FqPoly]:
    """All monic divisors of exactly degree k, in canonical order."""
    if not 0 <= k <= fp.degree:
        raise ValueError(f"degree {k} out of range 0..{fp.degree}")
    if _divisor_count(fp) > DIVISOR_CAP:
        raise BudgetError(f"too many divisors ({_divisor_count(fp)} > {DIVISOR_CAP})")
    out: list[FqPoly] = []

    def descend(i: int, acc: FqPoly, deg: int) -> None:
        if deg > k:
            return
        if i == len(fp.factors):
            if deg == k:
                out.append(acc)
            return
        f, m = fp.factors[i]
        pw = FqPoly.one(fp.fq)
        for j in range(m + 1):
            descend(i + 1, acc * pw, deg + j * f.degree)
            if j < m:
                pw = pw * f
    descend(0, FqPoly.one(fp.fq), 0)
    return sorted(out, key=FqPoly.sort_key)


def degree_set(fp: FactoredPoly) -> set[int]:
    """Degrees realized by monic divisors: subset sums of factor degrees."""
    reach = 1
    for f, m in fp.factors:
        for _ in range(m):
            reach |= reach << f.degree
    return {i for i in range(fp.degree + 1) if reach >> i & 1}


# -- text formats ---------------------------------------------------------


def format_poly(f: FqPoly, var: str = "x") -> str:
    """Sum-of-terms text form; the zero polynomial prints as "0"."""
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(var if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return " + ".join(parts)


def format_poly_list(f: FqPoly) -> str:
    return "[" + ",".join(str(c) for c in f.coeffs) + "]"


def parse_poly(fq: FqField, text: str, var: str = "x") -> FqPoly:
    """Parse either text form; coefficient codes must be below q."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated list form: {text!r}")
        body = text[1:-1].strip()
        coeffs = [int(t) for t in body.split(",")] if body else []
        return FqPoly(fq, coeffs)
    coeffs: dict[int, int] = {}
    for term in text.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        if term.startswith("-"):
            raise ValueError(f"negative coefficients are not valid codes: {term!r}")
        if var in term:
            c_part, _, e_part = term.partition(var)
            c_part = c_part.strip().rstrip("*").strip()
            c = int(c_part) if c_part else 1
            e_part = e_part.strip()
            if e_part.startswith("^"):
                exp = int(e_part[1:])
            elif e_part == "":
                exp = 1
            else:
                raise ValueError(f"malformed term: {term!r}")
        else:
            c = int(term)
            exp = 0
        if exp in coeffs:
            raise ValueError(f"repeated exponent {exp} in {text!r}")
        coeffs[exp] = c
    out = [0] * (max(coeffs) + 1)
    for exp, c in coeffs.items():
        out[exp] = c
    return FqPoly(fq, out)
