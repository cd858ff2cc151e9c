"""The field tower F_p < F_q = F_p[u]/(h1) < F_{q^n} = F_q[v]/(h2).

A FieldContext fixes the tower once: both moduli are the canonically least
monic irreducibles of their degree (see polyring), so identical parameters
always produce identical contexts.  Elements of the top field are tuples
of n F_q element codes in the power basis of v; they are immutable value
objects with overloaded ring operators.

Subfields F_{q^m} for m | n are never built as separate structures:
membership is the fixed point test a^(q^m) = a, and the relative trace
projects onto them.

Everything here is exact integer arithmetic; the context's lazy caches
(factorization of q^n - 1 and of x^n - 1) are write-once under a lock, so
contexts may be shared freely across threads.
"""

from __future__ import annotations

import functools
import random
import threading

import numpy as np

from .basefield import FqField
from .errors import BudgetError
from .intfactor import FactorCache, FactoredInt, factor_integer, is_prime
from .polyring import FactoredPoly, FqPoly, least_irreducible, powmod

# Exhaustive scans over a whole field refuse to run above this many elements.
ENUMERATION_CAP = 1_000_000


class FFElement:
    """An element of F_{q^n}, held as n F_q codes (power basis, low first)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "FieldContext", coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _lift(self, other) -> "FFElement":
        if isinstance(other, FFElement):
            if other.ctx != self.ctx:
                raise ValueError("elements live in different fields")
            return other
        if isinstance(other, int):
            return self.ctx.embed_scalar(other % self.ctx.fq.p)
        return NotImplemented

    def __add__(self, other) -> "FFElement":
        other = self._lift(other)
        fq = self.ctx.fq
        return FFElement(self.ctx, tuple(fq.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FFElement":
        fq = self.ctx.fq
        return FFElement(self.ctx, tuple(fq.neg(a) for a in self.coeffs))

    def __sub__(self, other) -> "FFElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "FFElement":
        return -(self - other)

    def __mul__(self, other) -> "FFElement":
        other = self._lift(other)
        return FFElement(self.ctx, self.ctx._mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "FFElement":
        """Multiply by an F_q scalar given as an element code."""
        fq = self.ctx.fq
        return FFElement(self.ctx, tuple(fq.mul(c, a) for a in self.coeffs))

    def inverse(self) -> "FFElement":
        return self.ctx.invert(self)

    def __truediv__(self, other) -> "FFElement":
        return self * self._lift(other).inverse()

    def __pow__(self, k: int) -> "FFElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFElement)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


class FieldContext:
    """Immutable description of the tower, with write-once lazy caches."""

    def __init__(self, p: int, e: int, n: int, top_modulus: FqPoly | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("degenerate extension degrees")
        self.p = p
        self.e = e
        self.n = n
        if e == 1:
            self.fq = FqField(p)
        else:
            base_fp = FqField(p)
            h1 = least_irreducible(base_fp, e)
            self.fq = FqField(p, e, h1.coeffs)
        self.q = self.fq.q
        self.order = self.q**n
        if top_modulus is None:
            top_modulus = least_irreducible(self.fq, n)
        else:
            if top_modulus.fq != self.fq or top_modulus.degree != n or not top_modulus.is_monic():
                raise ValueError("top modulus must be monic of degree n over F_q")
        self.top_modulus = top_modulus
        self._vpow = self._reduction_table()
        self._lock = threading.RLock()  # reentrant: lazy fills call each other
        self._qn_minus_1: FactoredInt | None = None
        self._xn_minus_1: FactoredPoly | None = None
        self._frob_images: list[tuple[int, ...]] | None = None
        self._scan = None  # whole-field scan state, owned by fieldscan
        self.flat_dim = self.e * self.n
        self._ppow = self.p ** np.arange(self.flat_dim, dtype=np.int64)
        self._frob_mat: np.ndarray | None = None
        self._const_mats: dict[int, np.ndarray] = {}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldContext)
            and (self.p, self.e, self.n) == (other.p, other.e, other.n)
            and self.top_modulus.coeffs == other.top_modulus.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.n, self.top_modulus.coeffs))

    def __repr__(self) -> str:
        return f"FieldContext(q={self.q}, n={self.n})"

    def _reduction_table(self) -> list[tuple[int, ...]]:
        # v^(n+j) mod h2 for j = 0 .. n-2, as coefficient tuples
        fq, n = self.fq, self.n
        if n == 1:
            return []
        neg_low = [fq.neg(c) for c in self.top_modulus.coeffs[:-1]]
        rows = [tuple(neg_low)]
        for _ in range(n - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                shifted = [fq.add(c, fq.mul(top, nl)) for c, nl in zip(shifted, neg_low)]
            rows.append(tuple(shifted))
        return rows

    def _mul_coeffs(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        fq, n = self.fq, self.n
        if n == 1:
            return (fq.mul(a[0], b[0]),)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = fq.add(prod[i + j], fq.mul(ai, bj))
        out = prod[:n]
        for d in range(n, 2 * n - 1):
            c = prod[d]
            if c:
                row = self._vpow[d - n]
                out = [fq.add(x, fq.mul(c, r)) for x, r in zip(out, row)]
        return tuple(out)

    # -- element construction ----------------------------------------------

    def element(self, coeffs) -> FFElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"need exactly {self.n} coordinates, got {len(coeffs)}")
        for c in coeffs:
            if not (0 <= c < self.q):
                raise ValueError(f"coordinate code {c} out of range for q={self.q}")
        return FFElement(self, coeffs)

    def zero(self) -> FFElement:
        return FFElement(self, (0,) * self.n)

    def one(self) -> FFElement:
        return FFElement(self, (1,) + (0,) * (self.n - 1))

    def gen(self) -> FFElement:
        """The class of v (equals the scalar reduction of v when n = 1)."""
        if self.n == 1:
            return FFElement(self, (self.fq.neg(self.top_modulus.coeffs[0]),))
        return FFElement(self, (0, 1) + (0,) * (self.n - 2))

    def embed_scalar(self, c: int) -> FFElement:
        if not (0 <= c < self.q):
            raise ValueError(f"scalar code {c} out of range")
        return FFElement(self, (c,) + (0,) * (self.n - 1))

    def from_index(self, i: int) -> FFElement:
        coeffs = []
        for _ in range(self.n):
            i, r = divmod(i, self.q)
            coeffs.append(r)
        return FFElement(self, tuple(coeffs))

    def index(self, a: FFElement) -> int:
        i = 0
        for c in reversed(a.coeffs):
            i = i * self.q + c
        return i

    def elements(self):
        """All elements in index order; guarded by the enumeration cap."""
        if self.order > ENUMERATION_CAP:
            raise BudgetError(f"field of size {self.order} exceeds enumeration cap")
        for i in range(self.order):
            yield self.from_index(i)

    def random_element(self, rng: random.Random) -> FFElement:
        return self.from_index(rng.randrange(self.order))

    def invert(self, a: FFElement) -> FFElement:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = FqPoly(self.fq, a.coeffs)
        g, s = _poly_invert(f, self.top_modulus)
        if g.degree != 0:
            raise ValueError("element not invertible (modulus not irreducible?)")
        s = s.scale(self.fq.inv(g.coeffs[0]))
        return FFElement(self, tuple(s.coeffs) + (0,) * (self.n - len(s.coeffs)))

    # -- lazy caches --------------------------------------------------------

    def qn_minus_1(self, cache: FactorCache | None = None, rho_budget: int | None = None) -> FactoredInt:
        """Factorization of q^n - 1, computed once."""
        with self._lock:
            if self._qn_minus_1 is None:
                kwargs = {} if rho_budget is None else {"rho_budget": rho_budget}
                self._qn_minus_1 = factor_integer(self.order - 1, cache=cache, **kwargs)
            return self._qn_minus_1

    def xn_minus_1(self) -> FactoredPoly:
        """Factorization of x^n - 1 over F_q, computed once."""
        with self._lock:
            if self._xn_minus_1 is None:
                from . import cyclotomic

                self._xn_minus_1 = cyclotomic.factor_xm_minus_1(self.fq, self.n)
            return self._xn_minus_1

    def frob_images(self) -> list[tuple[int, ...]]:
        # (v^j)^q for j = 0 .. n-1; makes the q-power map a linear lookup
        with self._lock:
            if self._frob_images is None:
                vq = powmod(FqPoly.x(self.fq), self.q, self.top_modulus)
                w = FFElement(self, tuple(vq.coeffs) + (0,) * (self.n - len(vq.coeffs)))
                images = [self.one()]
                for _ in range(self.n - 1):
                    images.append(images[-1] * w)
                self._frob_images = [im.coeffs for im in images]
            return self._frob_images

    # -- flat F_p-linear views -------------------------------------------
    # The q-power map, multiplication by a fixed element and every L_f are
    # F_p-linear, so they act on the e*n base-p digit vector of an element
    # (which is exactly the digit vector of its enumeration index) as small
    # integer matrices mod p.  Row convention: apply as row @ matrix.

    def flat_digits(self, a: FFElement) -> np.ndarray:
        return (self.index(a) // self._ppow) % self.p

    def element_from_flat(self, row: np.ndarray) -> FFElement:
        return self.from_index(int(row @ self._ppow))

    def linear_matrix(self, fn) -> np.ndarray:
        rows = [self.flat_digits(fn(self.from_index(int(pw)))) for pw in self._ppow]
        return np.array(rows, dtype=np.int64)

    def frobenius_matrix(self) -> np.ndarray:
        with self._lock:
            if self._frob_mat is None:
                self._frob_mat = self.linear_matrix(lambda a: frobenius(self, a, 1))
            return self._frob_mat

    def const_matrix(self, c: int) -> np.ndarray:
        """Matrix of multiplication by the F_q scalar with code c."""
        with self._lock:
            if c not in self._const_mats:
                self._const_mats[c] = self.linear_matrix(lambda a: a.scale(c))
            return self._const_mats[c]

    def associate_matrix(self, f: FqPoly) -> np.ndarray:
        """Matrix of a -> L_f(a) = sum f_i a^(q^i) on the flat basis."""
        dim = self.flat_dim
        out = np.zeros((dim, dim), dtype=np.int64)
        frob_i = np.eye(dim, dtype=np.int64)
        m = self.frobenius_matrix()
        for i, c in enumerate(f.coeffs):
            if c:
                out = (out + frob_i @ self.const_matrix(c)) % self.p
            if i < len(f.coeffs) - 1:
                frob_i = frob_i @ m % self.p
        return out


def _poly_invert(f: FqPoly, mod: FqPoly) -> tuple[FqPoly, FqPoly]:
    # extended Euclid: returns (g, s) with s*f = g (mod `mod`), g the gcd
    fq = f.fq
    r0, r1 = mod, f % mod
    s0, s1 = FqPoly.zero(fq), FqPoly.one(fq)
    while r1:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
    return r0, s0


@functools.lru_cache(maxsize=None)
def build_field(p: int, e: int, n: int) -> FieldContext:
    """Deterministic construction of the tower F_p < F_{p^e} < F_{q^n}.

    Contexts are shared: repeated calls with equal arguments return the
    same object, and its derived data is bit-identical across runs.
    """
    return FieldContext(p, e, n)


def field_with_modulus(p: int, e: int, n: int, top_modulus: FqPoly) -> FieldContext:
    """A tower with an explicitly chosen (and validated) top modulus."""
    from .polyring import is_irreducible

    if not is_irreducible(top_modulus):
        raise ValueError(f"{top_modulus!r} is not irreducible")
    return FieldContext(p, e, n, top_modulus=top_modulus)


def frobenius(ctx: FieldContext, a: FFElement, i: int = 1) -> FFElement:
    """a^(q^i); the identity at i = 0, with i reduced mod n."""
    if a.ctx != ctx:
        raise ValueError("element from a different context")
    i %= ctx.n
    fq = ctx.fq
    coeffs = a.coeffs
    for _ in range(i):
        images = ctx.frob_images()
        acc = [0] * ctx.n
        for j, c in enumerate(coeffs):
            if c:
                row = images[j]
                acc = [fq.add(x, fq.mul(c, r)) for x, r in zip(acc, row)]
        coeffs = tuple(acc)
    return FFElement(ctx, coeffs)


def trace_to_subfield(ctx: FieldContext, a: FFElement, m: int) -> FFElement:
    """Relative trace onto F_{q^m}: sum of a^(q^(m*i)) over i = 0..n/m - 1."""
    if ctx.n % m != 0:
        raise ValueError(f"{m} does not divide {ctx.n}")
    acc = a
    b = a
    for _ in range(ctx.n // m - 1):
        b = frobenius(ctx, b, m)
        acc = acc + b
    return acc


def in_subfield(ctx: FieldContext, a: FFElement, m: int) -> bool:
    """Fixed point test for membership in F_{q^m}."""
    return frobenius(ctx, a, m) == a


def multiplicative_order(ctx: FieldContext, a: FFElement, cache: FactorCache | None = None) -> int:
    """Least t >= 1 with a^t = 1, by peeling primes of q^n - 1."""
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    fi = ctx.qn_minus_1(cache=cache)
    t = fi.value
    one = ctx.one()
    for r, _ in fi.factors:
        while t % r == 0 and a ** (t // r) == one:
            t //= r
    return t


def is_primitive(ctx: FieldContext, a: FFElement, cache: FactorCache | None = None) -> bool:
    """Whether a generates the multiplicative group (false for zero)."""
    if a.is_zero():
        return False
    fi = ctx.qn_minus_1(cache=cache)
    one = ctx.one()
    return all(a ** (fi.value // r) != one for r, _ in fi.factors)


def find_primitive(ctx: FieldContext, seed: int | None = None, cache: FactorCache | None = None) -> FFElement:
    """A primitive element: index-order scan, or seeded sampling if seed given."""
    if seed is None:
        i = 1
        while True:
            a = ctx.from_index(i)
            if is_primitive(ctx, a, cache=cache):
                return a
            i += 1
    rng = random.Random(seed)
    while True:
        a = ctx.random_element(rng)
        if is_primitive(ctx, a, cache=cache):
            return a
