import random

import pytest

from knormal.basefield import FqField
from knormal.errors import BudgetError
from knormal.ff import (
    build_field,
    field_with_modulus,
    find_primitive,
    frobenius,
    in_subfield,
    is_primitive,
    multiplicative_order,
    trace_to_subfield,
)
from knormal.polyring import FqPoly, format_poly, is_irreducible

from oracles import slow_multiplicative_order


def test_build_field_deterministic_and_shared():
    a = build_field(3, 2, 2)
    b = build_field(3, 2, 2)
    assert a is b
    assert a.q == 9 and a.order == 81
    assert is_irreducible(a.top_modulus)
    assert is_irreducible(FqPoly(FqField(3), a.fq.modulus))


def test_identity_extension():
    ctx = build_field(2, 1, 1)
    assert format_poly(ctx.top_modulus) == "x"
    assert ctx.order == 2
    one = ctx.one()
    assert one + one == ctx.zero()
    assert ctx.gen() == ctx.zero()  # v is the root of the degree-1 modulus x


def test_q9_n2_group_size():
    ctx = build_field(3, 2, 2)
    assert ctx.qn_minus_1().factors == ((2, 4), (5, 1))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        build_field(4, 1, 2)
    with pytest.raises(ValueError):
        build_field(2, 1, 0)
    ctx = build_field(2, 1, 2)
    with pytest.raises(ValueError):
        ctx.element((0, 1, 0))
    with pytest.raises(ValueError):
        ctx.element((0, 5))


@pytest.mark.parametrize("p,e,n", [(2, 1, 5), (3, 1, 3), (2, 2, 3), (5, 1, 2), (3, 2, 2)])
def test_field_axioms_random_triples(p, e, n):
    ctx = build_field(p, e, n)
    rng = random.Random(1000 * p + 10 * e + n)
    for _ in range(1000):
        a, b, c = (ctx.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == ctx.zero()
        if not a.is_zero():
            assert a * a.inverse() == ctx.one()


def test_index_roundtrip():
    ctx = build_field(2, 2, 3)
    for i in range(ctx.order):
        assert ctx.index(ctx.from_index(i)) == i


def test_frobenius_basics():
    ctx = build_field(2, 1, 2)
    u = ctx.gen()
    assert frobenius(ctx, u, 0) == u
    assert frobenius(ctx, u, 1) == u + ctx.one()  # u^2 = u + 1
    assert frobenius(ctx, u, ctx.n) == u


def test_frobenius_fixes_scalars():
    ctx = build_field(3, 2, 2)
    for c in ctx.fq.elements():
        a = ctx.embed_scalar(c)
        for i in range(4):
            assert frobenius(ctx, a, i) == a


def test_frobenius_is_field_automorphism():
    ctx = build_field(2, 2, 3)
    rng = random.Random(4)
    for _ in range(100):
        a, b = ctx.random_element(rng), ctx.random_element(rng)
        assert frobenius(ctx, a + b, 1) == frobenius(ctx, a, 1) + frobenius(ctx, b, 1)
        assert frobenius(ctx, a * b, 1) == frobenius(ctx, a, 1) * frobenius(ctx, b, 1)


def test_frobenius_matches_direct_powering():
    ctx = build_field(3, 1, 4)
    rng = random.Random(5)
    for _ in range(50):
        a = ctx.random_element(rng)
        i = rng.randrange(0, 5)
        assert frobenius(ctx, a, i) == a ** (ctx.q**i)


def test_trace_trivial_cases():
    ctx = build_field(5, 1, 2)
    rng = random.Random(6)
    a = ctx.random_element(rng)
    assert trace_to_subfield(ctx, a, ctx.n) == a
    assert trace_to_subfield(ctx, ctx.zero(), 1).is_zero()
    with pytest.raises(ValueError):
        trace_to_subfield(ctx, a, 3)


@pytest.mark.parametrize("p,e,n,m", [(2, 1, 4, 2), (2, 1, 4, 1), (3, 1, 4, 2), (2, 2, 4, 2)])
def test_trace_lands_in_subfield_and_surjects(p, e, n, m):
    ctx = build_field(p, e, n)
    images = set()
    for a in ctx.elements():
        b = trace_to_subfield(ctx, a, m)
        assert in_subfield(ctx, b, m)
        images.add(b.coeffs)
    assert len(images) == ctx.q**m  # onto the subfield


def test_trace_linear_over_subfield():
    ctx = build_field(2, 1, 4)
    rng = random.Random(8)
    subfield = [a for a in ctx.elements() if in_subfield(ctx, a, 2)]
    for _ in range(50):
        z = ctx.random_element(rng)
        c = rng.choice(subfield)
        assert trace_to_subfield(ctx, c * z, 2) == c * trace_to_subfield(ctx, z, 2)


def test_multiplicative_order_basics():
    ctx = build_field(5, 1, 2)
    assert multiplicative_order(ctx, ctx.one()) == 1
    minus_one = -ctx.one()
    assert multiplicative_order(ctx, minus_one) == 2
    with pytest.raises(ValueError):
        multiplicative_order(ctx, ctx.zero())


def test_order_of_explicit_cubic_root():
    # alpha a root of x^3 - x - 2 over F_3 has order 26
    f = FqPoly(FqField(3), (1, 2, 0, 1))
    ctx = field_with_modulus(3, 1, 3, f)
    alpha = ctx.gen()
    assert multiplicative_order(ctx, alpha) == 26
    assert slow_multiplicative_order(ctx, alpha) == 26


def test_order_matches_slow_oracle():
    ctx = build_field(2, 1, 4)
    for a in ctx.elements():
        if not a.is_zero():
            assert multiplicative_order(ctx, a) == slow_multiplicative_order(ctx, a)


def test_is_primitive():
    ctx = build_field(2, 1, 2)
    prims = [a for a in ctx.elements() if is_primitive(ctx, a)]
    assert len(prims) == 2  # the two elements outside F_2
    ctx25 = build_field(5, 1, 2)
    assert not is_primitive(ctx25, ctx25.one())
    assert not is_primitive(ctx25, ctx25.zero())
    assert sum(1 for a in ctx25.elements() if is_primitive(ctx25, a)) == 8  # phi(24)


@pytest.mark.parametrize("p,e,n", [(2, 1, 6), (3, 1, 4), (2, 2, 3), (7, 1, 2)])
def test_primitive_count_is_phi(p, e, n):
    ctx = build_field(p, e, n)
    expected = ctx.qn_minus_1().phi()
    assert sum(1 for a in ctx.elements() if is_primitive(ctx, a)) == expected


def test_find_primitive_deterministic():
    ctx = build_field(3, 1, 3)
    a = find_primitive(ctx)
    assert a == find_primitive(ctx)
    assert is_primitive(ctx, a)
    b = find_primitive(ctx, seed=11)
    assert is_primitive(ctx, b)


def test_enumeration_cap():
    ctx = build_field(2, 1, 21)  # 2^21 elements, over the cap
    with pytest.raises(BudgetError):
        next(ctx.elements())


def test_explicit_modulus_must_be_irreducible():
    with pytest.raises(ValueError):
        field_with_modulus(2, 1, 2, FqPoly(FqField(2), (0, 0, 1)))  # x^2
