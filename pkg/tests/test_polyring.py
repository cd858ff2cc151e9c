import random

import pytest

from knormal.basefield import FqField
from knormal.errors import BudgetError
from knormal.ff import build_field
from knormal.polyring import (
    FactoredPoly,
    FqPoly,
    all_divisors,
    count_squarefree_divisors_poly,
    degree_set,
    divisors_of_degree,
    euler_phi_poly,
    format_poly,
    format_poly_list,
    is_irreducible,
    least_irreducible,
    mobius_poly,
    parse_poly,
    poly_gcd,
    powmod,
)

F2 = FqField(2)
F3 = FqField(3)
F5 = FqField(5)


def rand_poly(fq, deg, rng):
    return FqPoly(fq, [rng.randrange(fq.q) for _ in range(deg)] + [rng.randrange(1, fq.q)])


def test_mul_hand_example():
    # (x - 1)(x + 1) = x^2 - 1 = x^2 + 2 over F_3
    assert FqPoly(F3, (2, 1)) * FqPoly(F3, (1, 1)) == FqPoly(F3, (2, 0, 1))


def test_divrem_x7_minus_1():
    q, r = divmod(FqPoly.x_pow_minus_one(F5, 7), FqPoly(F5, (4, 1)))
    assert q == FqPoly(F5, (1,) * 7)
    assert not r


def test_gcd_with_zero_is_monic():
    f = FqPoly(F3, (2, 2))  # 2x + 2
    assert poly_gcd(f, FqPoly.zero(F3)) == FqPoly(F3, (1, 1))
    assert poly_gcd(FqPoly.zero(F3), f) == FqPoly(F3, (1, 1))


def test_gcd_common_factor():
    rng = random.Random(1)
    for _ in range(30):
        c = rand_poly(F3, rng.randrange(1, 4), rng)
        a = rand_poly(F3, rng.randrange(0, 4), rng) * c
        b = rand_poly(F3, rng.randrange(0, 4), rng) * c
        g = poly_gcd(a, b)
        assert not a % g and not b % g
        assert not g % c.monic()  # c divides both, hence their gcd


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        FqPoly(F2, (1, 1)) + FqPoly(F3, (1, 1))
    with pytest.raises(ZeroDivisionError):
        divmod(FqPoly(F3, (1, 1)), FqPoly.zero(F3))


def test_karatsuba_matches_schoolbook():
    from knormal.polyring import _mul_karatsuba, _mul_school

    rng = random.Random(7)
    for fq in (F2, F3, build_field(2, 2, 1).fq):
        a = [rng.randrange(fq.q) for _ in range(150)]
        b = [rng.randrange(fq.q) for _ in range(123)]
        assert _mul_karatsuba(fq, a, b) == _mul_school(fq, a, b)


def test_divmod_reconstructs():
    rng = random.Random(3)
    for _ in range(40):
        a = rand_poly(F5, rng.randrange(0, 12), rng)
        b = rand_poly(F5, rng.randrange(0, 6), rng)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_powmod():
    f = FqPoly(F3, (1, 0, 1))  # x^2 + 1, irreducible over F_3
    assert powmod(FqPoly.x(F3), 9, f) == FqPoly.x(F3)  # x^(q^2) = x mod f


def test_eval():
    f = parse_poly(F5, "3 + x + 2*x^2")
    for a in range(5):
        assert f.eval(a) == (3 + a + 2 * a * a) % 5


# -- irreducibility ----------------------------------------------------------


def _count_monic_irreducibles(fq, d):
    count = 0
    for idx in range(fq.q**d):
        coeffs = []
        rest = idx
        for _ in range(d):
            rest, c = divmod(rest, fq.q)
            coeffs.append(c)
        if is_irreducible(FqPoly(fq, coeffs + [1])):
            count += 1
    return count


@pytest.mark.parametrize(
    "fq,d",
    [(F2, 1), (F2, 2), (F2, 3), (F2, 4), (F2, 6), (F3, 2), (F3, 3), (F5, 2)],
)
def test_irreducible_count_matches_gauss_formula(fq, d):
    # number of monic irreducibles of degree d is (1/d) sum mu(d/e) q^e
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius_int(d // e) * fq.q**e
    assert _count_monic_irreducibles(fq, d) == total // d


def _mobius_int(n):
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def test_least_irreducible_is_least():
    # brute scan in canonical order must agree
    for fq, d in [(F2, 3), (F3, 2), (F5, 2)]:
        best = least_irreducible(fq, d)
        for idx in range(fq.q**d):
            coeffs = []
            rest = idx
            for i in range(d - 1, -1, -1):
                c, rest = divmod(rest, fq.q**i)
                coeffs.append(c)
            f = FqPoly(fq, tuple(coeffs) + (1,))
            if is_irreducible(f):
                assert f == best
                break


def test_least_irreducible_degree_one_is_x():
    assert least_irreducible(F2, 1) == FqPoly.x(F2)
    assert least_irreducible(F5, 1) == FqPoly.x(F5)


# -- factored polynomials ----------------------------------------------------


def _fp(ctx):
    return ctx.xn_minus_1()


def test_phi_examples():
    ctx = build_field(5, 1, 7)
    fp = _fp(ctx)
    xm1, big = fp.factors[0][0], fp.factors[1][0]
    assert euler_phi_poly(FactoredPoly(F5, ((xm1, 1),))) == 4
    assert euler_phi_poly(FactoredPoly(F5, ((big, 1),))) == 5**6 - 1
    assert euler_phi_poly(fp) == 4 * 15624


def test_phi_sum_is_q_to_deg():
    # sum of Phi over all divisors of x^n - 1 equals q^n
    for p, e, n in [(2, 1, 12), (2, 1, 9), (3, 1, 8), (2, 2, 6), (3, 2, 4), (5, 1, 6), (7, 1, 4)]:
        ctx = build_field(p, e, n)
        fp = _fp(ctx)
        total = 0
        for d in all_divisors(fp):
            exps = []
            rem = d
            phi = 1
            for P, m in fp.factors:
                cnt = 0
                while cnt < m:
                    quot, r = divmod(rem, P)
                    if r:
                        break
                    rem, cnt = quot, cnt + 1
                if cnt:
                    dd = P.degree
                    phi *= ctx.q ** (dd * cnt) - ctx.q ** (dd * (cnt - 1))
            total += phi
        assert total == ctx.q**n


def test_mobius_examples():
    ctx = build_field(5, 1, 7)
    fp = _fp(ctx)
    assert mobius_poly(fp) == 1  # two distinct irreducibles
    one = FactoredPoly(F5, ())
    assert mobius_poly(one) == 1
    sq = FactoredPoly(F5, ((FqPoly(F5, (4, 1)), 2),))
    assert mobius_poly(sq) == 0
    single = FactoredPoly(F5, ((FqPoly(F5, (4, 1)), 1),))
    assert mobius_poly(single) == -1


def test_w_poly():
    assert count_squarefree_divisors_poly(FactoredPoly(F5, ())) == 1
    assert count_squarefree_divisors_poly(_fp(build_field(5, 1, 7))) == 4
    assert count_squarefree_divisors_poly(_fp(build_field(3, 1, 4))) == 8


def test_multiplicativity_on_coprime_parts():
    ctx = build_field(3, 1, 4)
    fp = _fp(ctx)  # three distinct irreducibles
    (a, _), (b, _), (c, _) = fp.factors
    pa = FactoredPoly(F3, ((a, 1),))
    pbc = FactoredPoly(F3, tuple(sorted([(b, 1), (c, 1)], key=lambda t: t[0].sort_key())))
    whole = FactoredPoly(F3, fp.factors)
    assert euler_phi_poly(whole) == euler_phi_poly(pa) * euler_phi_poly(pbc)
    assert mobius_poly(whole) == mobius_poly(pa) * mobius_poly(pbc)
    assert count_squarefree_divisors_poly(whole) == count_squarefree_divisors_poly(
        pa
    ) * count_squarefree_divisors_poly(pbc)


def test_divisors_of_degree():
    ctx57 = build_field(5, 1, 7)
    assert divisors_of_degree(_fp(ctx57), 0) == [FqPoly.one(F5)]
    assert divisors_of_degree(_fp(ctx57), 2) == []
    ctx34 = build_field(3, 1, 4)
    got = divisors_of_degree(_fp(ctx34), 2)
    assert got == sorted([FqPoly(F3, (2, 0, 1)), FqPoly(F3, (1, 0, 1))], key=FqPoly.sort_key)
    with pytest.raises(ValueError):
        divisors_of_degree(_fp(ctx34), 5)


def test_divisor_list_length_matches_generating_function():
    # coefficient of z^k in prod (1 + z^d + ... + z^(d*m)) counts divisors
    for p, e, n in [(2, 1, 12), (3, 1, 8), (2, 2, 6)]:
        ctx = build_field(p, e, n)
        fp = _fp(ctx)
        gen = [1]
        for f, m in fp.factors:
            nxt = [0] * (len(gen) + f.degree * m)
            for i, v in enumerate(gen):
                for j in range(m + 1):
                    nxt[i + j * f.degree] += v
            gen = nxt
        for k in range(n + 1):
            assert len(divisors_of_degree(fp, k)) == gen[k]


def test_degree_set():
    assert degree_set(_fp(build_field(5, 1, 7))) == {0, 1, 6, 7}
    assert degree_set(_fp(build_field(3, 1, 4))) == {0, 1, 2, 3, 4}
    assert degree_set(_fp(build_field(2, 1, 8))) == set(range(9))  # (x-1)^8


def test_divisor_cap():
    ctx = build_field(3, 1, 4)
    import knormal.polyring as pr

    old = pr.DIVISOR_CAP
    pr.DIVISOR_CAP = 3
    try:
        with pytest.raises(BudgetError):
            all_divisors(_fp(ctx))
    finally:
        pr.DIVISOR_CAP = old


# -- text formats -------------------------------------------------------------


def test_format_parse_roundtrip():
    rng = random.Random(9)
    for _ in range(50):
        f = rand_poly(F5, rng.randrange(0, 8), rng)
        assert parse_poly(F5, format_poly(f)) == f
        assert parse_poly(F5, format_poly_list(f)) == f
    assert format_poly(FqPoly.zero(F5)) == "0"
    assert parse_poly(F5, "[]") == FqPoly.zero(F5)


def test_parse_rejects_out_of_range():
    with pytest.raises(ValueError):
        parse_poly(F3, "5 + x")
    with pytest.raises(ValueError):
        parse_poly(F3, "[1,4]")
    with pytest.raises(ValueError):
        parse_poly(F3, "")
    with pytest.raises(ValueError):
        parse_poly(F3, "1 + x + x")


def test_canonical_order():
    a = FqPoly(F3, (1, 1))
    b = FqPoly(F3, (2, 1))
    c = FqPoly(F3, (0, 0, 1))
    assert sorted([c, b, a], key=FqPoly.sort_key) == [a, b, c]
