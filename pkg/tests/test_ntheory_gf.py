import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normtrace.errors import NotPrime
from normtrace.gf import GF, prime_field
from normtrace.ntheory import divisors, factorize, is_prime, mobius


def _mobius_naive(t):
    # sum_{d | t} mu(d) = [t == 1] determines mu recursively
    if t == 1:
        return 1
    return -sum(_mobius_naive(d) for d in range(1, t) if t % d == 0)


@pytest.mark.parametrize("t,mu", [(1, 1), (4, 0), (6, 1), (2, -1), (30, -1), (12, 0)])
def test_mobius_values(t, mu):
    assert mobius(t) == mu


def test_mobius_matches_divisor_sum_recursion():
    for t in range(1, 80):
        assert mobius(t) == _mobius_naive(t)


@given(st.integers(1, 10**6))
def test_factorize_roundtrip(n):
    prod = 1
    for p, k in factorize(n).items():
        assert is_prime(p)
        prod *= p**k
    assert prod == n


def test_is_prime_small():
    primes = [n for n in range(2, 200) if all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == primes


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_not_prime_field():
    with pytest.raises(NotPrime):
        GF(4)


def _roots(F, f):
    return [x for x in range(F.q) if F.poly_eval(f, x) == 0]


def test_irreducible_examples():
    F2 = prime_field(2)
    assert F2.is_irreducible([1, 1, 1])  # x^2 + x + 1
    assert F2.is_irreducible([1, 0, 1, 1])  # x^3 + x^2 + 1
    F3 = prime_field(3)
    f = [2, 2, 2, 1]  # x^3 + 2x^2 + 2x + 2
    # a cubic is irreducible iff it has no root; the values are 2, 1, 1
    assert [F3.poly_eval(f, x) for x in range(3)] == [2, 1, 1]
    assert F3.is_irreducible(f)


@pytest.mark.parametrize("p,deg", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)])
def test_irreducible_low_degree_equals_no_root(p, deg):
    F = prime_field(p)
    for mids in itertools.product(range(p), repeat=deg):
        f = list(mids) + [1]
        assert F.is_irreducible(f) == (not _roots(F, f))


def test_irreducible_count_degree_four_over_f2():
    F = prime_field(2)
    count = sum(F.is_irreducible(list(c) + [1]) for c in itertools.product(range(2), repeat=4))
    assert count == 3  # x^4+x+1, x^4+x^3+1, x^4+x^3+x^2+x+1


F4 = GF(2, (1, 1, 1))
F9 = GF(3, (1, 0, 1))
F5 = prime_field(5)


@pytest.mark.parametrize("F", [F4, F5, F9], ids=["F4", "F5", "F9"])
def test_field_axioms(F):
    q = F.q
    for x in range(q):
        assert F._addl[x][0] == x and F._mull[x][1] == x
        if x:
            assert F._mull[x][F.inverse(x)] == 1
        for y in range(q):
            assert F._addl[x][y] == F._addl[y][x]
            for z in range(0, q, 2):
                lhs = F._mull[x][F._addl[y][z]]
                rhs = F._addl[F._mull[x][y]][F._mull[x][z]]
                assert lhs == rhs


def test_f4_generator_cube():
    w = 2
    assert F4._mull[w][F4._mull[w][w]] == 1


def test_f3_product():
    assert prime_field(3)._mull[2][2] == 1


def test_dlog_f5():
    assert F5.dlog(4) == 2 and F5.dlog(1) == 0


@given(st.integers(0, 8), st.integers(0, 30))
def test_pow_matches_repeated_product(x, k):
    acc = 1
    for _ in range(k):
        acc = F9._mull[acc][x]
    assert F9.pow(x, k) == acc
