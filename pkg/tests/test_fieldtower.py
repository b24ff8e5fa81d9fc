from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normtrace import fieldtower as ft
from normtrace.errors import DivisionByZero, LevelMismatch, NotPrime, ZeroArgument
from normtrace.ntheory import prime_divisors


def test_trivial_tower(tower):
    t = tower(2, 1, 1)
    assert t.q == 2 and t.order == 2
    assert t.base_modulus == (0, 1) and t.top_modulus == (0, 1)


def test_f4_modulus_is_unique_quadratic(tower):
    assert tower(2, 2, 1).base_modulus == (1, 1, 1)


def test_cubic_modulus_is_irreducible(tower):
    t = tower(3, 1, 3)
    assert ft.is_irreducible(t.top_modulus, t.fq)


def test_not_prime():
    with pytest.raises(NotPrime):
        ft.build_tower(6, 1, 2)


def test_deterministic_and_seeded():
    a, b = ft.build_tower(3, 1, 4, seed=0), ft.build_tower(3, 1, 4, seed=0)
    assert a.to_json() == b.to_json()
    c = ft.build_tower(3, 1, 4, seed=7)
    assert ft.is_irreducible(c.top_modulus, c.fq)


@pytest.mark.parametrize("p,e,n", [(2, 1, 5), (2, 2, 3), (3, 1, 4), (5, 1, 3), (3, 2, 2), (7, 1, 2)])
def test_primitive_elements(tower, p, e, n):
    t = tower(p, e, n)
    g = ft.primitive_top(t)
    Q = t.order
    assert (g ** (Q - 1)).index == 1
    for ell in prime_divisors(Q - 1):
        assert (g ** ((Q - 1) // ell)).index != 1
    gq = ft.primitive_mid(t)
    for ell in prime_divisors(t.q - 1):
        assert (gq ** ((t.q - 1) // ell)).index != 1
    h = ft.norm(g)
    assert sorted((h**k).index for k in range(t.q - 1)) == list(range(1, t.q))


def test_f4_arith(tower):
    t = tower(2, 2, 1)
    w = t.mid(2)
    assert (w * w * w).index == 1
    assert (t.mid(1) ** -1).index == 1


def test_errors(tower):
    t = tower(3, 1, 2)
    with pytest.raises(DivisionByZero):
        t.top(0) ** -1
    with pytest.raises(LevelMismatch):
        t.top(1) + t.mid(1)
    with pytest.raises(LevelMismatch):
        ft.trace(t.mid(1))
    with pytest.raises(ZeroArgument):
        ft.discrete_log(t, t.top(0))
    with pytest.raises(ZeroArgument):
        ft.norm_preimage(t, t.mid(0))


def test_f9_trace_and_norm(tower):
    t = tower(3, 1, 2)
    assert t.top_modulus == (1, 0, 1)  # F_9 = F_3(i), i^2 = -1
    for x in range(3):
        for y in range(3):
            z = t.top(x + 3 * y)
            assert ft.trace(z).index == (2 * x) % 3
            assert ft.norm(z).index == (x * x + y * y) % 3


def test_f8_fibers(tower):
    t = tower(2, 1, 3)
    assert sum(ft.trace(z).index == 1 for z in t.top_elements()) == 4
    assert all(ft.norm(z).index == 1 for z in t.top_elements() if not z.is_zero())


@pytest.mark.parametrize("p,e,n", [(2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4), (3, 2, 2)])
def test_fiber_sizes(tower, p, e, n):
    t = tower(p, e, n)
    norms = Counter(ft.norm(z).index for z in t.top_elements())
    traces = Counter(ft.trace(z).index for z in t.top_elements())
    assert norms[0] == 1
    assert all(norms[a] == (t.order - 1) // (t.q - 1) for a in range(1, t.q))
    assert all(traces[b] == t.order // t.q for b in range(t.q))


top_tower = ft.build_tower(3, 1, 3)
elem = st.integers(0, top_tower.order - 1).map(top_tower.top)


@given(elem, elem)
def test_norm_multiplicative_trace_additive(z, w):
    assert ft.norm(z * w) == ft.norm(z) * ft.norm(w)
    assert ft.trace(z + w) == ft.trace(z) + ft.trace(w)


@given(elem, st.integers(0, 2))
def test_trace_is_linear_over_fq(z, c):
    cz = top_tower.embed(top_tower.mid(c)) * z
    assert ft.trace(cz) == top_tower.mid(c) * ft.trace(z)


@given(elem.filter(lambda z: not z.is_zero()))
def test_discrete_log_inverts_power(z):
    k = ft.discrete_log(top_tower, z)
    assert 0 <= k < top_tower.order - 1
    assert ft.primitive_top(top_tower) ** k == z


def test_discrete_log_basics(tower):
    t = tower(5, 1, 1)
    assert t.g_q == 2
    assert ft.discrete_log(t, t.mid(4)) == 2
    assert ft.discrete_log(t, t.mid(1)) == 0
    g = ft.primitive_top(tower(3, 1, 2))
    assert ft.discrete_log(tower(3, 1, 2), g) == 1


@pytest.mark.parametrize("p,e,n", [(2, 2, 2), (3, 1, 2), (5, 1, 3), (2, 1, 4)])
def test_preimages(tower, p, e, n):
    t = tower(p, e, n)
    for a in range(1, t.q):
        assert ft.norm(ft.norm_preimage(t, t.mid(a))).index == a
    for b in range(t.q):
        assert ft.trace(ft.trace_preimage(t, t.mid(b))).index == b
    assert ft.trace_preimage(t, t.mid(0)).is_zero()


def test_f9_norm_two_preimage(tower):
    t = tower(3, 1, 2)
    assert ft.norm(t.top(1 + 3)).index == 2  # 1 + i


def test_f4_trace_preimage_example(tower):
    t = tower(2, 1, 2)
    w = t.top(2)
    assert ft.trace(w).index == 1


@pytest.mark.parametrize("p,e,n", [(2, 2, 2), (3, 1, 3), (5, 1, 2)])
def test_preimage_pairs_distinct(tower, p, e, n):
    t = tower(p, e, n)
    for a in range(1, t.q):
        for b in range(t.q):
            pairs = ft.preimage_pairs(t, t.mid(a), t.mid(b), 3)
            assert len(pairs) == 3 and len(set((x.index, y.index) for x, y in pairs)) == 3
            for x, y in pairs:
                assert ft.norm(x).index == a and ft.trace(y).index == b


def test_preimage_pairs_degree_one(tower):
    t = tower(5, 1, 1)
    assert len(ft.preimage_pairs(t, t.mid(2), t.mid(3), 2)) == 1
