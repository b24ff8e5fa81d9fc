from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normtrace import closedforms as cf
from normtrace import oracle as orc
from normtrace import pnab
from normtrace.errors import DivisibilityViolation
from normtrace.ntheory import mobius


def _field(p, e=1):
    return pnab.base_field(p, e)


@given(st.integers(1, 500), st.integers(1, 500))
def test_mobius_multiplicative(a, b):
    from math import gcd

    if gcd(a, b) == 1:
        assert mobius(a * b) == mobius(a) * mobius(b)


@pytest.mark.parametrize("p,e,nmax", [(2, 1, 7), (3, 1, 6), (5, 1, 5), (2, 2, 4)])
def test_pn_providers_equal_enumeration(p, e, nmax):
    F = _field(p, e)
    q = F.q
    closed = pnab.NnProvider("closed", cf.ERRATA)
    for n in range(1, nmax + 1):
        for a in range(q):
            for b in range(q):
                direct = orc.count_irreducible(F, n, a, b)
                assert pnab.pn(F, n, a, b, pnab.ORACLE) == direct, (n, a, b)
                if a and b:
                    assert pnab.pn(F, n, a, b, pnab.GAUSS) == direct
                    assert pnab.pn(F, n, a, b, closed) == direct


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_necklace_census(q):
    p, e = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}[q]
    F = _field(p, e)
    for n in range(1, 5 if q < 7 else 4):
        total = sum(pnab.pn(F, n, a, b) for a in range(q) for b in range(q))
        assert total == pnab.necklace_count(q, n)


def test_necklace_values():
    assert [pnab.necklace_count(2, n) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]


def test_pn_examples():
    F2, F3 = _field(2), _field(3)
    assert pnab.pn(F2, 3, 1, 1) == 1
    assert pnab.pn(F2, 5, 1, 1) == 3
    assert pnab.pn(F3, 3, 1, 1) == 1
    assert pnab.pn_closed(3, 3, 1, 1, cf.ERRATA) == 1
    assert pnab.pn(F2, 6, 1, 1) == orc.count_irreducible(F2, 6, 1, 1) == 5


def test_pn_degree_one_convention():
    F5 = _field(5)
    for a in range(5):
        for b in range(5):
            assert pnab.pn(F5, 1, a, b) == int(a == b)


def test_q2_prime_degrees():
    F2 = _field(2)
    for ell in (3, 5, 7, 11, 13):
        v = pnab.pn(F2, ell, 1, 1)
        assert v == (2 ** (ell - 1) - 1) // ell
        assert pnab.pn_closed(2, ell, 1, 1, cf.PAPER) == v
    # degree 2: the formula gives 1/2, while T^2 + T + 1 is the one irreducible
    assert pnab.pn(F2, 2, 1, 1) == 1
    assert Fraction(2 - 1, 2) == pnab.pn_printed(2, 2, 1, 1)


def test_lemma_as_printed_differs():
    F2 = _field(2)
    assert pnab.pn_lemma_as_printed(F2, 2, 1, 1) == Fraction(1, 2)
    F3 = _field(3)
    assert pnab.pn_lemma_as_printed(F3, 3, 1, 1) == Fraction(2, 3)


def test_printed_propositions_raise_when_non_integral():
    with pytest.raises(DivisibilityViolation):
        pnab.pn_closed(2, 6, 1, 1, cf.PAPER)
    assert pnab.pn_printed(2, 6, 1, 1) == Fraction(9, 2)


def test_provider_labels():
    assert pnab.ORACLE.label == "oracle"
    assert pnab.NnProvider("closed", "paper").label == "closed:paper_stated"
    with pytest.raises(ValueError):
        pnab.NnProvider("other")


def test_nth_roots():
    F5 = _field(5)
    assert pnab.nth_roots(F5, 2, 4) == [2, 3]
    assert pnab.nth_roots(F5, 2, 2) == []
    assert pnab.nth_roots(F5, 3, 2) == [3]
