import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normtrace import bounds as bd
from normtrace import fieldtower as ft
from normtrace import oracle as orc
from normtrace.bounds import Surd

getcontext().prec = 80


def _decimal(s: Surd) -> Decimal:
    r = Decimal(s.q).sqrt().sqrt()
    return sum(Decimal(c.numerator) / Decimal(c.denominator) * r**k for k, c in enumerate(s.c))


coef = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16]), coef, coef, coef, coef)
def test_surd_sign_matches_high_precision(q, c0, c1, c2, c3):
    s = Surd(q, (c0, c1, c2, c3))
    v = _decimal(s)
    expect = 0 if abs(v) < Decimal(10) ** -60 else (1 if v > 0 else -1)
    assert s.sign() == expect


@given(st.sampled_from([2, 3, 5, 7]), coef, coef, coef, coef)
def test_surd_arithmetic(q, c0, c1, c2, c3):
    x = Surd(q, (c0, c1, c2, c3))
    y = Surd.qpow4(q, 3) + c0
    assert abs(_decimal(x * y) - _decimal(x) * _decimal(y)) < Decimal(10) ** -40
    assert (x - x).sign() == 0
    if c1:
        assert abs(_decimal(x / c1) - _decimal(x) / (Decimal(c1.numerator) / c1.denominator)) < Decimal(10) ** -40


def test_surd_perfect_powers():
    assert Surd.qpow2(4, 1) == 2
    assert Surd.qpow2(9, 3) == 27
    assert (Surd.qpow2(5, 1) * Surd.qpow2(5, 1)) == 5


def test_katz_examples():
    b = bd.katz(3, 3)
    assert b.center == Fraction(26, 6)
    assert b.radius == 3 * Surd.qpow2(3, 1)
    assert math.isclose(float(b.radius), 5.196152422706632)
    assert b.holds_for(3)
    b = bd.katz(2, 4)
    assert b.center == Fraction(15, 2) and b.radius == 8 and b.holds_for(8)


def test_moisio_b0_examples(tower):
    b = bd.moisio_b0(3, 3)
    assert b.radius == 0 and b.center == 4
    assert all(orc.count_norm_trace(tower(3, 1, 3), a, 0) == 4 for a in (1, 2))
    b = bd.moisio_b0(3, 2)
    assert b.center == 1 and b.radius == 1
    C = orc.norm_trace_census(tower(3, 1, 2))
    assert (C[1, 0], C[2, 0]) == (2, 0)
    assert bd.moisio_b0(5, 4).radius == 15


def test_moisio_wan_and_as_bounds():
    assert bd.moisio_wan(3, 3).radius == 2 * Surd.qpow2(3, 1)
    assert bd.moisio_wan(2, 5).radius == 4 * Surd.qpow2(2, 3)
    assert bd.as_bound1(3, 5).radius == 3 * Surd.qpow2(3, 3) / 3 + Fraction(1, 2)
    assert bd.as_bound1(2, 7).radius == 1
    assert bd.as_bound2(3, 2).radius == 1
    r = (1 + 3 * Surd.qpow2(5, 3) - 5 * (Surd.qpow2(5, 1) - 1) * 3) / 4
    assert bd.as_bound2(5, 4).radius == r
    assert bd.compare_radii(bd.as_bound2(5, 4), bd.moisio_wan(5, 4)) < 0


def test_n3_range_values(tower):
    assert bd.n3_range(3) == (3, 6)
    assert bd.n3_range(4) == (3, 9)
    assert bd.n3_range(5) == (3, 9)
    C5 = orc.norm_trace_census(tower(5, 1, 3))
    values = {int(C5[a, b]) for a in range(1, 5) for b in range(1, 5)}
    assert min(values) == 3 and max(values) == 9


def test_curve_bound_examples():
    assert bd.hasse_weil(3, 2).radius == 6
    assert bd.hasse_weil(2, 7).radius == 0
    assert bd.hasse_weil(4, 3).radius == 48
    assert bd.improved_hw(2, 5, False).radius == 0 and bd.improved_hw(2, 5, True).radius == 0
    b = bd.improved_hw(3, 2, True)
    assert b.center == 7 and b.radius == 6
    b = bd.improved_hw(3, 3, False)
    assert b.center == 28 and b.radius == 9
    assert b.holds_for(19) and b.holds_for(37) and not b.holds_for(38)
    assert bd.curve_via_toric(5, 2).radius == 25
    assert bd.curve_via_toric(3, 2).radius == 3 + 6 * Surd.qpow2(3, 0)


def test_toric_bound_examples():
    b = bd.toric_mw(3, 3)
    assert b.center == 1 and b.radius == 2 * 3
    assert b.holds_for(0) and b.holds_for(3)
    assert bd.toric_improved(3, 3).radius == bd.as_bound2_radius(3, 3)


def test_pn_bound_examples():
    b = bd.q2_prime_pn(5)
    assert b.center == Fraction(16, 5) and b.holds_for(3)
    assert bd.wan_pn(3, 4).center == Fraction(27, 8)
    assert bd.new_pn(3, 4).center == Fraction(80, 24)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_improved_hw_never_looser(q):
    for n in range(1, 12):
        for b0 in (False, True):
            assert bd.compare_radii(bd.improved_hw(q, n, b0), bd.hasse_weil(q, n)) <= 0


def test_as_bound1_claim_on_grid():
    """Tighter than Moisio-Wan whenever n > q - 1, except the tie at q = 2, n = 2."""
    exceptions = []
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        for n in range(2, 40):
            if bd.as_bound1_claims_improvement(q, n):
                if bd.compare_radii(bd.as_bound1(q, n), bd.moisio_wan(q, n)) >= 0:
                    exceptions.append((q, n))
    assert exceptions == [(2, 2)]


def _as2_exceptions(claim):
    out = []
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        for n in range(2, 40):
            if claim(q, n) and bd.compare_radii(bd.as_bound2(q, n), bd.moisio_wan(q, n)) >= 0:
                out.append((q, n))
    return out


def test_as_bound2_claim_as_printed_has_exceptions():
    assert _as2_exceptions(bd.as_bound2_claims_improvement) == [
        (2, 2), (3, 2), (4, 2), (5, 2), (7, 2), (8, 2), (8, 3), (9, 2), (9, 3), (11, 2), (11, 3),
        (13, 3), (16, 3), (16, 4),
    ]


def test_as_bound2_claim_with_corrected_threshold():
    def corrected(q, n):
        if n % (q - 1) == 0:
            return True
        return Fraction(q - 2, q - 1) * Surd.qpow2(q, 1) + 1 < n

    # only the q = 2, 3 ties at n = 2 (where q - 1 | n) remain
    assert _as2_exceptions(corrected) == [(2, 2), (3, 2)]


def test_bounds_hold_on_grid(tower):
    for p, e, nmax in [(2, 1, 10), (3, 1, 7), (2, 2, 5), (5, 1, 5), (7, 1, 4)]:
        for n in range(2, nmax + 1):
            t = tower(p, e, n)
            C = orc.norm_trace_census(t)
            q = t.q
            for a in range(1, q):
                for b in range(1, q):
                    for f in bd.NN_BOUNDS:
                        assert f(q, n).holds_for(int(C[a, b])), (f.__name__, q, n, a, b)
                assert bd.moisio_b0(q, n).holds_for(int(C[a, 0]))
                for b in range(q):
                    X = orc.count_curve_points_tracefiber(t, ft.norm_preimage(t, t.mid(a)),
                                                          ft.trace_preimage(t, t.mid(b)))
                    assert bd.hasse_weil(q, n).holds_for(X)
                    assert bd.improved_hw(q, n, b == 0, corrected_center=True).holds_for(X)
                    if b:
                        assert bd.curve_via_toric(q, n).holds_for(X)


def test_improved_hw_b0_printed_center_fails_in_both_conventions(tower):
    t = tower(3, 1, 2)
    counts = sorted(orc.count_curve_points_tracefiber(t, ft.norm_preimage(t, t.mid(a)), t.top(0)) for a in (1, 2))
    assert counts == [4, 16]
    b = bd.improved_hw(3, 2, True)
    assert not b.holds_for(16)  # projective
    assert not b.holds_for(16 - 1)  # affine
    assert bd.improved_hw(3, 2, True, corrected_center=True).holds_for(16)
