"""Bounds on N_n(a,b), #X, #Y_u and P_n(a,b) as exact (center, radius) pairs.

Radii are sums of rational multiples of q^{k/4}, so they live in the span of
1, r, r^2, r^3 with r = q^{1/4}.  :class:`Surd` keeps that representation
and decides signs exactly by squaring, so every "holds" and every "tighter"
is a theorem about integers rather than a floating comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

_Q = Fraction


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_quad(u: Fraction, v: Fraction, q: int) -> int:
    """Sign of u + v*sqrt(q)."""
    su, sv = _sign(u), _sign(v)
    if su == 0 or sv == 0 or su == sv:
        return su or sv
    # opposite signs: compare u^2 with v^2 q
    return su * _sign(u * u - v * v * q)


@dataclass(frozen=True)
class Surd:
    """c0 + c1 r + c2 r^2 + c3 r^3 with r = q^{1/4} > 0 and rational c_i."""

    q: int
    c: tuple = (_Q(0), _Q(0), _Q(0), _Q(0))

    @classmethod
    def rational(cls, q: int, x) -> Surd:
        return cls(q, (_Q(x), _Q(0), _Q(0), _Q(0)))

    @classmethod
    def qpow4(cls, q: int, k: int) -> Surd:
        """q^{k/4} for any integer k."""
        s, r = divmod(k, 4)
        c = [_Q(0)] * 4
        c[r] = _Q(q) ** s
        return cls(q, tuple(c))

    @classmethod
    def qpow2(cls, q: int, k: int) -> Surd:
        """q^{k/2}."""
        return cls.qpow4(q, 2 * k)

    def _coerce(self, other) -> Surd:
        if isinstance(other, Surd):
            if other.q != self.q:
                raise ValueError("surds over different q")
            return other
        return Surd.rational(self.q, other)

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.q, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Surd(self.q, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        out = [_Q(0)] * 4
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(o.c):
                if y:
                    k = i + j
                    if k >= 4:
                        out[k - 4] += x * y * self.q
                    else:
                        out[k] += x * y
        return Surd(self.q, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            raise TypeError("division by a surd is not supported")
        return Surd(self.q, tuple(x / _Q(other) for x in self.c))

    def sign(self) -> int:
        c0, c1, c2, c3 = self.c
        q = self.q
        # value = x + y r with x = c0 + c2 sqrt(q), y = c1 + c3 sqrt(q)
        sx = _sign_quad(c0, c2, q)
        sy = _sign_quad(c1, c3, q)
        if sx == 0 or sy == 0 or sx == sy:
            return sx or sy
        # x^2 - y^2 sqrt(q) in Q(sqrt q): (c0^2 + c2^2 q - 2 c1 c3 q) + (2 c0 c2 - c1^2 - c3^2 q) sqrt(q)
        u = c0 * c0 + c2 * c2 * q - 2 * c1 * c3 * q
        v = 2 * c0 * c2 - c1 * c1 - c3 * c3 * q
        return sx * _sign_quad(u, v, q)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __hash__(self):
        return hash((self.q, float(self)))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        r = self.q**0.25
        return float(sum(float(x) * r**i for i, x in enumerate(self.c)))

    def floor(self) -> int:
        k = floor(float(self))
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def ceil(self) -> int:
        return -((-self).floor())

    def __str__(self):
        names = ("", f"{self.q}^(1/4)", f"{self.q}^(1/2)", f"{self.q}^(3/4)")
        terms = []
        for x, name in zip(self.c, names):
            if not x:
                continue
            if not name:
                terms.append(str(x))
            elif x == 1:
                terms.append(name)
            else:
                terms.append(f"{x}*{name}")
        return " + ".join(terms) if terms else "0"


def _d(q: int, n: int) -> int:
    return gcd(n, q - 1)


def _need_n(n: int, least: int = 2):
    if n < least:
        raise ValueError(f"bound needs n >= {least}")


@dataclass(frozen=True)
class Bound:
    """|value - center| <= radius for the quantity named in ``counts``."""

    name: str
    q: int
    n: int
    center: Fraction
    radius: Surd
    counts: str  # nn, nn_b0, curve, curve_b0, toric, pn

    def holds_for(self, observed) -> bool:
        return abs(Surd.rational(self.q, _Q(observed) - self.center)) <= self.radius


# bounds on N_n(a, b)

def katz(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("katz", q, n, _Q(q**n - 1, q * (q - 1)), n * Surd.qpow2(q, n - 2), "nn")


def _mw_center(q: int, n: int) -> Fraction:
    return _Q(q ** (n - 1) - 1, q - 1)


def moisio_b0(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("moisio_b0", q, n, _mw_center(q, n), (_d(q, n) - 1) * Surd.qpow2(q, n - 2), "nn_b0")


def moisio_wan(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("moisio_wan", q, n, _mw_center(q, n), (n - 1) * Surd.qpow2(q, n - 2), "nn")


def as_bound1(q: int, n: int) -> Bound:
    _need_n(n)
    r = (q - 2) * Surd.qpow2(q, n - 2) + _Q(1, q - 1)
    return Bound("as_bound1", q, n, _mw_center(q, n), r, "nn")


def as_bound2_radius(q: int, n: int) -> Surd:
    d = _d(q, n)
    sq = Surd.qpow2(q, 1)
    num = 1 + (q - 2) * Surd.qpow2(q, n - 1) - Surd.qpow2(q, n - 2) * (sq - 1) * (d - 1)
    return num / (q - 1)


def as_bound2(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("as_bound2", q, n, _mw_center(q, n), as_bound2_radius(q, n), "nn")


def n3_range(q: int) -> tuple[int, int]:
    """Moisio's range for N_3(a, b), a != 0."""
    two_sqrt = 2 * Surd.qpow2(q, 1)
    lo = ((q + 1 - two_sqrt) / 3).ceil()
    hi = ((q + 1 + two_sqrt) / 3).floor()
    return 3 * lo, 3 * hi


# bounds on #X (projective)

def hasse_weil(q: int, n: int) -> Bound:
    _need_n(n, 1)
    return Bound("hasse_weil", q, n, _Q(q**n + 1), (q - 1) * (q - 2) * Surd.qpow2(q, n), "curve")


def improved_hw(q: int, n: int, b_is_zero: bool, corrected_center: bool = False) -> Bound:
    """The Gauss-sum refinement of Hasse-Weil.

    With ``corrected_center`` the b = 0 case is centred at q^n + 1 instead of
    the printed q^n + 1 - q; the radius is unchanged.
    """
    _need_n(n, 1)
    d = _d(q, n)
    if not b_is_zero:
        r = (d - 1) * Surd.qpow2(q, n) + (q - 1 - d) * Surd.qpow2(q, n + 1)
        return Bound("improved_hw", q, n, _Q(q**n + 1), r, "curve")
    center = q**n + 1 if corrected_center else q**n + 1 - q
    name = "improved_hw_b0_centered" if corrected_center else "improved_hw_b0"
    return Bound(name, q, n, _Q(center), (q - 1) * (d - 1) * Surd.qpow2(q, n), "curve_b0")


def curve_via_toric(q: int, n: int) -> Bound:
    _need_n(n)
    r = q + q * (q - 1) * (n - 1) * Surd.qpow2(q, n - 2)
    return Bound("curve_via_toric", q, n, _Q(q**n + 1), r, "curve")


def curve_via_toric_applies(q: int, n: int) -> bool:
    """n < floor((q-2) q^{i/2} / (1 - 1/q)) + 1, i = 0 if q-1 | n else 1."""
    i = 0 if n % (q - 1) == 0 else 1
    limit = ((q - 2) * q * Surd.qpow2(q, i) / (q - 1)).floor() + 1
    return n < limit


# bounds on #Y_u

def _toric_center(q: int, n: int) -> Fraction:
    return _Q((q - 1) ** (n - 1) - (-1) ** (n - 1), q)


def toric_mw(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("toric_mw", q, n, _toric_center(q, n), (n - 1) * Surd.qpow2(q, n - 1), "toric")


def toric_improved(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("toric_improved", q, n, _toric_center(q, n), as_bound2_radius(q, n), "toric")


# bounds on P_n(a, b)

def _pn_tail(q: int, n: int) -> Surd:
    return (Surd.qpow2(q, n) - 1) / (q * (q - 1)) + _Q(n, 2) * Surd.qpow4(q, n - 4)


def wan_pn(q: int, n: int) -> Bound:
    _need_n(n)
    return Bound("wan_pn", q, n, _Q(q ** (n - 1), n * (q - 1)), _Q(3, n) * Surd.qpow2(q, n), "pn")


def moisio_pn(q: int, n: int) -> Bound:
    _need_n(n)
    r = Surd.qpow2(q, n - 2) + _pn_tail(q, n)
    return Bound("moisio_pn", q, n, _Q(q**n - 1, n * q * (q - 1)), r, "pn")


def new_pn(q: int, n: int) -> Bound:
    _need_n(n)
    r = (as_bound2_radius(q, n) + _Q(1, q)) / n + _pn_tail(q, n)
    return Bound("new_pn", q, n, _Q(q**n - 1, n * q * (q - 1)), r, "pn")


def q2_prime_pn(n: int) -> Bound:
    """|P_n(1,1) - 2^{n-1}/n| <= 1/n over F_2 for prime n."""
    _need_n(n)
    return Bound("q2_prime_pn", 2, n, _Q(2 ** (n - 1), n), Surd.rational(2, _Q(1, n)), "pn")


# improvement predicates as claimed in print

def as_bound1_claims_improvement(q: int, n: int) -> bool:
    return n > q - 1


def as_bound2_claims_improvement(q: int, n: int) -> bool:
    if n % (q - 1) == 0:
        return True
    threshold = _Q(q - 2, q - 1) * Surd.qpow2(q, 1) - 1
    return threshold < n


toric_claims_improvement = as_bound2_claims_improvement


def compare_radii(a: Bound, b: Bound) -> int:
    """-1 if a is strictly tighter than b, 0 on a tie, 1 if looser."""
    return (a.radius - b.radius).sign()


@dataclass(frozen=True)
class BoundReport:
    name: str
    q: int
    n: int
    instance: tuple
    center: Fraction
    radius: Surd
    observed: int
    holds: bool
    comparisons: tuple = field(default=())  # (other name, tighter: bool)

    def row(self) -> dict:
        return {
            "bound": self.name,
            "q": self.q,
            "n": self.n,
            "instance": list(self.instance),
            "center": str(self.center),
            "radius": str(self.radius),
            "radius_float": round(float(self.radius), 9),
            "observed": self.observed,
            "holds": self.holds,
            "tighter_than": [name for name, t in self.comparisons if t],
        }


def report(bound: Bound, observed, instance: tuple = (), others=()) -> BoundReport:
    comps = tuple((o.name, compare_radii(bound, o) < 0) for o in others)
    return BoundReport(bound.name, bound.q, bound.n, tuple(instance), bound.center, bound.radius,
                       observed, bound.holds_for(observed), comps)


NN_BOUNDS = (katz, moisio_wan, as_bound1, as_bound2)
PN_BOUNDS = (wan_pn, moisio_pn, new_pn)
TORIC_BOUNDS = (toric_mw, toric_improved)
