"""The tower F_p < F_q = F_{p^e} < F_{q^n} and its elements.

Top-level elements are polynomials of degree < n in y over F_q, reduced
modulo ``top_modulus``.  Encodings: a mid element is ``sum(c_i p^i)`` over
its F_p coefficients; a top element is ``sum(m_j q^j)`` over its F_q
coefficients, i.e. the base-p index of the flattened F_p coefficient vector.

Moduli are chosen deterministically: monic polynomials of degree m are
ranked by the index of their lower coefficients ``sum(c_i r^i), i < m``
(r = p for the base modulus, r = q for the top modulus), and the search
starts at rank ``seed`` (mod r^m) and takes the first irreducible one.
Seed 0 therefore gives the lexicographically smallest irreducible.
Primitive elements are the smallest index of full multiplicative order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .errors import DivisionByZero, LevelMismatch, NotPrime, SearchExhausted, ZeroArgument
from .gf import GF
from .ntheory import is_prime, multiplicative_order

PRIME, MID, TOP = "prime", "mid", "top"


@dataclass(frozen=True)
class FieldTower:
    p: int
    e: int
    n: int
    seed: int
    base_modulus: tuple
    top_modulus: tuple
    g_q: int
    g_qn: int
    fp: GF = field(repr=False, compare=False, hash=False)
    fq: GF = field(repr=False, compare=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        """Cardinality q^n of the top field."""
        return self.q**self.n

    @property
    def g_qn_coeffs(self) -> tuple:
        return _digits(self.g_qn, self.q, self.n)

    @property
    def degree(self) -> int:
        """Absolute degree e*n of the top field over F_p."""
        return self.e * self.n

    # element constructors
    def prime(self, c: int) -> FieldElement:
        return FieldElement(self, PRIME, (c % self.p,))

    def mid(self, idx: int) -> FieldElement:
        if not 0 <= idx < self.q:
            raise ValueError(f"mid index {idx} out of range for F_{self.q}")
        return FieldElement(self, MID, _digits(idx, self.p, self.e))

    def top(self, idx: int) -> FieldElement:
        if not 0 <= idx < self.order:
            raise ValueError(f"top index {idx} out of range for F_{self.order}")
        return FieldElement(self, TOP, _digits(idx, self.q, self.n))

    def embed(self, x: FieldElement) -> FieldElement:
        """View a prime or mid element as a top element."""
        if x.level == TOP:
            return x
        idx = x.index
        return FieldElement(self, TOP, (idx,) + (0,) * (self.n - 1))

    def mid_elements(self):
        return [self.mid(i) for i in range(self.q)]

    def top_elements(self):
        return (self.top(i) for i in range(self.order))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "q": self.q,
            "seed": self.seed,
            "base_modulus": list(self.base_modulus),
            "top_modulus": list(self.top_modulus),
            "g_q": self.g_q,
            "g_qn": self.g_qn,
        }

    # top-level polynomial arithmetic on coefficient tuples
    def _tmul(self, a, b):
        F = self.fq
        prod = F.poly_mul(list(a), list(b))
        r = F.poly_mod(prod, list(self.top_modulus))
        return tuple(r) + (0,) * (self.n - len(r))

    def _tpow(self, a, k: int):
        out = (1,) + (0,) * (self.n - 1)
        while k:
            if k & 1:
                out = self._tmul(out, a)
            a = self._tmul(a, a)
            k >>= 1
        return out


def _digits(idx: int, base: int, width: int) -> tuple:
    out = []
    for _ in range(width):
        idx, r = divmod(idx, base)
        out.append(r)
    return tuple(out)


def _undigits(coeffs, base: int) -> int:
    idx = 0
    for c in reversed(coeffs):
        idx = idx * base + c
    return idx


@dataclass(frozen=True)
class FieldElement:
    tower: FieldTower = field(repr=False, compare=False)
    level: str
    coeffs: tuple

    @property
    def index(self) -> int:
        if self.level == PRIME:
            return self.coeffs[0]
        if self.level == MID:
            return _undigits(self.coeffs, self.tower.p)
        return _undigits(self.coeffs, self.tower.q)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __int__(self):
        return self.index

    def __add__(self, other):
        return arith("add", self, other)

    def __sub__(self, other):
        return arith("sub", self, other)

    def __mul__(self, other):
        return arith("mul", self, other)

    def __truediv__(self, other):
        return arith("mul", self, arith("inv", other))

    def __neg__(self):
        return arith("sub", self._zero(), self)

    def __pow__(self, k):
        return arith("pow", self, exponent=k)

    def _zero(self):
        return FieldElement(self.tower, self.level, (0,) * len(self.coeffs))

    def __repr__(self):
        return f"{self.level}[{self.index}]"


def _check_same(*xs):
    t, lvl = xs[0].tower, xs[0].level
    for x in xs[1:]:
        if x.tower is not t and x.tower != t:
            raise LevelMismatch("operands belong to different towers")
        if x.level != lvl:
            raise LevelMismatch(f"cannot combine {lvl} and {x.level} elements")


def arith(op: str, x: FieldElement, y: FieldElement | None = None, exponent: int | None = None):
    """Field operations add, sub, mul, inv, pow on same-level elements."""
    t, lvl = x.tower, x.level
    if y is not None:
        _check_same(x, y)
    if lvl == PRIME:
        p = t.p
        a = x.coeffs[0]
        if op == "add":
            return t.prime(a + y.coeffs[0])
        if op == "sub":
            return t.prime(a - y.coeffs[0])
        if op == "mul":
            return t.prime(a * y.coeffs[0])
        if op == "inv":
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return t.prime(pow(a, -1, p))
        if op == "pow":
            if a == 0 and exponent < 0:
                raise DivisionByZero("negative power of zero")
            return t.prime(pow(a, exponent, p) if exponent >= 0 else pow(pow(a, -1, p), -exponent, p))
    elif lvl == MID:
        F = t.fq
        a = x.index
        if op == "add":
            return t.mid(F._addl[a][y.index])
        if op == "sub":
            return t.mid(F._subl[a][y.index])
        if op == "mul":
            return t.mid(F._mull[a][y.index])
        if op == "inv":
            return t.mid(F.inverse(a))
        if op == "pow":
            if a == 0:
                if exponent < 0:
                    raise DivisionByZero("negative power of zero")
                return t.mid(1 if exponent == 0 else 0)
            return t.mid(F.pow(a, exponent))
    else:
        F = t.fq
        a = x.coeffs
        if op == "add":
            return FieldElement(t, TOP, tuple(F._addl[u][v] for u, v in zip(a, y.coeffs)))
        if op == "sub":
            return FieldElement(t, TOP, tuple(F._subl[u][v] for u, v in zip(a, y.coeffs)))
        if op == "mul":
            return FieldElement(t, TOP, t._tmul(a, y.coeffs))
        if op == "inv":
            if not any(a):
                raise DivisionByZero("inverse of zero")
            return FieldElement(t, TOP, t._tpow(a, t.order - 2))
        if op == "pow":
            if not any(a):
                if exponent < 0:
                    raise DivisionByZero("negative power of zero")
                return t.top(1 if exponent == 0 else 0)
            k = exponent % (t.order - 1)
            return FieldElement(t, TOP, t._tpow(a, k))
    raise ValueError(f"unknown operation {op!r}")


def _as_mid(t: FieldTower, coeffs) -> FieldElement:
    if any(coeffs[1:]):
        raise AssertionError(f"{coeffs} does not lie in F_q")
    return t.mid(coeffs[0])


def _require_top(z: FieldElement):
    if z.level != TOP:
        raise LevelMismatch(f"expected a top-level element, got {z.level}")


def trace(z: FieldElement) -> FieldElement:
    """Relative trace sum_{i<n} z^{q^i} of F_{q^n} onto F_q."""
    _require_top(z)
    t = z.tower
    F = t.fq
    acc = (0,) * t.n
    w = z.coeffs
    for _ in range(t.n):
        acc = tuple(F._addl[u][v] for u, v in zip(acc, w))
        w = t._tpow(w, t.q)
    return _as_mid(t, acc)


def norm(z: FieldElement) -> FieldElement:
    """Relative norm z^{1+q+...+q^{n-1}} of F_{q^n} onto F_q."""
    _require_top(z)
    t = z.tower
    if z.is_zero():
        return t.mid(0)
    return _as_mid(t, t._tpow(z.coeffs, (t.order - 1) // (t.q - 1)))


def absolute_trace(x: FieldElement) -> int:
    """Tr_{F_q/F_p} of a mid element, as an integer in [0, p)."""
    if x.level != MID:
        raise LevelMismatch("absolute trace is defined on mid-level elements")
    return int(x.tower.fq.abs_trace[x.index])


def is_irreducible(f, over: GF) -> bool:
    """Whether the monic polynomial f (element indices, low degree first) is irreducible over ``over``."""
    return over.is_irreducible(f)


def _search_modulus(F: GF, degree: int, seed: int) -> tuple:
    r = F.q
    total = r**degree
    for rank in range(total):
        tail = _digits((seed + rank) % total, r, degree)
        f = list(tail) + [1]
        if F.is_irreducible(f):
            return tuple(f)
    raise SearchExhausted(f"no irreducible polynomial of degree {degree} over F_{r}")


def _top_order_is(t: FieldTower, g, order: int) -> bool:
    one = (1,) + (0,) * (t.n - 1)
    return multiplicative_order(lambda k: t._tpow(g, k) == one, order) == order


def build_tower(p: int, e: int, n: int, seed: int = 0) -> FieldTower:
    """Construct F_p < F_{p^e} < F_{p^{en}} deterministically from ``seed``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or n < 1:
        raise ValueError("e and n must be positive")
    fp = GF(p)
    base = _search_modulus(fp, e, seed)
    fq = GF(p, base)
    top = _search_modulus(fq, n, seed)
    t = FieldTower(p, e, n, seed, base, top, fq.generator, 0, fp, fq)
    Q = t.order
    if Q == 2:
        g = 1
    else:
        for g in range(1, Q):
            if _top_order_is(t, _digits(g, fq.q, n), Q - 1):
                break
        else:
            raise SearchExhausted("no primitive element in the top field")
    return FieldTower(p, e, n, seed, base, top, fq.generator, g, fp, fq)


def discrete_log(t: FieldTower, x: FieldElement, level: str | None = None) -> int:
    """k with g^k = x, for the stored primitive element g of x's level (baby-step giant-step)."""
    level = level or x.level
    if x.level != level:
        raise LevelMismatch(f"element is {x.level}, requested {level}")
    if x.is_zero():
        raise ZeroArgument("discrete log of zero")
    if level == MID:
        return t.fq.dlog(x.index)
    if level != TOP:
        raise LevelMismatch("discrete logs are defined on mid and top levels")
    order = t.order - 1
    m = isqrt(order) + 1
    g = t.g_qn_coeffs
    baby = {}
    cur = (1,) + (0,) * (t.n - 1)
    for j in range(m):
        baby.setdefault(cur, j)
        cur = t._tmul(cur, g)
    giant = t._tpow(g, order - m)  # g^{-m}
    y = x.coeffs
    for i in range(m + 1):
        if y in baby:
            return (i * m + baby[y]) % order
        y = t._tmul(y, giant)
    raise AssertionError("discrete log not found; g is not primitive")


def primitive_top(t: FieldTower) -> FieldElement:
    return t.top(t.g_qn)


def primitive_mid(t: FieldTower) -> FieldElement:
    return t.mid(t.g_q)


def norm_of_generator(t: FieldTower) -> int:
    """Index of Norm(g_qn), a primitive element of F_q."""
    return norm(primitive_top(t)).index


def norm_preimage(t: FieldTower, a: FieldElement) -> FieldElement:
    """Some alpha with Norm(alpha) = a: a power of g_qn."""
    if a.level != MID:
        raise LevelMismatch("norm preimage expects a mid element")
    if a.is_zero():
        raise ZeroArgument("zero has no invertible norm preimage")
    F = t.fq
    h = norm_of_generator(t)
    j = (F.dlog(a.index) * pow(F.dlog(h), -1, F.q - 1)) % (F.q - 1) if F.q > 2 else 0
    return primitive_top(t) ** j


def trace_preimage(t: FieldTower, b: FieldElement) -> FieldElement:
    """Some beta with Tr(beta) = b, a multiple of the first basis power y^k of nonzero trace."""
    if b.level != MID:
        raise LevelMismatch("trace preimage expects a mid element")
    if b.is_zero():
        return t.top(0)
    for k in range(t.n):
        z0 = t.top(t.q**k)
        s = trace(z0)
        if not s.is_zero():
            return t.embed(b * s ** -1) * z0
    raise SearchExhausted("trace vanishes on the whole basis")


def preimage_pairs(t: FieldTower, a: FieldElement, b: FieldElement, count: int = 2) -> list:
    """Up to ``count`` distinct pairs (alpha, beta) with Norm alpha = a, Tr beta = b.

    Pair k multiplies alpha by g^{k(q-1)} (norm 1) and adds y^q - y with
    y = g^k (trace 0).  For n = 1 the pair is unique.
    """
    alpha0, beta0 = norm_preimage(t, a), trace_preimage(t, b)
    g = primitive_top(t)
    pairs = [(alpha0, beta0)]
    k = 1
    while len(pairs) < count and k < t.order:
        y = g**k
        cand = (alpha0 * g ** (k * (t.q - 1)), beta0 + y**t.q - y)
        if cand not in pairs:
            pairs.append(cand)
        k += 1
        if t.n == 1:
            break
    return pairs
