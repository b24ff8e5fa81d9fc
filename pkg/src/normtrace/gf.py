"""Small finite fields F_{p^e} as lookup tables, and dense polynomials over them.

An element of F_{p^e} = F_p[x]/(m(x)) is encoded as the integer
``sum(c_i * p**i)`` where c_i is the coefficient of x^i.  Every table is
indexed by that encoding.  Polynomials over a field are lists of element
indices, lowest degree first, with no trailing zeros (``[]`` is zero).
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero, NotPrime, SearchExhausted
from .ntheory import is_prime, multiplicative_order, prime_divisors

# Tables are q x q; beyond this the "small field" premise breaks down.
MAX_TABLE_ORDER = 1024


def digits_of(indices, p: int, width: int) -> np.ndarray:
    """Base-p digit matrix (len(indices) x width) of an index array."""
    idx = np.asarray(indices, dtype=np.int64)
    out = np.empty(idx.shape + (width,), dtype=np.int64)
    for i in range(width):
        out[..., i] = idx % p
        idx = idx // p
    return out


def index_of(digits: np.ndarray, p: int) -> np.ndarray:
    weights = p ** np.arange(digits.shape[-1], dtype=np.int64)
    return digits @ weights


class GF:
    """The field F_p[x]/(modulus) with full arithmetic tables.

    ``modulus`` is a monic irreducible polynomial over F_p given as a tuple of
    integer coefficients, lowest degree first.  Irreducibility is the
    caller's responsibility (see :func:`normtrace.fieldtower.build_tower`).
    """

    def __init__(self, p: int, modulus=(0, 1)):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.p = p
        self.e = len(modulus) - 1
        self.q = p**self.e
        self.modulus = modulus
        if self.q > MAX_TABLE_ORDER:
            raise ValueError(f"F_{self.q} is too large for table arithmetic")
        self._build_tables()

    def __repr__(self):
        return f"GF({self.q}, modulus={list(self.modulus)})"

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        D = digits_of(np.arange(q), p, e)
        self.add = index_of((D[:, None, :] + D[None, :, :]) % p, p)
        self.sub = index_of((D[:, None, :] - D[None, :, :]) % p, p)
        self.neg = index_of((-D) % p, p)

        # multiplication by x on coefficient vectors
        X = np.zeros((e, e), dtype=np.int64)
        for i in range(e - 1):
            X[i + 1, i] = 1
        X[:, e - 1] = [(-c) % p for c in self.modulus[:e]]
        mul = np.zeros((q, q, e), dtype=np.int64)
        shifted = D.copy()
        for k in range(e):
            # shifted = a * x^k, accumulate b_k * (a * x^k)
            mul += D[None, :, k, None] * shifted[:, None, :]
            shifted = (shifted @ X.T) % p
        self.mul = index_of(mul % p, p)

        inv = np.full(q, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 1)
        inv[rows] = cols
        self.inv = inv
        self._addl = self.add.tolist()
        self._subl = self.sub.tolist()
        self._mull = self.mul.tolist()
        self._negl = self.neg.tolist()
        self._invl = self.inv.tolist()

        self.generator = self._find_generator()
        exp = np.empty(q - 1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = int(self.mul[x, self.generator])
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp = exp
        self.log = log

        # absolute trace Tr_{F_q/F_p}(c) = sum c^{p^i}; lands in F_p (index < p)
        tr = np.zeros(q, dtype=np.int64)
        frob = np.arange(q)
        for _ in range(e):
            tr = self.add[tr, frob]
            frob = self._pow_vec(frob, p)
        assert np.all(tr < p)
        self.abs_trace = tr


    def _pow_vec(self, xs, k):
        out = np.ones_like(xs)
        base = xs.copy()
        while k:
            if k & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            k >>= 1
        return out

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for g in range(1, self.q):
            if multiplicative_order(lambda k: self.pow(g, k) == 1, self.q - 1) == self.q - 1:
                return g
        raise SearchExhausted(f"no primitive element in {self!r}")

    # scalar arithmetic on indices
    def pow(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse(x), -k
        out = 1
        while k:
            if k & 1:
                out = self._mull[out][x]
            x = self._mull[x][x]
            k >>= 1
        return out

    def inverse(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self._invl[x]

    def from_int(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> F_q."""
        return c % self.p

    def dlog(self, x: int) -> int:
        """Discrete log of x to the base ``self.generator``."""
        if x == 0:
            raise DivisionByZero("log of zero")
        return int(self.log[x])

    def is_square(self, x: int) -> bool:
        return x == 0 or self.q % 2 == 0 or self.dlog(x) % 2 == 0

    def quadratic_character(self, x: int) -> int:
        """eta(x) in {1, -1} for nonzero x in odd characteristic."""
        return 1 if self.dlog(x) % 2 == 0 else -1

    # polynomials over this field
    def poly_trim(self, f: list) -> list:
        while f and f[-1] == 0:
            f.pop()
        return f

    def poly_add(self, f, g):
        add = self._addl
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, c in enumerate(g):
            out[i] = add[out[i]][c]
        return self.poly_trim(out)

    def poly_sub(self, f, g):
        sub = self._subl
        n = max(len(f), len(g))
        out = [sub[f[i] if i < len(f) else 0][g[i] if i < len(g) else 0] for i in range(n)]
        return self.poly_trim(out)

    def poly_mul(self, f, g):
        if not f or not g:
            return []
        add, mul = self._addl, self._mull
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a == 0:
                continue
            row = mul[a]
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add[out[i + j]][row[b]]
        return self.poly_trim(out)

    def poly_divmod(self, f, g):
        if not g:
            raise DivisionByZero("polynomial division by zero")
        sub, mul = self._subl, self._mull
        r = list(f)
        dg = len(g) - 1
        lead_inv = self.inverse(g[-1])
        quot = [0] * max(len(r) - dg, 0)
        while len(r) - 1 >= dg and r:
            shift = len(r) - 1 - dg
            c = mul[r[-1]][lead_inv]
            quot[shift] = c
            for j, b in enumerate(g):
                r[shift + j] = sub[r[shift + j]][mul[c][b]]
            self.poly_trim(r)
        return self.poly_trim(quot), r

    def poly_mod(self, f, g):
        return self.poly_divmod(f, g)[1]

    def poly_powmod(self, f, k: int, m):
        out = [1]
        base = self.poly_mod(f, m)
        while k:
            if k & 1:
                out = self.poly_mod(self.poly_mul(out, base), m)
            base = self.poly_mod(self.poly_mul(base, base), m)
            k >>= 1
        return out

    def poly_gcd(self, f, g):
        f, g = list(f), list(g)
        while g:
            f, g = g, self.poly_mod(f, g)
        if f:
            c = self.inverse(f[-1])
            f = [self._mull[c][x] for x in f]
        return f

    def poly_eval(self, f, x: int) -> int:
        acc = 0
        for c in reversed(f):
            acc = self._addl[self._mull[acc][x]][c]
        return acc

    def is_irreducible(self, f) -> bool:
        """Rabin's test: x^{q^m} = x mod f and gcd(x^{q^{m/l}} - x, f) = 1 for primes l | m."""
        f = self.poly_trim(list(f))
        m = len(f) - 1
        if m < 1:
            raise ValueError("irreducibility needs degree >= 1")
        if f[-1] != 1:
            c = self.inverse(f[-1])
            f = [self._mull[c][x] for x in f]
        if m == 1:
            return True
        x = [0, 1]
        needed = {m // ell for ell in prime_divisors(m)}
        h = x
        for k in range(1, m + 1):
            h = self.poly_powmod(h, self.q, f)
            if k in needed and len(self.poly_gcd(self.poly_sub(h, x), f)) != 1:
                return False
        return self.poly_sub(h, x) == []


def prime_field(p: int) -> GF:
    return GF(p, (0, 1))
