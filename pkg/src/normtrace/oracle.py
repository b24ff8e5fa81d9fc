"""Brute-force ground truth: norm/trace fibers, curve points, toric points, irreducibles.

Everything here enumerates.  The top field is walked multiplicatively as
powers of the stored primitive element g = g_qn, so Norm(g^k) = Norm(g)^k
is read off the exponent instead of being recomputed; z = 0 is handled
separately.  Element-level linear maps (trace, Frobenius, multiplication
by g) are materialized once as F_p-matrices acting on digit vectors, built
from the slow reference arithmetic in :mod:`normtrace.fieldtower`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fieldtower as ft
from .errors import ScaleExceeded, ZeroAlpha, ZeroU
from .gf import GF, digits_of, index_of

ELEMENT_CAP = 300_000
TORIC_CAP = 10_000
POLY_CAP = 100_000

_CHUNK = 1 << 15


def _check(what, size, cap):
    if cap is not None and size > cap:
        raise ScaleExceeded(what, size, cap)


def _idx(x) -> int:
    return x.index if isinstance(x, ft.FieldElement) else int(x)


def _linear_map(t: ft.FieldTower, fn) -> np.ndarray:
    """Matrix of an F_p-linear map F_{q^n} -> F_{q^n} on digit row vectors."""
    rows = []
    for k in range(t.degree):
        img = fn(t.top(t.p**k))
        rows.append(digits_of(img.index, t.p, t.degree))
    return np.array(rows, dtype=np.int64)


def _matpow(M, k, p):
    out = np.eye(M.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            out = (out @ M) % p
        M = (M @ M) % p
        k >>= 1
    return out


@dataclass(frozen=True, eq=False)
class ElementTables:
    """Index tables for F_{q^n}* walked as powers of g_qn.

    exp[k]        index of g^k, 0 <= k < q^n - 1
    log[i]        k with g^k = element i (log[0] = -1)
    trace_exp[k]  mid index of Tr(g^k)
    norm_gen_log  dlog_{g_q} Norm(g); Norm(g^k) = g_q^(k * norm_gen_log)
    trace_mat     digits(z) @ trace_mat % p = digits(Tr z)
    frob_mat      digits(z) @ frob_mat % p = digits(z^q)
    """

    tower: ft.FieldTower
    exp: np.ndarray
    log: np.ndarray
    trace_exp: np.ndarray
    norm_gen_log: int
    trace_mat: np.ndarray
    frob_mat: np.ndarray

    def digits(self, idx):
        return digits_of(idx, self.tower.p, self.tower.degree)

    def index(self, digits):
        return index_of(digits, self.tower.p)

    def norm_mid(self, ks):
        """Mid index of Norm(g^k) for an array of exponents."""
        fq = self.tower.fq
        return fq.exp[(np.asarray(ks) * self.norm_gen_log) % (fq.q - 1)]

    def trace_of(self, idx):
        """Mid index of Tr(z) for an array of top indices."""
        t = self.tower
        d = (self.digits(idx) @ self.trace_mat) % t.p
        return index_of(d, t.p)


@lru_cache(maxsize=32)
def _tables(t: ft.FieldTower) -> ElementTables:
    p, Q, D = t.p, t.order, t.degree
    g = ft.primitive_top(t)
    mul_g = _linear_map(t, lambda z: z * g)
    trace_rows = [digits_of(ft.trace(t.top(p**k)).index, p, t.e) for k in range(D)]
    trace_mat = np.array(trace_rows, dtype=np.int64).reshape(D, t.e)
    frob_mat = _linear_map(t, lambda z: z ** t.q)

    n_units = Q - 1
    c = min(n_units, _CHUNK)
    block = digits_of([1], p, D)
    step = mul_g
    while block.shape[0] < c:
        block = np.vstack([block, (block @ step) % p])
        step = (step @ step) % p
    block = block[:c]
    jump = _matpow(mul_g, c, p)

    exp = np.empty(n_units, dtype=np.int64)
    trace_exp = np.empty(n_units, dtype=np.int64)
    shift = np.eye(D, dtype=np.int64)
    weights_mid = p ** np.arange(t.e, dtype=np.int64)
    for start in range(0, n_units, c):
        stop = min(start + c, n_units)
        rows = (block[: stop - start] @ shift) % p
        exp[start:stop] = index_of(rows, p)
        trace_exp[start:stop] = ((rows @ trace_mat) % p) @ weights_mid
        shift = (shift @ jump) % p

    log = np.full(Q, -1, dtype=np.int64)
    log[exp] = np.arange(n_units)
    if Q > 1 and np.count_nonzero(log[1:] < 0):
        raise AssertionError("g_qn is not primitive: exp table is not a permutation")
    norm_gen_log = t.fq.dlog(ft.norm_of_generator(t))
    return ElementTables(t, exp, log, trace_exp, norm_gen_log, trace_mat, frob_mat)


def element_tables(t: ft.FieldTower, cap: int | None = ELEMENT_CAP) -> ElementTables:
    _check(f"F_{t.order} enumeration", t.order, cap)
    return _tables(t)


@lru_cache(maxsize=64)
def _census(t: ft.FieldTower) -> np.ndarray:
    tab = _tables(t)
    q = t.q
    ks = np.arange(t.order - 1)
    keys = tab.norm_mid(ks) * q + tab.trace_exp
    counts = np.bincount(keys, minlength=q * q).reshape(q, q)
    counts[0, 0] += 1  # z = 0
    counts.setflags(write=False)
    return counts


def norm_trace_census(t: ft.FieldTower, cap: int | None = ELEMENT_CAP) -> np.ndarray:
    """Matrix N[a, b] = #{z in F_{q^n} : Norm z = a, Tr z = b} over mid indices."""
    _check(f"F_{t.order} enumeration", t.order, cap)
    return _census(t)


def count_norm_trace(t: ft.FieldTower, a, b, cap: int | None = ELEMENT_CAP) -> int:
    """N_n(a, b) by exhaustive enumeration of F_{q^n}."""
    return int(norm_trace_census(t, cap)[_idx(a), _idx(b)])


def _curve_rhs(tab: ElementTables, A: int, beta_digits, ks):
    """Digits of alpha*x^{q-1} - beta for x = g^k (alpha = g^A)."""
    t = tab.tower
    w = tab.exp[(A + ks * (t.q - 1)) % (t.order - 1)]
    return (tab.digits(w) - beta_digits) % t.p


def count_curve_points_tracefiber(t: ft.FieldTower, alpha, beta, cap: int | None = ELEMENT_CAP,
                                  projective: bool = True) -> int:
    """Points of y^q - y = alpha x^{q-1} - beta over F_{q^n}.

    Each x with Tr(alpha x^{q-1} - beta) = 0 carries exactly q values of y;
    the projective curve adds a single point at infinity.
    """
    alpha = t.top(_idx(alpha)) if not isinstance(alpha, ft.FieldElement) else alpha
    beta = t.top(_idx(beta)) if not isinstance(beta, ft.FieldElement) else beta
    if alpha.is_zero():
        raise ZeroAlpha("alpha must be nonzero")
    tab = element_tables(t, cap)
    p = t.p
    A = int(tab.log[alpha.index])
    bd = tab.digits(beta.index)
    good = 1 if ft.trace(-beta).is_zero() else 0  # x = 0
    n_units = t.order - 1
    for start in range(0, n_units, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, n_units))
        tr = (_curve_rhs(tab, A, bd, ks) @ tab.trace_mat) % p
        good += int(np.count_nonzero(~tr.any(axis=1)))
    affine = t.q * good
    return affine + 1 if projective else affine


def count_curve_points_naive(t: ft.FieldTower, alpha, beta, cap: int | None = ELEMENT_CAP,
                             projective: bool = True) -> int:
    """Same count as the trace-fiber method, without Hilbert 90.

    Counts pairs (x, y) directly: the value multiset of y -> y^q - y is
    tabulated once, then each x contributes the multiplicity of its
    right-hand side.  Cost is O(q^n) rather than O(q^{2n}) but every pair
    is accounted for individually.
    """
    alpha = t.top(_idx(alpha)) if not isinstance(alpha, ft.FieldElement) else alpha
    beta = t.top(_idx(beta)) if not isinstance(beta, ft.FieldElement) else beta
    if alpha.is_zero():
        raise ZeroAlpha("alpha must be nonzero")
    tab = element_tables(t, cap)
    p, Q = t.p, t.order
    as_mat = (tab.frob_mat - np.eye(t.degree, dtype=np.int64)) % p
    hits = np.zeros(Q, dtype=np.int64)
    for start in range(0, Q, _CHUNK):
        ys = np.arange(start, min(start + _CHUNK, Q))
        hits += np.bincount(tab.index((tab.digits(ys) @ as_mat) % p), minlength=Q)
    A = int(tab.log[alpha.index])
    bd = tab.digits(beta.index)
    pairs = int(hits[tab.index((-bd) % p)])  # x = 0
    for start in range(0, Q - 1, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, Q - 1))
        pairs += int(hits[tab.index(_curve_rhs(tab, A, bd, ks))].sum())
    return pairs + 1 if projective else pairs


def count_toric_points(F: GF, n: int, u, cap: int | None = TORIC_CAP) -> int:
    """#{(X_1..X_{n-1}) in (F_q*)^{n-1} : X_1 + ... + X_{n-1} + u/(X_1...X_{n-1}) = 1}."""
    u = _idx(u)
    if u == 0:
        raise ZeroU("u must be nonzero")
    if n < 2:
        raise ValueError("the toric hypersurface needs n >= 2")
    q = F.q
    size = (q - 1) ** (n - 1)
    _check("toric tuple enumeration", size, cap)
    add, exp = F._addl, F.exp.tolist()
    log_u = F.dlog(u)
    count = 0
    for logs in itertools.product(range(q - 1), repeat=n - 1):
        s = exp[(log_u - sum(logs)) % (q - 1)]
        for k in logs:
            s = add[s][exp[k]]
        count += s == 1
    return count


def irreducible_candidates(F: GF, n: int, a, b):
    """Monic T^n - a T^{n-1} + ... + (-1)^n b, middle coefficients free, as coefficient lists."""
    a, b = _idx(a), _idx(b)
    const = b if n % 2 == 0 else int(F.neg[b])
    top = int(F.neg[a])
    for mids in itertools.product(range(F.q), repeat=n - 2):
        yield [const, *mids, top, 1]


def count_irreducible(F: GF, n: int, a, b, cap: int | None = POLY_CAP) -> int:
    """P_n(a, b): irreducible polynomials with prescribed T^{n-1} and constant coefficients."""
    a, b = _idx(a), _idx(b)
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        # T - a must also have constant term -b
        return int(a == b)
    _check("irreducibility tests", F.q ** (n - 2), cap)
    return sum(F.is_irreducible(f) for f in irreducible_candidates(F, n, a, b))
