"""P_n(a, b): monic irreducibles T^n - a T^{n-1} + ... + (-1)^n b over F_q.

The roots of such a polynomial are the n conjugates of an element z of
exact degree n with Tr z = a and Norm z = b; note the order is the reverse
of N_n(norm, trace).  An element of a subfield
F_{q^{n/t}} has Norm_n z = Norm_{n/t}(z)^t and Tr_n z = t Tr_{n/t}(z), so
Moebius inversion over subfields gives

    n P_n(a, b) = sum_{t | n} mu(t) #{z in F_{q^{n/t}} : Norm(z)^t = b, t Tr(z) = a}.

The inner count is a sum of N_{n/t}(b', a / t) over the t-th roots b' of b
when p does not divide t.  When p divides t it is 0 for a != 0, and it is
the whole norm fiber for a = 0.  Every N value comes from an
:class:`NnProvider`, so oracle, Gauss-sum and closed-form answers can be
compared through the same inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import closedforms as cf
from .charsum import count_curve_gauss
from .errors import DivisibilityViolation, LevelMismatch
from .fieldtower import build_tower
from .gf import GF
from .ntheory import divisors, mobius
from .oracle import ELEMENT_CAP, _idx, norm_trace_census

__all__ = [
    "mobius", "NnProvider", "ORACLE", "GAUSS", "base_field", "pn", "pn_lemma_as_printed",
    "pn_closed", "pn_printed", "necklace_count", "nth_roots",
]


@lru_cache(maxsize=128)
def _tower(p: int, e: int, n: int, seed: int):
    return build_tower(p, e, n, seed)


def base_field(p: int, e: int, seed: int = 0) -> GF:
    """F_q as used by every tower built from the same (p, e, seed)."""
    return _tower(p, e, 1, seed).fq


@dataclass(frozen=True)
class NnProvider:
    """Where N_n(a, b) values come from: ``oracle``, ``gauss`` or ``closed`` (with a source)."""

    kind: str
    source: str | None = None
    seed: int = 0
    cap: int | None = ELEMENT_CAP

    def __post_init__(self):
        if self.kind not in ("oracle", "gauss", "closed"):
            raise ValueError(f"unknown provider {self.kind!r}")
        if self.kind == "closed":
            object.__setattr__(self, "source", cf.normalize_source(self.source or cf.ERRATA))

    @property
    def label(self) -> str:
        return f"closed:{self.source}" if self.kind == "closed" else self.kind

    def _tower_for(self, F: GF, n: int):
        t = _tower(F.p, F.e, n, self.seed)
        if t.fq.modulus != F.modulus:
            raise LevelMismatch(f"tower base modulus {t.fq.modulus} differs from {F.modulus}")
        return t

    def __call__(self, F: GF, n: int, a, b):
        a, b = _idx(a), _idx(b)
        q = F.q
        if self.kind == "oracle":
            return int(norm_trace_census(self._tower_for(F, n), self.cap)[a, b])
        if self.kind == "gauss":
            extra = 1 + (q if b == 0 else 0)
            num = count_curve_gauss(F, n, a, b) - extra
            if num % (q * (q - 1)):
                raise DivisibilityViolation(f"#X - {extra} = {num} not divisible by q(q-1)")
            return num // (q * (q - 1))
        return cf.nn_closed(q, n, a, b, self.source).value

    def fiber_total(self, F: GF, n: int, a) -> int:
        """#{z in F_{q^n} : Norm z = a} for a != 0."""
        if self.kind == "oracle":
            return int(norm_trace_census(self._tower_for(F, n), self.cap)[_idx(a)].sum())
        return (F.q**n - 1) // (F.q - 1)


ORACLE = NnProvider("oracle")
GAUSS = NnProvider("gauss")


def nth_roots(F: GF, t: int, a: int) -> list[int]:
    """All a' in F_q* with a'^t = a."""
    if a == 0:
        return [0]
    order = F.q - 1
    la = F.dlog(a)
    return sorted(int(F.exp[k]) for k in range(order) if (t * k - la) % order == 0)


def pn(F: GF, n: int, a, b, provider: NnProvider = ORACLE) -> int:
    """P_n(a, b) by Moebius inversion over subfields (a: trace coefficient, b: norm coefficient)."""
    tr, nm = _idx(a), _idx(b)
    if n < 1:
        raise ValueError("degree must be positive")
    if nm == 0:
        # T divides the polynomial unless it is T itself
        return int(n == 1 and tr == 0)
    total = 0
    for t in divisors(n):
        mu = mobius(t)
        if mu == 0:
            continue
        m = n // t
        inner = 0
        for root in nth_roots(F, t, nm):
            if t % F.p:
                tr_t = F._mull[tr][F.inverse(F.from_int(t))]
                inner += provider(F, m, root, tr_t)
            elif tr == 0:
                inner += provider.fiber_total(F, m, root)
        total += mu * inner
    if total % n:
        raise DivisibilityViolation(f"n P_n = {total} is not divisible by n = {n}")
    return total // n


def pn_lemma_as_printed(F: GF, n: int, a, b, provider: NnProvider = ORACLE) -> Fraction:
    """(1/n) sum_{t|n} mu(t) N_{n/t}(a, b) with a, b passed straight through.

    This is not P_n(a, b) in general; it is kept to exhibit where it differs.
    """
    a, b = _idx(a), _idx(b)
    s = sum(mobius(t) * provider(F, n // t, a, b) for t in divisors(n))
    return Fraction(s, n)


def pn_printed(q: int, n: int, a, b) -> Fraction:
    """(1/n) sum_{t|n} mu(n/t) N_t(a, b) with the printed N_t formulas, a and b passed straight through."""
    a, b = _idx(a), _idx(b)
    if q not in cf.CLOSED_FORM_FIELDS:
        raise ValueError(f"no closed form for q = {q}")
    s = sum(mobius(n // t) * Fraction(cf.nn_closed(q, t, a, b, cf.PAPER).value) for t in divisors(n))
    return s / n


def pn_closed(q: int, n: int, a, b, source: str = cf.ERRATA) -> int:
    """P_n(a, b) for q in {2, 3, 4, 5} from the closed forms for N.

    ``paper_stated`` evaluates :func:`pn_printed` and raises
    DivisibilityViolation when it is not an integer.  ``errata_corrected``
    feeds the corrected N formulas through :func:`pn`.
    """
    source = cf.normalize_source(source)
    if q not in cf.CLOSED_FORM_FIELDS:
        raise ValueError(f"no closed form for q = {q}")
    if n < 1:
        raise ValueError("degree must be positive")
    if source == cf.PAPER:
        s = pn_printed(q, n, a, b)
        if s.denominator != 1:
            raise DivisibilityViolation(f"printed formula gives P_{n}({_idx(a)},{_idx(b)}) = {s} for q = {q}")
        return int(s)
    p, e = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}[q]
    return pn(base_field(p, e), n, a, b, NnProvider("closed", source))


def necklace_count(q: int, n: int) -> int:
    """Number of monic irreducible polynomials of degree n over F_q."""
    s = sum(mobius(t) * q ** (n // t) for t in divisors(n))
    return s // n
