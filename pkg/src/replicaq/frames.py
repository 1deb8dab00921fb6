"""Partitions, frame shapes and eta products.

A frame shape like ``2^24/1^24`` is a formal quotient of cycle lengths; each
part k contributes a factor eta(q^k).  Balance, weak multiplicativity and the
degree-24 classification of multiplicative eta products live here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .qseries import QSeries, Rat, _as_fraction


class FrameShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Multiset of positive integers, stored sorted ascending."""

    parts: tuple

    def __init__(self, parts):
        parts = tuple(sorted(int(p) for p in parts))
        if not parts:
            raise FrameShapeError("partition must be nonempty")
        if parts[0] < 1:
            raise FrameShapeError("partition parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict:
        out: dict = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def __str__(self) -> str:
        mults = self.multiplicities()
        return " ".join(f"{p}^{m}" for p, m in sorted(mults.items()))


@dataclass(frozen=True)
class FrameShape:
    """Formal eta quotient: numerator parts over denominator parts."""

    numerator: Partition
    denominator: Optional[Partition]

    def __init__(self, numerator, denominator=None):
        num = list(numerator.parts if isinstance(numerator, Partition) else numerator)
        den = []
        if denominator is not None:
            den = list(denominator.parts if isinstance(denominator, Partition) else denominator)
        # cancel common parts on construction
        for p in list(den):
            if p in num:
                num.remove(p)
                den.remove(p)
        if not num:
            raise FrameShapeError("numerator cancels away entirely")
        object.__setattr__(self, "numerator", Partition(num))
        object.__setattr__(self, "denominator", Partition(den) if den else None)

    def exponents(self) -> dict:
        """part -> net eta exponent."""
        out = dict(self.numerator.multiplicities())
        if self.denominator is not None:
            for p, m in self.denominator.multiplicities().items():
                out[p] = out.get(p, 0) - m
        return {p: m for p, m in out.items() if m}

    @property
    def weight_numerator(self) -> int:
        """Number of parts counted with sign; weight is half of this."""
        n = len(self.numerator.parts)
        if self.denominator is not None:
            n -= len(self.denominator.parts)
        return n

    def lead_exponent(self) -> Fraction:
        s = self.numerator.degree
        if self.denominator is not None:
            s -= self.denominator.degree
        return Fraction(s, 24)

    def __str__(self) -> str:
        if self.denominator is None:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


_TOKEN = re.compile(r"^(\d+)\^(\d+)$")


def _parse_partition(text: str) -> Partition:
    parts = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise FrameShapeError(f"bad frame-shape token {tok!r}")
        p, mult = int(m.group(1)), int(m.group(2))
        if p < 1 or mult < 1:
            raise FrameShapeError(f"parts and multiplicities must be positive: {tok!r}")
        parts.extend([p] * mult)
    return Partition(parts)


def parse_frame_shape(text: str) -> FrameShape:
    """Grammar: `part^mult` tokens joined by spaces, optional `/` before the denominator."""
    text = text.strip()
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        return FrameShape(_parse_partition(num_text), _parse_partition(den_text))
    return FrameShape(_parse_partition(text))


# -- balance -------------------------------------------------------------

def is_balanced(p: Partition) -> Optional[int]:
    """Balance number N if outside-in pairwise products are constant, else None."""
    parts = p.parts
    t = len(parts)
    n = parts[0] * parts[-1]
    for i in range(1, (t + 1) // 2):
        if parts[i] * parts[t - 1 - i] != n:
            return None
    return n


# -- eta products --------------------------------------------------------

def _product_int_coeffs(exponents: dict, n_terms: int) -> list:
    """Coefficients of prod_k (prod_n (1 - q^(kn)))^(c_k) via d/dq log.

    n * b_n = -sum_{i=1..n} s_i b_{n-i} with s_i = sum_{k | i} k * c_k;
    the division is exact because the product has integer coefficients.
    """
    e = [0] * (n_terms + 1)  # e[t] = sum of c_k over parts k dividing t
    for k, c in exponents.items():
        for t in range(k, n_terms + 1, k):
            e[t] += c
    s = [0] * (n_terms + 1)  # s[i] = sum over t | i of t * e[t]
    for t in range(1, n_terms + 1):
        if e[t]:
            te = t * e[t]
            for i in range(t, n_terms + 1, t):
                s[i] += te
    b = [0] * (n_terms + 1)
    b[0] = 1
    srev = s[1:]
    for n in range(1, n_terms + 1):
        total = 0
        for i in range(1, n + 1):
            if s[i]:
                total += s[i] * b[n - i]
        q, r = divmod(-total, n)
        assert r == 0, "eta-product recurrence must stay integral"
        b[n] = q
    return b


def eta_product(shape: FrameShape, trunc: Rat) -> QSeries:
    """prod_k eta(q^k)^(m_k) / prod_k eta(q^k)^(n_k) as an exact QSeries."""
    trunc = _as_fraction(trunc)
    lead = shape.lead_exponent()
    span = trunc - lead
    if span <= 0:
        return QSeries(0, 1, [], trunc)
    n_terms = span.numerator // span.denominator + (1 if span.denominator > 1 else 0)
    coeffs = _product_int_coeffs(shape.exponents(), n_terms - 1)
    return QSeries(lead, 1, coeffs, trunc)


# -- multiplicativity ----------------------------------------------------

@dataclass(frozen=True)
class MultiplicativityReport:
    verdict: bool
    bound: int
    first_failure: Optional[tuple] = None  # (m, n, c(m), c(n), c(mn))


def _normalized_int_coeffs(f: QSeries, bound: int) -> list:
    """[c(1)..c(bound)] with c(1) normalized to 1; raises if c(1) not a unit."""
    c = [f.coeff(n) for n in range(1, bound + 1)]
    if not c or c[0] not in (1, -1):
        raise ValueError("cannot normalize: c(1) must be +-1")
    unit = c[0]
    out = []
    for v in c:
        v = v * unit
        if v.denominator != 1:
            raise ValueError("weak multiplicativity needs integer coefficients")
        out.append(v.numerator)
    return out


def weak_multiplicativity(f: QSeries, bound: int) -> MultiplicativityReport:
    """Check c(mn) = c(m) c(n) for all coprime pairs with m*n <= bound."""
    c = _normalized_int_coeffs(f, bound)
    fail = _first_mult_failure(c, bound)
    return MultiplicativityReport(fail is None, bound, fail)


def _first_mult_failure(c: list, bound: int) -> Optional[tuple]:
    for m in range(2, bound):
        if m * (m + 1) > bound:
            break
        for n in range(m + 1, bound // m + 1):
            if gcd(m, n) == 1 and c[m * n - 1] != c[m - 1] * c[n - 1]:
                return (m, n, c[m - 1], c[n - 1], c[m * n - 1])
    return None


# -- degree-24 classification --------------------------------------------

def partitions_of(n: int):
    """All partitions of n, ascending parts, generated in lexicographic order."""

    def rec(remaining, minimum, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        for p in range(minimum, remaining + 1):
            prefix.append(p)
            yield from rec(remaining - p, p, prefix)
            prefix.pop()

    yield from rec(n, 1, [])


def classify_degree24(bound: int) -> list:
    """The weakly multiplicative eta products among the partitions of 24.

    Screens every partition numerically up to ``bound`` coprime products;
    a cheap low-order screen rejects most candidates first.
    """
    if bound < 100:
        raise ValueError("screening bound must be at least 100")
    screen = min(bound, 42)
    survivors = []
    for parts in partitions_of(24):
        shape = FrameShape(parts)
        c = _product_int_coeffs(shape.exponents(), screen - 1)
        if _first_mult_failure(c, screen) is None:
            survivors.append(shape)
    out = []
    for shape in survivors:
        c = _product_int_coeffs(shape.exponents(), bound - 1)
        if _first_mult_failure(c, bound) is None:
            out.append(shape)
    out.sort(key=lambda s: s.numerator.parts)
    return out


# -- Euler factors -------------------------------------------------------

def euler_factor_check(f: QSeries, p: int, weight: int) -> bool:
    """Hecke-eigenvalue identity a_p^2 - a_{p^2} = p^(weight-1) plus the
    prime-power recursion c(p^(r+1)) = a_p c(p^r) - b_p c(p^(r-1)).

    p = 3 shows anomalous character behavior in parts of this family; callers
    that care should annotate p = 3 results separately (see cli.verify).
    """
    avail = f.trunc
    if avail <= p * p:
        raise ValueError(f"truncation {avail} too small to see p^2 = {p * p}")
    bound = int(avail) - 1
    c = _normalized_int_coeffs(f, bound)
    a_p = c[p - 1]
    b_p = a_p * a_p - c[p * p - 1]
    if b_p != p ** (weight - 1):
        return False
    power = p * p
    prev, cur = c[p - 1], c[p * p - 1]
    while power * p <= bound:
        power *= p
        nxt = c[power - 1]
        if nxt != a_p * cur - b_p * prev:
            return False
        prev, cur = cur, nxt
    return True
