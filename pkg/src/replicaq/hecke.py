"""Hecke operators on normalized q-series and the p = 2 coefficient recurrences.

T_n is implemented twice: a closed coefficient formula and an independent
composition of U_d and V_a slash operators.  For a replicable family the
twisted operator satisfies n T_n f = F_n(f), which ties this module to the
Faber machinery.  The second half derives Mahler-style recurrences expressing
every coefficient a_N (N >= 6) through a_1..a_5 and the duplicate f^(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .qseries import QSeries, TruncationError, _as_fraction
from .faber import faber_by_recursion
from .replicable import ReplicationFamily


def sublattice_reps(n: int) -> List[Tuple[int, int, int]]:
    """Upper-triangular representatives (a, b, d): ad = n, 0 <= b < d."""
    if n < 1:
        raise ValueError("index must be positive")
    return [(a, b, n // a) for a in range(1, n + 1) if n % a == 0
            for b in range(n // a)]


def _require_integer_grid(f: QSeries) -> None:
    if f.step != 1 or f.lead_exp.denominator != 1:
        raise ValueError("Hecke operators here act on integer exponent grids")


def up(f: QSeries, p: int) -> QSeries:
    """U_p: picks coefficients c(p j); the q^-1 pole is dropped unless p = 1."""
    _require_integer_grid(f)
    if p < 1:
        raise ValueError("p must be positive")
    trunc = f.trunc / p
    lo = -((-f.lead_exp.numerator) // p)  # ceil(lead / p)
    coeffs = []
    j = lo
    while j < trunc:
        coeffs.append(f.coeff(p * j))
        j += 1
    return QSeries(lo, 1, coeffs, trunc, f.extended)


def vp(f: QSeries, p: int) -> QSeries:
    """V_p: q -> q^p."""
    return f.substitute(p)


def hecke_Tn(f: QSeries, n: int) -> QSeries:
    """T_n by the closed formula [q^j] T_n f = (1/n) sum_{ad=n, a|j} d c(jd/a)."""
    _require_integer_grid(f)
    if n < 1:
        raise ValueError("index must be positive")
    pairs = [(a, n // a) for a in range(1, n + 1) if n % a == 0]
    trunc = f.trunc / n
    out = []
    j = -n
    while j < trunc:
        total = Fraction(0)
        for a, d in pairs:
            if j % a == 0:
                total += d * f.coeff(j * d // a)
        out.append(total / n)
        j += 1
    return QSeries(-n, 1, out, trunc)


def hecke_Tn_via_uv(f: QSeries, n: int) -> QSeries:
    """Oracle route: T_n f = (1/n) sum_{ad=n} d V_a(U_d f) with the pole restored.

    U_d drops the q^-1 term of f (d does not divide -1), so the a = n, d = 1
    summand is the only one contributing the q^-n pole; no correction needed.
    """
    _require_integer_grid(f)
    acc = None
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            term = vp(up(f, d), a) * d
            acc = term if acc is None else acc + term
    return acc * Fraction(1, n)


def twisted_Tn(fam: ReplicationFamily, n: int) -> QSeries:
    """Twisted Hecke operator: the a-divisor slice acts on the replicate f^(a)."""
    if n < 1:
        raise ValueError("index must be positive")
    acc = None
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            g = fam.power(a)
            _require_integer_grid(g)
            term = vp(up(g, d), a) * d
            acc = term if acc is None else acc + term
    return acc * Fraction(1, n)


@dataclass(frozen=True)
class HeckeFaberReport:
    n: int
    ok: bool
    compared_exponents: int
    first_mismatch: Optional[tuple] = None  # (exponent, n*T_n side, Faber side)


def hecke_faber_verify(fam: ReplicationFamily, n_max: int,
                       trunc: Optional[int] = None) -> List[HeckeFaberReport]:
    """Check n T_n f = F_n(f) (twisted T_n) for n = 1..n_max, per-n reports."""
    f = fam.base
    avail = int(f.trunc)
    a_list = [f.coeff(k) for k in range(1, avail)]
    out = []
    for n in range(1, n_max + 1):
        lhs = twisted_Tn(fam, n) * n
        rhs = faber_by_recursion(a_list, n)(f)
        bound = min(lhs.trunc, rhs.trunc)
        if trunc is not None:
            bound = min(bound, Fraction(trunc))
        mismatch = None
        count = 0
        j = -n
        while j < bound:
            count += 1
            if lhs.coeff(j) != rhs.coeff(j):
                mismatch = (j, lhs.coeff(j), rhs.coeff(j))
                break
            j += 1
        out.append(HeckeFaberReport(n, mismatch is None, count, mismatch))
    return out


# -- p = 2 recurrences ---------------------------------------------------

Num = Union[int, Fraction]
CoeffFn = Callable[[int], Num]


def _half_twist(g: QSeries) -> QSeries:
    """q^(1/2) -> -q^(1/2): negate coefficients at odd half-integer exponents."""
    coeffs = []
    for e, c in zip(g.exponents(), g.coeffs):
        m = e * 2
        if m.denominator != 1:
            raise ValueError("series does not live on the half-integer grid")
        coeffs.append(-c if m.numerator % 2 else c)
    return QSeries(g.lead_exp, g.step, coeffs, g.trunc, g.extended)


def _halved(whole: Num, doubled: Num) -> Num:
    """whole + doubled / 2, staying in int whenever the division is exact."""
    if isinstance(whole, int) and isinstance(doubled, int):
        q, r = divmod(doubled, 2)
        if r == 0:
            return whole + q
    return whole + Fraction(doubled, 2)


def _rule_a4k(a: CoeffFn, h2: CoeffFn, k: int) -> Num:
    whole = a(2 * k + 1)
    for j in range(1, k):
        whole += a(j) * a(2 * k - j)
    return _halved(whole, a(k) * a(k) - h2(k))


def _rule_a4k2(a: CoeffFn, h2: CoeffFn, k: int) -> Num:
    whole = a(2 * k + 2)
    for j in range(1, k + 1):
        whole += a(j) * a(2 * k + 1 - j)
    return whole


def _rule_a4k1(a: CoeffFn, h2: CoeffFn, k: int) -> Num:
    if k < 2:
        raise ValueError("a_{4k+1} rule needs k >= 2")
    whole = a(2 * k + 3) - a(2) * a(2 * k)
    for kap in range(1, k):
        whole += a(4 * k - 4 * kap) * h2(kap)
    doubled = h2(2 * k) - h2(k + 1)
    for i in range(1, 2 * k + 2):
        doubled += a(i) * a(2 * k + 2 - i)
    for i in range(1, 4 * k):
        j = 4 * k - i
        term = a(i) * a(j)
        doubled += -term if j % 2 else term
    return _halved(whole, doubled)


def _rule_a4k3(a: CoeffFn, h2: CoeffFn, k: int) -> Num:
    if k < 1:
        raise ValueError("a_{4k+3} rule needs k >= 1")
    whole = a(2 * k + 4) - a(2) * a(2 * k + 1)
    for kap in range(1, k + 1):
        whole += a(4 * k + 2 - 4 * kap) * h2(kap)
    doubled = h2(2 * k + 1)
    for i in range(1, 2 * k + 3):
        doubled += a(i) * a(2 * k + 3 - i)
    for i in range(1, 4 * k + 2):
        j = 4 * k + 2 - i
        term = a(i) * a(j)
        doubled += -term if j % 2 else term
    return _halved(whole, doubled)


RULES = {
    "a_4k": _rule_a4k,
    "a_4k+1": _rule_a4k1,
    "a_4k+2": _rule_a4k2,
    "a_4k+3": _rule_a4k3,
}


def _rule_for(n: int):
    """(rule, k) computing a_n; defined for n >= 6."""
    if n < 6:
        raise ValueError("rules start at a_6; a_1..a_5 are seeds")
    r = n % 4
    k = n // 4
    if r == 0:
        return _rule_a4k, k
    if r == 1:
        return _rule_a4k1, k
    if r == 2:
        return _rule_a4k2, k
    return _rule_a4k3, k


@dataclass(frozen=True)
class RecurrenceSet:
    """Verified p = 2 recurrence system for one replicable function."""

    e1_ok: bool
    e2_ok: bool
    rules_verified_to: int
    first_rule_failure: Optional[tuple] = None  # (n, predicted, actual)

    @property
    def ok(self) -> bool:
        return self.e1_ok and self.e2_ok and self.first_rule_failure is None


def derive_p2_recurrences(fam: ReplicationFamily, terms: int) -> RecurrenceSet:
    """Numerically certify the two symmetric-function identities behind the
    rules and then the four rules themselves, against the family's expansion.

    E1: A + B + C = f^2 - 2 a_1, with A = f(z/2), B its q^(1/2) -> -q^(1/2)
    twist and C = f^(2)(2z).  E2: AB + AC + BC = 2 a_2 f - f^(2) + 2 (a_4 - a_1);
    the f^(2) term collapses into the classical (2 a_2 - 1) f form only when f
    is its own duplicate.
    """
    f = fam.base
    _require_integer_grid(f)
    f2 = fam.power(2)
    A = f.substitute(Fraction(1, 2))
    B = _half_twist(A)
    C = f2.substitute(2)
    a1, a2, a4 = f.coeff(1), f.coeff(2), f.coeff(4)
    e1_ok = (A + B + C) == (f * f - 2 * a1)
    e2_ok = (A * B + A * C + B * C) == (f * (2 * a2) - f2 + 2 * (a4 - a1))

    a = lambda i: f.coeff(i)
    h2 = lambda i: f2.coeff(i)
    first_fail = None
    top = min(terms, int(f.trunc) - 1)
    for n in range(6, top + 1):
        rule, k = _rule_for(n)
        predicted = rule(a, h2, k)
        if predicted != f.coeff(n):
            first_fail = (n, predicted, f.coeff(n))
            break
    return RecurrenceSet(e1_ok, e2_ok, top, first_fail)


def mahler_compute(seeds: Sequence[Num], h2: CoeffFn, trunc: int) -> QSeries:
    """Expand a replicable function from a_1..a_5 and its duplicate's
    coefficients, by the four p = 2 rules.  Stays in exact integers when the
    inputs are integers."""
    if len(seeds) != 5:
        raise ValueError("need exactly the five seeds a_1..a_5")
    a: Dict[int, Num] = {i + 1: s if isinstance(s, int) else _as_fraction(s)
                         for i, s in enumerate(seeds)}

    def get(i: int) -> Num:
        return a[i]

    for n in range(6, trunc):
        rule, k = _rule_for(n)
        a[n] = rule(get, h2, k)
    coeffs = [Fraction(1), Fraction(0)] + [_as_fraction(a[i]) for i in range(1, trunc)]
    return QSeries(-1, 1, coeffs, trunc)
