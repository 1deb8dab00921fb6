"""Exact truncated Laurent series in the nome q.

Coefficients are arbitrary-precision rationals; exponents live on a grid
lead_exp + k*step whose denominators divide 24 (the eta grid).  Truncation
is an explicit attribute: exponents at or above ``trunc`` are unknown, not
zero, and arithmetic never fabricates coefficients past the knowledge
boundary of its operands.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]

GRID_DENOMINATOR = 24


class GridError(ValueError):
    """Exponent grids of the operands cannot be merged within the 1/24 grid."""


class TruncationError(ValueError):
    """A coefficient beyond the truncation order was requested."""


def _frgcd(x: Fraction, y: Fraction) -> Fraction:
    if x == 0:
        return abs(y)
    if y == 0:
        return abs(x)
    return Fraction(gcd(x.numerator * y.denominator, y.numerator * x.denominator),
                    x.denominator * y.denominator)


def _as_fraction(v: Rat) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class QSeries:
    """A truncated series sum_i c_i q^(lead_exp + i*step), known below ``trunc``."""

    __slots__ = ("lead_exp", "step", "coeffs", "trunc", "extended")

    def __init__(self, lead_exp: Rat, step: Rat, coeffs: Iterable[Rat],
                 trunc: Rat, extended: bool = False):
        lead_exp = _as_fraction(lead_exp)
        step = _as_fraction(step)
        trunc = _as_fraction(trunc)
        if step <= 0:
            raise ValueError("step must be positive")
        cs = [_as_fraction(c) for c in coeffs]
        # trim leading zeros
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        cs = cs[lo:]
        lead_exp += lo * step
        while cs and cs[-1] == 0:
            cs.pop()
        # drop anything at or above the truncation order
        if cs:
            n_known = (trunc - lead_exp) / step
            limit = n_known.numerator // n_known.denominator
            if n_known == limit:
                limit = limit  # exponent == trunc is already unknown
            else:
                limit += 1
            if limit < len(cs):
                del cs[limit:]
            while cs and cs[-1] == 0:
                cs.pop()
        if not extended:
            if GRID_DENOMINATOR % step.denominator or GRID_DENOMINATOR % lead_exp.denominator:
                raise GridError(
                    f"exponent grid {lead_exp} + k*{step} leaves the 1/{GRID_DENOMINATOR} grid")
        self.lead_exp = lead_exp
        self.step = step
        self.coeffs = cs
        self.trunc = trunc
        self.extended = extended

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, trunc: Rat) -> "QSeries":
        return cls(0, 1, [], trunc)

    @classmethod
    def one(cls, trunc: Rat) -> "QSeries":
        return cls(0, 1, [1], trunc)

    @classmethod
    def from_integer_coeffs(cls, lead: int, coeffs: Sequence[Rat], trunc: Rat) -> "QSeries":
        """Series on the integer exponent grid starting at q^lead."""
        return cls(lead, 1, coeffs, trunc)

    @classmethod
    def monomial(cls, exp: Rat, trunc: Rat, coeff: Rat = 1) -> "QSeries":
        return cls(exp, 1, [coeff], trunc)

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exp: Rat) -> Fraction:
        """Coefficient at exponent ``exp``; raises past the truncation order."""
        exp = _as_fraction(exp)
        if exp >= self.trunc:
            raise TruncationError(f"coefficient at q^{exp} is beyond trunc={self.trunc}")
        if not self.coeffs:
            return Fraction(0)
        idx = (exp - self.lead_exp) / self.step
        if idx.denominator != 1:
            return Fraction(0)
        i = idx.numerator
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def integer_coeffs(self, lo: int, hi: int) -> list:
        """Coefficients at integer exponents lo..hi inclusive."""
        return [self.coeff(k) for k in range(lo, hi + 1)]

    def exponents(self):
        return [self.lead_exp + i * self.step for i in range(len(self.coeffs))]

    def is_normalized(self) -> bool:
        """Simple pole with unit residue and zero constant term: q^-1 + O(q)."""
        if self.is_zero or self.lead_exp != -1 or self.coeffs[0] != 1:
            return False
        for e, c in zip(self.exponents(), self.coeffs):
            if -1 < e <= 0 and c != 0:
                return False
        return True

    def truncate(self, new_trunc: Rat) -> "QSeries":
        new_trunc = _as_fraction(new_trunc)
        if new_trunc > self.trunc:
            raise TruncationError("cannot extend knowledge by truncating")
        return QSeries(self.lead_exp, self.step, self.coeffs, new_trunc, self.extended)

    def __repr__(self) -> str:
        parts = []
        for e, c in zip(self.exponents(), self.coeffs):
            if c:
                parts.append(f"{c}*q^({e})")
            if len(parts) == 4:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        return f"QSeries({body} + O(q^{self.trunc}))"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        exps = {e for e in self.exponents() if e < t}
        exps |= {e for e in other.exponents() if e < t}
        return all(self.coeff(e) == other.coeff(e) for e in exps)

    __hash__ = None

    # -- grid handling ---------------------------------------------------

    def _common_grid(self, other: "QSeries"):
        s = _frgcd(self.step, other.step)
        if not (self.is_zero or other.is_zero):
            diff = self.lead_exp - other.lead_exp
            if diff != 0 and (diff / s).denominator != 1:
                s = _frgcd(s, diff)
        ext = self.extended or other.extended
        if not ext and GRID_DENOMINATOR % s.denominator:
            raise GridError(f"common grid step {s} exceeds the 1/{GRID_DENOMINATOR} bound")
        return s, ext

    def _on_grid(self, step: Fraction):
        """(offset index of lead on the new grid relative to 0, coeff list)."""
        if self.is_zero:
            return 0, []
        ratio = self.step / step
        assert ratio.denominator == 1
        r = ratio.numerator
        if r == 1:
            return self.lead_exp / step, self.coeffs
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * r + 1)
        for i, c in enumerate(self.coeffs):
            out[i * r] = c
        return self.lead_exp / step, out

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.lead_exp, self.step, [-c for c in self.coeffs],
                       self.trunc, self.extended)

    def __add__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, 1, [other], self.trunc, self.extended)
        if not isinstance(other, QSeries):
            return NotImplemented
        step, ext = self._common_grid(other)
        trunc = min(self.trunc, other.trunc)
        if self.is_zero:
            return QSeries(other.lead_exp, other.step, other.coeffs, trunc, ext)
        if other.is_zero:
            return QSeries(self.lead_exp, self.step, self.coeffs, trunc, ext)
        ia, ca = self._on_grid(step)
        ib, cb = other._on_grid(step)
        assert ia.denominator == 1 and ib.denominator == 1
        ia, ib = ia.numerator, ib.numerator
        lo = min(ia, ib)
        hi = max(ia + len(ca), ib + len(cb))
        out = [Fraction(0)] * (hi - lo)
        for i, c in enumerate(ca):
            out[ia - lo + i] += c
        for i, c in enumerate(cb):
            out[ib - lo + i] += c
        return QSeries(lo * step, step, out, trunc, ext)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, 1, [other], self.trunc, self.extended)
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries(self.lead_exp, self.step, [c * other for c in self.coeffs],
                           self.trunc, self.extended)
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.is_zero or other.is_zero:
            a_lead = self.lead_exp if not self.is_zero else self.trunc
            b_lead = other.lead_exp if not other.is_zero else other.trunc
            return QSeries(0, 1, [], min(self.trunc + b_lead, other.trunc + a_lead),
                           self.extended or other.extended)
        step, ext = self._common_grid(other)
        trunc = min(self.trunc + other.lead_exp, other.trunc + self.lead_exp)
        ia, ca = self._on_grid(step)
        ib, cb = other._on_grid(step)
        lead = (ia + ib) * step
        # number of product coefficients actually known
        span = (trunc - lead) / step
        n_out = span.numerator // span.denominator + (1 if span.denominator > 1 else 0)
        n_out = max(0, min(n_out, len(ca) + len(cb) - 1))
        out = _convolve(ca, cb, n_out)
        return QSeries(lead, step, out, trunc, ext)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            t = self.trunc if self.is_zero else self.trunc - self.lead_exp
            return QSeries(0, 1, [1], t, self.extended)
        # repeated squaring keeps the truncation propagation of mul
        result = None
        base = self
        m = n
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse up to the propagated truncation order."""
        if self.is_zero:
            raise ZeroDivisionError("cannot invert a series that vanishes to its trunc order")
        c0 = self.coeffs[0]
        lead = self.lead_exp
        # u = self / (c0 q^lead) = 1 + ..., known to order (trunc - lead);
        # trailing zeros below trunc are known and count toward the order
        span = (self.trunc - lead) / self.step
        n = max(len(self.coeffs),
                span.numerator // span.denominator + (1 if span.denominator > 1 else 0))
        u = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        inv = [Fraction(0)] * n
        inv[0] = 1 / c0
        if all(c.denominator == 1 for c in u) and abs(c0) == 1:
            ui = [c.numerator for c in u]
            vi = [0] * n
            vi[0] = ui[0]  # +-1
            for k in range(1, n):
                s = 0
                for j in range(1, k + 1):
                    if ui[j]:
                        s += ui[j] * vi[k - j]
                vi[k] = -s * ui[0]
            inv = [Fraction(v) for v in vi]
        else:
            for k in range(1, n):
                s = Fraction(0)
                for j in range(1, k + 1):
                    if u[j]:
                        s += u[j] * inv[k - j]
                inv[k] = -s / c0
        trunc = self.trunc - 2 * lead
        return QSeries(-lead, self.step, inv, trunc, self.extended)

    def substitute(self, k: Rat, extended: bool = False) -> "QSeries":
        """q -> q^k; exponents and truncation scale by k."""
        k = _as_fraction(k)
        if k <= 0:
            raise ValueError("substitution exponent must be positive")
        return QSeries(self.lead_exp * k, self.step * k, self.coeffs,
                       self.trunc * k, extended or self.extended)


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], n_out: int) -> list:
    """First n_out coefficients of the Cauchy product."""
    if n_out <= 0:
        return []
    int_path = all(c.denominator == 1 for c in a) and all(c.denominator == 1 for c in b)
    if int_path:
        xs = [c.numerator for c in a]
        ys = [c.numerator for c in b]
        out = [0] * n_out
    else:
        xs, ys = list(a), list(b)
        out = [Fraction(0)] * n_out
    for i, x in enumerate(xs):
        if i >= n_out:
            break
        if x:
            hi = min(len(ys), n_out - i)
            for j in range(hi):
                y = ys[j]
                if y:
                    out[i + j] += x * y
    if int_path:
        out = [Fraction(v) for v in out]
    return out


# -- classical oracles ---------------------------------------------------

def euler_phi_int_coeffs(n_terms: int) -> list:
    """prod_{n>=1} (1 - q^n) via the pentagonal number theorem; integer list."""
    out = [0] * n_terms
    k = 0
    while True:
        done = True
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e < n_terms:
                out[e] += -1 if kk % 2 else 1
                done = False
        if done:
            break
        k += 1
    return out


def eta(trunc: Rat) -> "QSeries":
    """Dedekind eta: q^(1/24) prod (1-q^n), expanded by the pentagonal theorem."""
    trunc = _as_fraction(trunc)
    if trunc <= Fraction(1, 24):
        raise ValueError("trunc must exceed 1/24")
    span = trunc - Fraction(1, 24)
    n_terms = span.numerator // span.denominator + (1 if span.denominator > 1 else 0)
    return QSeries(Fraction(1, 24), 1, euler_phi_int_coeffs(n_terms), trunc)


def _sigma_list(power: int, n_max: int) -> list:
    """sigma_power(n) for n = 0..n_max (index 0 unused)."""
    out = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dp = d ** power
        for m in range(d, n_max + 1, d):
            out[m] += dp
    return out


def eisenstein_e4(trunc: Rat) -> "QSeries":
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    trunc = _as_fraction(trunc)
    n_max = max(0, -((-trunc.numerator) // trunc.denominator) - 1)
    sig = _sigma_list(3, n_max)
    coeffs = [1] + [240 * sig[n] for n in range(1, n_max + 1)]
    return QSeries(0, 1, coeffs, trunc)


def delta_int_coeffs(n_terms: int) -> list:
    """tau(1..n_terms): Delta = q prod (1-q^n)^24, integer coefficients."""
    phi = euler_phi_int_coeffs(n_terms)
    p2 = _int_conv(phi, phi, n_terms)
    p3 = _int_conv(p2, phi, n_terms)
    p6 = _int_conv(p3, p3, n_terms)
    p12 = _int_conv(p6, p6, n_terms)
    p24 = _int_conv(p12, p12, n_terms)
    return p24


def _int_conv(a: list, b: list, n_out: int) -> list:
    out = [0] * n_out
    for i, x in enumerate(a):
        if i >= n_out:
            break
        if x:
            hi = min(len(b), n_out - i)
            for j in range(hi):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _int_series_inverse(a: list, n_out: int) -> list:
    """Inverse of a power series with a[0] = +-1, integer coefficients."""
    assert a[0] in (1, -1)
    inv = [0] * n_out
    inv[0] = a[0]
    for k in range(1, n_out):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s += a[j] * inv[k - j]
        inv[k] = -s * a[0]
    return inv


def delta(trunc: Rat) -> "QSeries":
    """Modular discriminant Delta = eta^24."""
    trunc = _as_fraction(trunc)
    n_terms = max(0, -((-trunc.numerator) // trunc.denominator) - 1)
    return QSeries(1, 1, delta_int_coeffs(n_terms), trunc)


def j_int_coeffs(n_terms: int) -> list:
    """[c(-1), c(0), c(1), ...] of J = E4^3/Delta - 744, n_terms entries past c(0)."""
    n = n_terms + 2
    sig = _sigma_list(3, n)
    e4 = [1] + [240 * sig[m] for m in range(1, n)]
    e8 = _int_conv(e4, e4, n)
    e12 = _int_conv(e8, e4, n)
    dq = delta_int_coeffs(n)          # Delta / q
    inv = _int_series_inverse(dq, n)
    j = _int_conv(e12, inv, n)        # q * (J + 744)
    j[1] -= 744
    return j[: n_terms + 2]


def j_oracle(trunc: Rat) -> "QSeries":
    """Normalized J = E4^3/Delta - 744 = q^-1 + 196884 q + ..."""
    trunc = _as_fraction(trunc)
    n_terms = max(0, -((-trunc.numerator) // trunc.denominator) - 1)
    return QSeries(-1, 1, j_int_coeffs(n_terms), trunc)


# -- serialization -------------------------------------------------------

def qseries_to_json(f: QSeries) -> dict:
    def frac(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"
    return {
        "lead_exp": frac(f.lead_exp if not f.is_zero else Fraction(0)),
        "step": frac(f.step),
        "trunc": frac(f.trunc),
        "coeffs": [frac(c) for c in f.coeffs],
    }


def qseries_from_json(doc: dict) -> QSeries:
    def unfrac(s: str) -> Fraction:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return QSeries(unfrac(doc["lead_exp"]), unfrac(doc["step"]),
                   [unfrac(c) for c in doc["coeffs"]], unfrac(doc["trunc"]))
