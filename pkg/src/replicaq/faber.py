"""Faber polynomials of a normalized series, by three routes.

The recursion is the canonical construction; pole-killing elimination and the
Hessenberg determinant are independent verification paths.  The recursion is
derived from the log generating function and reproduces the classical closed
forms F_2 = z^2 - 2 a_1 and F_3 = z^3 - 3 a_1 z - 3 a_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qseries import QSeries, TruncationError, _as_fraction


@dataclass(frozen=True)
class FaberPolynomial:
    """Monic polynomial of degree n; coeffs descending, length n + 1."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        assert len(self.coeffs) == self.n + 1
        assert self.coeffs[0] == 1

    def __call__(self, f):
        """Evaluate at a rational or a QSeries, by Horner."""
        acc = None
        for c in self.coeffs:
            if acc is None:
                acc = f * 0 + c if isinstance(f, QSeries) else Fraction(c)
            else:
                acc = acc * f + c
        return acc

    def to_json(self) -> dict:
        return {
            "degree": self.n,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }


def _coeff_accessor(a: Sequence):
    """a_k for k >= 1 from a list with a[k-1] = a_k (normalized series, a_0 = 0)."""
    def get(k: int) -> Fraction:
        return _as_fraction(a[k - 1])
    return get


# polynomial helpers: dense ascending lists of Fractions

def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pscale(p, c):
    return [x * c for x in p]


def _pmulz(p):
    return [Fraction(0)] + list(p)


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] += x * y
    return out


def _to_poly(ascending) -> FaberPolynomial:
    asc = list(ascending)
    while len(asc) > 1 and asc[-1] == 0:
        asc.pop()
    n = len(asc) - 1
    return FaberPolynomial(n, tuple(_as_fraction(c) for c in reversed(asc)))


def faber_by_recursion(a: Sequence, n: int) -> FaberPolynomial:
    """F_n = z F_{n-1} - n a_{n-1} - sum_{i=1}^{n-2} a_i F_{n-1-i}  (a_0 = 0)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    ak = _coeff_accessor(a)
    polys = [[Fraction(1)]]
    for m in range(1, n + 1):
        cur = _pmulz(polys[m - 1])
        if m >= 2:
            cur[0] -= m * ak(m - 1)
            for i in range(1, m - 1):
                cur = _padd(cur, _pscale(polys[m - 1 - i], -ak(i)))
        polys.append(cur)
    return _to_poly(polys[n])


def faber_by_elimination(f: QSeries, n: int) -> FaberPolynomial:
    """Kill every pole of f^n below order n with lower powers of f."""
    if not f.is_normalized():
        raise ValueError("elimination needs a normalized series q^-1 + O(q)")
    if f.trunc < n + 1:
        raise TruncationError(f"need trunc >= {n + 1}, have {f.trunc}")
    if n == 0:
        return FaberPolynomial(0, (Fraction(1),))
    powers = [f ** 0]
    for _ in range(n):
        powers.append(powers[-1] * f)
    combo = powers[n]
    poly = [Fraction(0)] * (n + 1)
    poly[0] = Fraction(1)
    for j in range(n - 1, -1, -1):
        c = combo.coeff(-j)
        if c:
            combo = combo - powers[j] * c
            poly[n - j] = -c
    return FaberPolynomial(n, tuple(poly))


def faber_by_determinant(a: Sequence, n: int) -> FaberPolynomial:
    """det(z I - A_n) for the shifted Hessenberg matrix with b_1 = 0, b_k = a_{k-1}.

    Evaluated by fraction-free Bareiss elimination over polynomial entries, so
    this path shares no code with the recursion.
    """
    if n == 0:
        return FaberPolynomial(0, (Fraction(1),))
    ak = _coeff_accessor(a)

    def b(k):
        return Fraction(0) if k == 1 else ak(k - 1)

    # M[i][j] as ascending polynomials in z (0-based indices)
    M = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append([-b(1), Fraction(1)])
            elif j == i + 1:
                row.append([Fraction(-1)])
            elif j == 1:
                row.append([-i * b(i)])
            elif j < i:
                row.append([-b(i - j + 1)])
            else:
                row.append([Fraction(0)])
        M.append(row)
    det = _bareiss_poly_det(M)
    return _to_poly(det)


def _pdiv_exact(p, d):
    """Exact polynomial division; remainder must vanish."""
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    d = list(d)
    while len(d) > 1 and d[-1] == 0:
        d.pop()
    if d == [Fraction(0)] or not d:
        raise ZeroDivisionError
    out = [Fraction(0)] * max(1, len(p) - len(d) + 1)
    while len(p) >= len(d) and any(p):
        k = len(p) - len(d)
        c = p[-1] / d[-1]
        out[k] = c
        for i, dv in enumerate(d):
            p[k + i] -= c * dv
        while len(p) > 1 and p[-1] == 0:
            p.pop()
    assert all(v == 0 for v in p), "Bareiss division must be exact"
    return out


def _bareiss_poly_det(M):
    n = len(M)
    M = [row[:] for row in M]
    prev = [Fraction(1)]
    sign = 1
    for k in range(n - 1):
        if not any(M[k][k]):
            swap = next((r for r in range(k + 1, n) if any(M[r][k])), None)
            if swap is None:
                return [Fraction(0)]
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _padd(_pmul(M[i][j], M[k][k]), _pscale(_pmul(M[i][k], M[k][j]), -1))
                M[i][j] = _pdiv_exact(num, prev)
            M[i][k] = [Fraction(0)]
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return _pscale(det, sign)


def symmetric_function_check(x: Sequence, order: int) -> bool:
    """Both generating-function identities for complete homogeneous and
    elementary symmetric polynomials, as exact truncated series in t."""
    if order < 1:
        raise ValueError("order must be >= 1")
    xs = [_as_fraction(v) for v in x]
    n = order + 1

    def trunc_mul(p, q):
        out = [Fraction(0)] * n
        for i, a in enumerate(p):
            if a and i < n:
                for j, bv in enumerate(q):
                    if i + j >= n:
                        break
                    out[i + j] += a * bv
        return out

    def series_exp(u):
        # u has zero constant term
        out = [Fraction(0)] * n
        out[0] = Fraction(1)
        term = [Fraction(0)] * n
        term[0] = Fraction(1)
        for j in range(1, n):
            term = trunc_mul(term, u)
            fact = 1
            for i in range(2, j + 1):
                fact *= i
            out = [o + t / fact for o, t in zip(out, term)]
        return out

    power_sums = [sum(v ** m for v in xs) for m in range(1, n)]

    hom = [Fraction(0)] * n
    hom[0] = Fraction(1)
    for v in xs:
        geo = [v ** i for i in range(n)]
        hom = trunc_mul(hom, geo)
    u = [Fraction(0)] + [Fraction(power_sums[m - 1], m) for m in range(1, n)]
    if hom != series_exp(u):
        return False

    elem = [Fraction(0)] * n
    elem[0] = Fraction(1)
    for v in xs:
        elem = trunc_mul(elem, [Fraction(1), v])
    u2 = [Fraction(0)] + [Fraction(-((-1) ** m) * power_sums[m - 1], m) for m in range(1, n)]
    return elem == series_exp(u2)
