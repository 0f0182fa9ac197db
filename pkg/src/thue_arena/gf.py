"""Exact analysis of the walk-counting generating functions.

Solves the two functional equations as truncated integer power series,
extracts the bivariate defining polynomials, computes their discriminants
with respect to the series variable by fraction-free Sylvester elimination,
isolates positive real roots with Sturm chains over exact rationals, and
certifies the strict growth-rate bounds.  Floating point appears only in
reported approximations, never in a decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

EQUATIONS = ("erase", "search")

# --- integer power series (dense lists, index = power of z) -----------------


def _series_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai and i <= order:
            hi = min(len(b), order + 1 - i)
            for j in range(hi):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def _series_geometric(t: list[int], order: int) -> list[int]:
    """1 / (1 - t) for a series t with zero constant term."""
    assert t[0] == 0
    inv = [0] * (order + 1)
    inv[0] = 1
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, min(n, len(t) - 1) + 1):
            if t[k]:
                acc += t[k] * inv[n - k]
        inv[n] = acc
    return inv


def _shift(a: list[int], by: int, order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai and i + by <= order:
            out[i + by] = ai
    return out


@dataclass(frozen=True)
class PowerSeries:
    """Truncated series with exact integer coefficients; index = power."""

    coefficients: tuple[int, ...]
    order: int

    def coefficient(self, n: int) -> int:
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coefficients[n]

    def counts(self) -> list[int]:
        """Coefficients of z^1 .. z^order (the walk counts)."""
        return list(self.coefficients[1:])


def _check_equation(equation: str) -> None:
    if equation not in EQUATIONS:
        raise ValueError(f"unknown equation {equation!r}; expected one of {EQUATIONS}")


def solve_series(equation: str, order: int) -> PowerSeries:
    """Fixed-point solution of the walk functional equation, truncated.

    erase:  t = z + z t^4 / (1 - t)
    search: t = z + z t^2 + 4 z t^3 / (1 - t)

    Each iteration pins one more coefficient, so ``order + 1`` rounds suffice.
    """
    _check_equation(equation)
    if order < 1:
        raise ValueError("order must be >= 1")
    t = [0] * (order + 1)
    for _ in range(order + 1):
        geo = _series_geometric(t, order)
        if equation == "erase":
            t4 = _series_mul(_series_mul(t, t, order), _series_mul(t, t, order), order)
            rhs = _shift(_series_mul(t4, geo, order), 1, order)
            rhs[1] += 1
        else:
            t2 = _series_mul(t, t, order)
            t3 = _series_mul(t2, t, order)
            rhs = [4 * c for c in _shift(_series_mul(t3, geo, order), 1, order)]
            shifted_t2 = _shift(t2, 1, order)
            for i in range(order + 1):
                rhs[i] += shifted_t2[i]
            rhs[1] += 1
        t = rhs
    return PowerSeries(tuple(t), order)


# --- bivariate defining polynomials ------------------------------------------
#
# Dict mapping (power of z, power of t) to an integer coefficient.

BivarPoly = dict[tuple[int, int], int]


def defining_polynomial(equation: str) -> BivarPoly:
    """The bivariate polynomial annihilating the walk generating function."""
    _check_equation(equation)
    if equation == "erase":
        # z t^4 + t^2 - (1 + z) t + z
        return {(1, 4): 1, (0, 2): 1, (0, 1): -1, (1, 1): -1, (1, 0): 1}
    # -t + t^2 + z - t z + t^2 z + 3 t^3 z
    return {(0, 1): -1, (0, 2): 1, (1, 0): 1, (1, 1): -1, (1, 2): 1, (1, 3): 3}


def apply_to_series(poly: BivarPoly, series: PowerSeries) -> list[int]:
    """Coefficients of P(z, t(z)) up to the series order."""
    order = series.order
    t = list(series.coefficients)
    max_t = max(j for _, j in poly)
    powers: list[list[int]] = [[0] * (order + 1)]
    powers[0][0] = 1
    for _ in range(max_t):
        powers.append(_series_mul(powers[-1], t, order))
    out = [0] * (order + 1)
    for (i, j), c in poly.items():
        term = _shift(powers[j], i, order)
        for n in range(order + 1):
            out[n] += c * term[n]
    return out


# --- univariate integer polynomials (dense ascending lists) ------------------


def _norm(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _psub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return _norm(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _norm(out)


def _pdiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Z[z]; raises if a remainder or fraction appears."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    rem = [Fraction(c) for c in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        q = rem[k + len(b) - 1] / lead
        out[k] = q
        if q:
            for j, bj in enumerate(b):
                rem[k + j] -= q * bj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    result = []
    for c in out:
        if c.denominator != 1:
            raise ArithmeticError("inexact polynomial division")
        result.append(int(c))
    return _norm(result)


def poly_eval(p: Iterable, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def _t_coefficient_rows(poly: BivarPoly) -> list[list[int]]:
    """Coefficients of P as a polynomial in t, each a polynomial in z."""
    deg_t = max(j for _, j in poly)
    rows: list[list[int]] = [[] for _ in range(deg_t + 1)]
    for (i, j), c in poly.items():
        row = rows[j]
        while len(row) <= i:
            row.append(0)
        row[i] += c
    return [_norm(r) for r in rows]


def _bareiss_det(matrix: list[list[list[int]]]) -> list[int]:
    """Fraction-free determinant of a matrix of integer polynomials."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev: list[int] = [1]
    for k in range(n - 1):
        if not m[k][k]:
            pivot_row = next((r for r in range(k + 1, n) if m[r][k]), None)
            if pivot_row is None:
                return []
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                num = _psub(_pmul(m[k][k], m[r][c]), _pmul(m[r][k], m[k][c]))
                m[r][c] = _pdiv_exact(num, prev)
            m[r][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return [sign * c for c in det]


def resultant_wrt_t(poly: BivarPoly) -> list[int]:
    """Sylvester resultant of P and its t-derivative, a polynomial in z."""
    rows = _t_coefficient_rows(poly)
    n = len(rows) - 1
    if n < 2:
        raise ValueError("degree in t must be at least 2")
    if all(not r for r in rows):
        raise ValueError("zero polynomial")
    deriv = [_pmul([j], rows[j]) for j in range(1, n + 1)]
    m = n - 1  # degree of the derivative
    size = n + m
    sylvester: list[list[list[int]]] = []
    desc_p = rows[::-1]  # leading coefficient first
    desc_q = deriv[::-1]
    for shift in range(m):
        sylvester.append([[]] * shift + desc_p + [[]] * (size - n - 1 - shift))
    for shift in range(n):
        sylvester.append([[]] * shift + desc_q + [[]] * (size - m - 1 - shift))
    return _bareiss_det(sylvester)


def discriminant_wrt_t(poly: BivarPoly) -> list[int]:
    """Discriminant of P with respect to t, as an integer polynomial in z.

    Classical normalization: (-1)^(n(n-1)/2) Res(P, dP/dt) / lc.  When the
    leading t-coefficient vanishes at z = 0 the degree drop forces a spurious
    power-of-z factor into the result; it carries no information about roots
    in (0, 1] and is stripped.  A leading coefficient that survives at z = 0
    leaves genuine roots at zero untouched.
    """
    res = resultant_wrt_t(poly)
    rows = _t_coefficient_rows(poly)
    n = len(rows) - 1
    disc = _pdiv_exact(res, rows[n])
    if (n * (n - 1) // 2) % 2:
        disc = [-c for c in disc]
    if rows[n][0] == 0:  # leading t-coefficient has no constant term
        while disc and disc[0] == 0:
            disc.pop(0)
    return disc


def proportionality_scalar(p: list[int], q: list[int]) -> Fraction | None:
    """The constant c with p = c * q, or None when no such scalar exists."""
    p, q = _norm(list(p)), _norm(list(q))
    if not p or not q or len(p) != len(q):
        return None
    anchor = next(i for i, c in enumerate(q) if c)
    if not p[anchor]:
        return None
    scalar = Fraction(p[anchor], q[anchor])
    for a, b in zip(p, q):
        if Fraction(a) != scalar * b:
            return None
    return scalar


# --- Sturm-chain root isolation ----------------------------------------------


def _frac_norm(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    rem = a[:]
    lead = b[-1]
    width = len(b)
    while len(rem) >= width:
        q = rem[-1] / lead
        k = len(rem) - width
        for j in range(width - 1):
            rem[k + j] -= q * b[j]
        rem.pop()
        _frac_norm(rem)
    return rem


def _frac_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = a[:]
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        q = rem[k + len(b) - 1] / lead
        out[k] = q
        if q:
            for j in range(len(b)):
                rem[k + j] -= q * b[j]
    return _frac_norm(out)


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _frac_norm(a[:]), _frac_norm(b[:])
    while b:
        a, b = b, _frac_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _derivative(p: list[Fraction]) -> list[Fraction]:
    return [c * i for i, c in enumerate(p)][1:]


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [p[:], _frac_norm(_derivative(p))]
    while chain[-1]:
        chain.append([-c for c in _frac_rem(chain[-2], chain[-1])])
    chain.pop()
    return chain


def _variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class IsolatedRoot:
    """One real root, bracketed by exact rationals (a point when low == high)."""

    low: Fraction
    high: Fraction
    value: float
    simple: bool

    def to_json(self) -> dict:
        return {
            "low": str(self.low),
            "high": str(self.high),
            "approx": self.value,
            "simple": self.simple,
        }


class _Isolator:
    """Sturm isolation on the square-free part of an integer polynomial.

    Rational roots are deflated out lazily the moment an evaluation point
    hits one, so the Sturm counts never see a zero endpoint.
    """

    def __init__(self, q: list[int]):
        coeffs = [Fraction(c) for c in q]
        if not _frac_norm(coeffs[:]):
            raise ValueError("zero polynomial")
        f = _frac_norm(coeffs)
        self.original = f[:]
        g = _frac_gcd(f, _derivative(f))
        self.gcd = g
        self.squarefree = _frac_div(f, g) if len(g) > 1 else f
        self._chain: list[list[Fraction]] | None = None

    def eval(self, x: Fraction) -> Fraction:
        return poly_eval(self.squarefree, x)

    def deflate(self, root: Fraction) -> None:
        self.squarefree = _frac_div(self.squarefree, [-root, Fraction(1)])
        self._chain = None

    def chain(self) -> list[list[Fraction]]:
        if self._chain is None:
            self._chain = _sturm_chain(self.squarefree)
        return self._chain

    def count_open(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots of the (deflated) square-free part in (a, b);
        endpoints must not be roots."""
        chain = self.chain()
        return _variations(chain, a) - _variations(chain, b)

    def is_multiple_at(self, x: Fraction) -> bool:
        return len(self.gcd) > 1 and poly_eval(self.gcd, x) == 0

    def is_multiple_in(self, low: Fraction, high: Fraction) -> bool:
        if len(self.gcd) <= 1:
            return False
        ga, gb = poly_eval(self.gcd, low), poly_eval(self.gcd, high)
        if ga == 0 or gb == 0:
            return True
        return (ga > 0) != (gb > 0)


def isolate_positive_roots(
    q: list[int],
    interval: tuple[Fraction | float, Fraction | float] = (0, 1),
    eps: float = 1e-9,
) -> list[IsolatedRoot]:
    """Every real root of q in the half-open interval (lo, hi], bracketed to
    within ``eps``.

    Root counts come from Sturm chains evaluated at exact rationals, so the
    number of roots is certified.  ``simple`` reports multiplicity-freeness.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    iso = _Isolator(q)
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo >= hi:
        raise ValueError("empty interval")

    exact: list[Fraction] = []
    if iso.eval(lo) == 0:
        iso.deflate(lo)  # lo itself is excluded by the open end
    if iso.eval(hi) == 0:
        iso.deflate(hi)
        exact.append(hi)

    brackets: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = iso.count_open(a, b)
        if n == 0:
            continue
        if n == 1:
            brackets.append((a, b))
            continue
        mid = (a + b) / 2
        if iso.eval(mid) == 0:
            iso.deflate(mid)
            exact.append(mid)
        stack.append((a, mid))
        stack.append((mid, b))

    results: list[IsolatedRoot] = []
    for x in exact:
        results.append(
            IsolatedRoot(low=x, high=x, value=float(x), simple=not iso.is_multiple_at(x))
        )
    for a, b in brackets:
        a, b, point = _refine_bracket(iso, a, b, Fraction(eps))
        if point is not None:
            results.append(
                IsolatedRoot(
                    low=point,
                    high=point,
                    value=float(point),
                    simple=not iso.is_multiple_at(point),
                )
            )
        else:
            results.append(
                IsolatedRoot(
                    low=a,
                    high=b,
                    value=float((a + b) / 2),
                    simple=not iso.is_multiple_in(a, b),
                )
            )
    results.sort(key=lambda r: r.low)
    return results


def _refine_bracket(
    iso: _Isolator, a: Fraction, b: Fraction, eps: Fraction
) -> tuple[Fraction, Fraction, Fraction | None]:
    """Shrink a single-root bracket below eps by sign bisection."""
    fa = iso.eval(a)
    fb = iso.eval(b)
    # A single simple root between non-root endpoints forces a sign change.
    assert fa != 0 and fb != 0 and (fa > 0) != (fb > 0)
    while b - a > eps:
        mid = (a + b) / 2
        fm = iso.eval(mid)
        if fm == 0:
            return a, b, mid
        if (fa > 0) != (fm > 0):
            b = mid
        else:
            a, fa = mid, fm
    return a, b, None


# --- bound certification -------------------------------------------------------

BOUND_KINDS = ("gt_inv_sqrt5", "gt_quarter")


def certify_bound(q: list[int], bound_kind: str) -> bool:
    """Certify, in exact arithmetic, that the unique positive root of q in
    (0, 1] is strictly greater than the named constant.

    gt_quarter compares bracket endpoints against 1/4; gt_inv_sqrt5 compares
    squared rationals against 1/5, so the irrational bound itself never needs
    evaluating.  Raises when the root in (0, 1] is not unique.
    """
    if bound_kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound {bound_kind!r}; expected one of {BOUND_KINDS}")
    roots = isolate_positive_roots(q, (Fraction(0), Fraction(1)), eps=1e-6)
    if len(roots) != 1:
        raise ValueError(
            f"bound certification needs exactly one root in (0, 1], found {len(roots)}"
        )
    root = roots[0]

    def strictly_above(x: Fraction) -> bool:
        if bound_kind == "gt_quarter":
            return x > Fraction(1, 4)
        return x > 0 and 5 * x.numerator**2 > x.denominator**2

    def at_or_below(x: Fraction) -> bool:
        if bound_kind == "gt_quarter":
            return x <= Fraction(1, 4)
        return x <= 0 or 5 * x.numerator**2 <= x.denominator**2

    if root.low == root.high:
        return strictly_above(root.low)

    iso = _Isolator(q)
    a, b = root.low, root.high
    fa = iso.eval(a)
    for _ in range(100000):
        if strictly_above(a):
            return True
        if at_or_below(b):
            return False
        mid = (a + b) / 2
        fm = iso.eval(mid)
        if fm == 0:
            return strictly_above(mid)
        if (fa > 0) != (fm > 0):
            b = mid
        else:
            a, fa = mid, fm
    raise ArithmeticError("bound refinement did not converge")


# --- growth estimation ----------------------------------------------------------


def growth_rate_estimate(counts: list[int]) -> Fraction:
    """Tail estimate of the count growth: consecutive ratios averaged over the
    last quartile.  Zero entries in the tail widen the ratio stride to the
    largest gap between nonzero entries."""
    n = len(counts)
    if n < 50:
        raise ValueError("need a table of at least 50 counts")
    start = 3 * n // 4
    nonzero = [i for i in range(start, n) if counts[i] > 0]
    if len(nonzero) < 2:
        raise ValueError("tail of the table has no usable nonzero entries")
    stride = max(b - a for a, b in zip(nonzero, nonzero[1:]))
    ratios = [
        Fraction(counts[i], counts[i - stride])
        for i in nonzero
        if i - stride >= 0 and counts[i - stride] > 0
    ]
    if not ratios:
        raise ValueError("tail of the table has no usable nonzero entries")
    mean = sum(ratios) / len(ratios)
    if stride == 1:
        return mean
    return Fraction(math.exp(math.log(mean) / stride)).limit_denominator(10**12)


# --- text form -------------------------------------------------------------------


def poly_text(coefficients: list[int], variable: str = "z") -> str:
    """Sparse ascending-power rendering, e.g. '-4 - 19 z + 32 z^2'."""
    parts: list[str] = []
    for k, c in enumerate(coefficients):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = variable if k == 1 else f"{variable}^{k}"
            body = var if mag == 1 else f"{mag} {var}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts) if parts else "0"


def series_text(series: PowerSeries, variable: str = "z") -> str:
    return poly_text(list(series.coefficients), variable)
