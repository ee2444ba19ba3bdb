"""q-Pochhammer and q-binomial arithmetic plus the alternating-sum and
Euler-product identities used by the closed forms, all verified exactly.

Symbolic-in-q checks are done with Laurent polynomials in q (the alternating
sums clear to Laurent polynomials), so no sample-point arguments are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exact import Interval, Laurent, gaussian_binomial, laurent_pochhammer


def q_pochhammer(a, q):
    """(1/q)_a = prod_{i=1..a} (1 - q^-i) for exact rational q != 0."""
    q = Fraction(q)
    if a < 0:
        raise ValueError("index must be nonnegative")
    if q == 0:
        raise ValueError("q must be nonzero")
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(a):
        power /= q
        out *= 1 - power
    return out


def q_binomial(n, m, q):
    """Gaussian binomial coefficient evaluated at exact rational q."""
    if m < 0 or m > n:
        raise ValueError("need 0 <= m <= n")
    q = Fraction(q)
    if q == 1:
        from math import comb

        return Fraction(comb(n, m))
    num = Fraction(1)
    den = Fraction(1)
    for i in range(n - m + 1, n + 1):
        num *= q ** i - 1
    for i in range(1, m + 1):
        den *= q ** i - 1
    if den == 0:
        raise ZeroDivisionError("q-binomial at a root of unity")
    return num / den


def _odd_pochhammer(n_top, var="q"):
    """(1 - 1/q)(1 - 1/q^3) ... (1 - 1/q^n_top) over odd indices."""
    out = Laurent.const(var, Fraction(1))
    for i in range(1, n_top + 1, 2):
        out = out * Laurent(var, {0: 1, -i: -1})
    return out


def _alt_sum_term(n, r, var="q"):
    """(1/q)_n / ((1/q)_r (1/q)_{n-r}) as a Laurent polynomial in q.

    This is the Gaussian binomial at t = 1/q.
    """
    return gaussian_binomial(n, r, var).subs_recip()


def qsum_sides(kind, n):
    """Both sides of one alternating q-sum as Laurent polynomials in q.

    kind 'qs1': sum_r (-1)^(n-r) q^r * binom -> q^n * odd Pochhammer
    kind 'qs2': sum_r (-1)^r * binom        -> odd Pochhammer or 0 (n odd)
    kind 'qs3': sum_r (-1)^r q^-r * binom   -> odd Pochhammer
    """
    var = "q"
    total = Laurent(var)
    for r in range(n + 1):
        b = _alt_sum_term(n, r, var)
        if kind == "qs1":
            term = b.shift(r) * ((-1) ** (n - r))
        elif kind == "qs2":
            term = b * ((-1) ** r)
        elif kind == "qs3":
            term = b.shift(-r) * ((-1) ** r)
        else:
            raise ValueError(f"unknown q-sum kind {kind!r}")
        total = total + term
    if kind == "qs1":
        top = n - 1 if n % 2 == 0 else n
        rhs = _odd_pochhammer(top, var).shift(n)
    elif kind == "qs2":
        rhs = _odd_pochhammer(n - 1, var) if n % 2 == 0 else Laurent(var)
    else:
        top = n - 1 if n % 2 == 0 else n
        rhs = _odd_pochhammer(top, var)
    return total, rhs


def _euler_sides(u_deg, x_deg):
    """Euler identity as a bivariate truncation, x = 1/q.

    lhs coefficient of u^n: 1/((1-x)(1-x^2)...(1-x^n)) as an x-series.
    rhs: product over j >= 0 of 1/(1 - u x^j); factors with j > x_deg are
    congruent to 1 at this x-truncation, so the expansion is exact.
    """
    one = Fraction(1)

    def x_inv(poly):
        out = [Fraction(0)] * (x_deg + 1)
        out[0] = 1 / poly[0]
        for k in range(1, x_deg + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                if i < len(poly) and poly[i]:
                    s += poly[i] * out[k - i]
            out[k] = -out[0] * s
        return out

    def x_mul(a, b):
        out = [Fraction(0)] * (x_deg + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(min(x_deg - i, len(b) - 1) + 1):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return out

    lhs = []
    prod = [one] + [Fraction(0)] * x_deg
    for n in range(u_deg + 1):
        if n > 0:
            factor = [one] + [Fraction(0)] * x_deg
            if n <= x_deg:
                factor[n] = Fraction(-1)
            prod = x_mul(prod, factor)
        lhs.append(x_inv(prod))

    rhs = [[Fraction(0)] * (x_deg + 1) for _ in range(u_deg + 1)]
    rhs[0][0] = one
    for j in range(x_deg + 1):
        # multiply by 1/(1 - u x^j) = sum_k u^k x^(jk)
        new = [row[:] for row in rhs]
        for n in range(u_deg + 1):
            for k in range(1, n + 1):
                shift = j * k
                if shift > x_deg:
                    break
                src = rhs[n - k]
                row = new[n]
                for e in range(x_deg + 1 - shift):
                    if src[e]:
                        row[e + shift] += src[e]
        rhs = new
    return lhs, rhs


@dataclass
class QSumReport:
    kind: str
    n_max: int
    ok: bool
    failures: list = dc_field(default_factory=list)


def verify_qsum(kind, n_max):
    """Exact verification of one q-sum family for all n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    report = QSumReport(kind=kind, n_max=n_max, ok=True)
    if kind == "euler":
        x_deg = max(2 * n_max, 24)
        lhs, rhs = _euler_sides(n_max, x_deg)
        for n in range(n_max + 1):
            if lhs[n] != rhs[n]:
                report.ok = False
                report.failures.append((n, lhs[n], rhs[n]))
        return report
    for n in range(1, n_max + 1):
        lhs, rhs = qsum_sides(kind, n)
        if lhs != rhs:
            report.ok = False
            report.failures.append((n, repr(lhs), repr(rhs)))
    return report


def qs1_qs3_reindex_ok(n_max):
    """Termwise r -> n-r reindexing relating the two odd-Pochhammer sums."""
    for n in range(1, n_max + 1):
        for r in range(n + 1):
            qs3_term = _alt_sum_term(n, r).shift(-r) * ((-1) ** r)
            qs1_term = _alt_sum_term(n, n - r).shift(n - r) * ((-1) ** r)
            if qs3_term != qs1_term.shift(-n):
                return False
    return True


@dataclass
class PentagonalReport:
    q: Fraction
    lower: Fraction
    upper: Fraction
    product: Interval
    certified: bool


def pentagonal_bounds(q, precision=40):
    """Certified bracket of prod_{i>=1}(1 - q^-i) between the pentagonal
    truncation lower bound and 1 - 1/q.

    The tail of the partial product is bracketed by the Weierstrass product
    inequality 1 - sum x_i <= prod (1 - x_i) <= 1 (0 <= x_i < 1), which is
    exact rational arithmetic.
    """
    q = Fraction(q)
    if q * q < 2:
        raise ValueError("bounds require q >= sqrt(2)")
    if precision < 1:
        raise ValueError("need at least one product factor")
    lower = (1 - 1 / q - 1 / q ** 2 + 1 / q ** 5 + 1 / q ** 7
             - 1 / q ** 12 - 1 / q ** 15)
    upper = 1 - 1 / q
    partial = Fraction(1)
    for i in range(1, precision + 1):
        partial *= 1 - q ** -i
    tail_sum = q ** -precision / (q - 1)  # sum_{i>precision} q^-i
    tail = Interval(max(Fraction(0), 1 - tail_sum), Fraction(1))
    product = Interval.point(partial) * tail
    certified = lower < product.lo and product.hi < upper
    return PentagonalReport(q=q, lower=lower, upper=upper,
                            product=product, certified=certified)


def np0_lower_bound(q, precision=40):
    """Certified check of prod(1 - q^-i) >= 1 - 1/q - 1/q^2 for q >= 2."""
    q = Fraction(q)
    if q < 2:
        raise ValueError("inequality stated for q >= 2")
    report = pentagonal_bounds(q, precision)
    return report.product.lo >= 1 - 1 / q - 1 / q ** 2
