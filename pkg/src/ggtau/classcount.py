"""Class counts: the coset generating function, GL class numbers, totals for
the extended group, the explicit 28/23 bounds, and certified asymptotic
limits of coset class counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Interval, bracket_sqrt, series_inv, series_mul, series_pow
from .formulas import char_flags


@lru_cache(maxsize=None)
def coset_class_series(q, trunc):
    """Coefficients of prod_{i>=1} (1+t^i)^f / (1-q t^(2i)) up to t^trunc."""
    f = char_flags(q).f
    out = [Fraction(1)] + [Fraction(0)] * trunc
    for i in range(1, trunc + 1):
        plus = [Fraction(1)] + [Fraction(0)] * trunc
        plus[i] = Fraction(1)
        out = series_mul(out, series_pow(plus, f, trunc), trunc)
        if 2 * i <= trunc:
            minus = [Fraction(1)] + [Fraction(0)] * trunc
            minus[2 * i] = Fraction(-q)
            out = series_mul(out, series_inv(minus, trunc), trunc)
    return tuple(out)


def coset_class_count(n, q):
    """Number of extended-group classes in the twisted coset, equivalently
    the number of congruence orbits on invertible matrices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = coset_class_series(q, n)[n]
    assert value.denominator == 1 and value >= 0
    return int(value)


@lru_cache(maxsize=None)
def gl_class_series(q, trunc):
    """Coefficients of prod_{i>=1} (1-t^i)/(1-q t^i) up to t^trunc."""
    out = [Fraction(1)] + [Fraction(0)] * trunc
    for i in range(1, trunc + 1):
        num = [Fraction(1)] + [Fraction(0)] * trunc
        num[i] = Fraction(-1)
        den = [Fraction(1)] + [Fraction(0)] * trunc
        den[i] = Fraction(-q)
        out = series_mul(out, series_mul(num, series_inv(den, trunc), trunc), trunc)
    return tuple(out)


def gl_class_count(n, q):
    """k(GL(n, q)) from its generating function."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = gl_class_series(q, n)[n]
    assert value.denominator == 1 and value > 0
    return int(value)


def total_class_count(n, q):
    """Class number of the extension: k_gl/2 + 3 k_coset/2 (always integral,
    since the coset count equals the number of real GL classes)."""
    k_gl = gl_class_count(n, q)
    k_coset = coset_class_count(n, q)
    twice = k_gl + 3 * k_coset
    if twice % 2:
        raise AssertionError(
            f"parity failure: k_gl={k_gl}, k_coset={k_coset} at (n,q)=({n},{q})")
    return twice // 2


@dataclass
class BoundReport:
    n_max: int
    q_list: tuple
    ok: bool
    failures: list


def bound_report(n_max, q_list):
    """Check coset counts against 28 q^floor(n/2) (q even), 23 ... (q odd)."""
    failures = []
    for q in q_list:
        const = 28 if char_flags(q).p == 2 else 23
        series = coset_class_series(q, n_max)
        for n in range(1, n_max + 1):
            if series[n] > const * q ** (n // 2):
                failures.append((n, q, int(series[n])))
    return BoundReport(n_max=n_max, q_list=tuple(q_list), ok=not failures,
                       failures=failures)


def _bracket_products(q, parity_sign, f, terms=80):
    """Certified interval for prod_{i>=1} (1 + s^i)^f with s = parity_sign/sqrt(q),
    where parity_sign -1 means the alternating product (1 + (-1)^i q^(-i/2))."""
    s = bracket_sqrt(Fraction(1, q))
    s_iv = Interval(s.lo, s.hi)
    acc = Interval.point(Fraction(1))
    power = Interval.point(Fraction(1))
    for i in range(1, terms + 1):
        power = power * s_iv
        sign = 1 if parity_sign > 0 or i % 2 == 0 else -1
        acc = acc * (1 + sign * power)
    # tail: |prod_{i>terms} (1 +- s^i) - 1| <= 2 * sum_{i>terms} s^i for small tails
    tail_sum = s_iv.hi ** (terms + 1) / (1 - s_iv.hi)
    if tail_sum > Fraction(1, 2):
        raise ValueError("tail too heavy; increase terms")
    tail = Interval(1 - 2 * tail_sum, 1 + 2 * tail_sum)
    acc = acc * tail
    out = acc
    for _ in range(f - 1):
        out = out * acc
    return out


def _bracket_euler_product(q, terms=80):
    """Certified interval for prod_{i>=1} (1 - q^-i)."""
    partial = Fraction(1)
    for i in range(1, terms + 1):
        partial *= 1 - Fraction(1, q ** i)
    tail_sum = Fraction(1, q ** terms * (q - 1))
    return Interval.point(partial) * Interval(1 - tail_sum, 1)


def asy_limit(q, parity):
    """Certified interval for the limit of coset counts over q^floor(n/2).

    parity 'even-n': lim k(coset, 2n)/q^n
           'odd-n' : lim k(coset, 2n+1)/q^n
    """
    f = char_flags(q).f
    plus = _bracket_products(q, +1, f)
    alt = _bracket_products(q, -1, f)
    euler = _bracket_euler_product(q)
    if parity == "even-n":
        return (plus + alt) / euler * Fraction(1, 2)
    if parity == "odd-n":
        root_q = bracket_sqrt(Fraction(q))
        return (plus - alt) / euler * Interval(root_q.lo, root_q.hi) * Fraction(1, 2)
    raise ValueError(f"unknown parity {parity!r}")


@dataclass
class AsyReport:
    q: int
    parity: str
    n_used: int
    ratio: Fraction
    interval: Interval
    within_one_percent: bool


def asy_report(q, parity, n_used=None):
    """Compare the generating-function ratio at large n with the certified limit."""
    if parity == "even-n":
        n_used = n_used if n_used is not None else 60
        if n_used % 2:
            raise ValueError("even-n parity needs even n_used")
        half = n_used // 2
    else:
        n_used = n_used if n_used is not None else 61
        if n_used % 2 == 0:
            raise ValueError("odd-n parity needs odd n_used")
        half = (n_used - 1) // 2
    count = coset_class_count(n_used, q)
    ratio = Fraction(count, q ** half)
    interval = asy_limit(q, parity)
    mid = interval.mid()
    ok = abs(ratio - mid) <= mid / 100
    return AsyReport(q=q, parity=parity, n_used=n_used, ratio=ratio,
                     interval=interval, within_one_percent=ok)


@dataclass
class ClassCountReport:
    n: int
    q: int
    f: int
    k_coset: int
    k_gl: int
    k_total: int
    bound: int
    bound_ok: bool

    def as_record(self):
        return {
            "n": self.n, "q": self.q, "f": self.f,
            "coset_classes": self.k_coset, "gl_classes": self.k_gl,
            "total_classes": self.k_total, "bound": self.bound,
            "bound_ok": self.bound_ok,
        }


def class_count_report(n, q):
    flags = char_flags(q)
    k_coset = coset_class_count(n, q)
    const = 28 if flags.p == 2 else 23
    bound = const * q ** (n // 2)
    return ClassCountReport(
        n=n, q=q, f=flags.f, k_coset=k_coset, k_gl=gl_class_count(n, q),
        k_total=total_class_count(n, q), bound=bound, bound_ok=k_coset <= bound,
    )
