"""Exact scalars: Laurent polynomials, rational intervals, truncated series helpers.

Everything here is exact. Rational numbers are fractions.Fraction; Laurent
polynomials carry Fraction coefficients by default but accept any coefficient
ring with +, -, * and truthiness (nesting Laurent in Laurent gives the small
multivariate towers needed elsewhere).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt

ZERO = Fraction(0)
ONE = Fraction(1)


def _coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Laurent:
    """Laurent polynomial in one named indeterminate."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs=None):
        self.var = var
        cc = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _coeff(c)
                if c:
                    cc[e] = c
        self.coeffs = cc

    @classmethod
    def const(cls, var, c):
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, var, exp, c=1):
        return cls(var, {exp: c})

    @classmethod
    def gen(cls, var):
        return cls(var, {1: 1})

    def is_constant(self):
        return all(e == 0 for e in self.coeffs)

    def constant_term(self):
        return self.coeffs.get(0, ZERO)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if not self.coeffs:
                return other == 0
            return self.is_constant() and self.coeffs.get(0) == other
        if isinstance(other, Laurent):
            if self.var != other.var:
                # distinct variables only compare equal as constants
                return self.is_constant() and other.is_constant() \
                    and self.constant_term() == other.constant_term()
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if not self.coeffs:
            return hash(ZERO)
        if self.is_constant():
            return hash(self.coeffs[0])
        return hash((self.var, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(self.var, other)
        if not isinstance(other, Laurent):
            return NotImplemented
        if other.var != self.var:
            if other.is_constant():
                other = Laurent.const(self.var, other.constant_term())
            elif self.is_constant():
                return other + self.constant_term()
            else:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        cc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = cc.get(e, ZERO) + c
            if s:
                cc[e] = s
            elif e in cc:
                del cc[e]
        out = Laurent(self.var)
        out.coeffs = cc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Laurent(self.var)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-other if isinstance(other, Laurent) else -_coeff(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coeff(other)
            if not other:
                return Laurent(self.var)
            out = Laurent(self.var)
            out.coeffs = {e: c * other for e, c in self.coeffs.items()}
            return out
        if not isinstance(other, Laurent):
            return NotImplemented
        if other.var != self.var:
            if other.is_constant():
                return self * other.constant_term()
            if self.is_constant():
                return other * self.constant_term()
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        cc = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = cc.get(e, ZERO) + c1 * c2
                if s:
                    cc[e] = s
                elif e in cc:
                    del cc[e]
        out = Laurent(self.var)
        out.coeffs = cc
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.coeffs) == 1:
                (e, c), = self.coeffs.items()
                if isinstance(c, Fraction):
                    return Laurent(self.var, {e * k: c ** k})
            raise ValueError("negative powers only for monomials")
        result = Laurent.const(self.var, ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k):
        """Multiply by var**k."""
        out = Laurent(self.var)
        out.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return out

    def subs_recip(self, new_var=None):
        """Substitute var -> 1/var, optionally renaming the variable."""
        out = Laurent(new_var or self.var)
        out.coeffs = {-e: c for e, c in self.coeffs.items()}
        return out

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def exact_div(self, other):
        """Exact division by another Laurent with Fraction coefficients."""
        if isinstance(other, (int, Fraction)):
            return self * (ONE / _coeff(other))
        if other.var != self.var and not other.is_constant():
            raise ValueError("variable mismatch in division")
        if not other:
            raise ZeroDivisionError("Laurent division by zero")
        if not self:
            return Laurent(self.var)
        # shift to ordinary polynomials and long-divide
        sa, sb = self.min_exp(), other.min_exp()
        a = {e - sa: c for e, c in self.coeffs.items()}
        b = {e - sb: c for e, c in other.coeffs.items()}
        db = max(b)
        lead = b[db]
        quot = {}
        while a:
            da = max(a)
            if da < db:
                raise ValueError("inexact Laurent division")
            c = a[da] / lead
            qe = da - db
            quot[qe] = c
            for e, bc in b.items():
                e2 = e + qe
                s = a.get(e2, ZERO) - c * bc
                if s:
                    a[e2] = s
                elif e2 in a:
                    del a[e2]
        out = Laurent(self.var)
        out.coeffs = {e + sa - sb: c for e, c in quot.items()}
        return out

    def evaluate(self, value):
        """Evaluate at an exact value (Fraction-compatible)."""
        value = _coeff(value)
        total = ZERO
        for e, c in self.coeffs.items():
            total += c * value ** e
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"({c})*{self.var}")
            else:
                bits.append(f"({c})*{self.var}^{e}")
        return " + ".join(bits)


def laurent_pochhammer(a, var="q"):
    """prod_{i=1..a} (1 - var^-i) as a Laurent polynomial."""
    out = Laurent.const(var, ONE)
    for i in range(1, a + 1):
        out = out * Laurent(var, {0: ONE, -i: -ONE})
    return out


def gaussian_binomial(n, m, var="t"):
    """Gaussian binomial coefficient as a polynomial in var.

    Pascal recursion: C(n,m) = C(n-1,m-1) + var^m * C(n-1,m).
    """
    if m < 0 or m > n:
        return Laurent(var)
    row = [Laurent.const(var, ONE)]
    for i in range(1, n + 1):
        new = [Laurent.const(var, ONE)]
        for j in range(1, i):
            new.append(row[j - 1] + Laurent.monomial(var, j) * row[j])
        new.append(Laurent.const(var, ONE))
        row = new
    return row[m]


class Interval:
    """Closed rational interval used to certify values of infinite products."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        return cls(x, x)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval.point(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval.point(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval.point(other)
        prods = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Interval.point(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval division through zero")
        recips = (1 / other.lo, 1 / other.hi)
        return self * Interval(min(recips), max(recips))

    def contains(self, x):
        return self.lo <= x <= self.hi

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def bracket_sqrt(x, bits=64):
    """Certified rational bracket of sqrt(x) for rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Interval.point(0)
    scale = 1 << bits
    n = x.numerator * x.denominator
    s = isqrt(n * scale * scale)
    lo = Fraction(s, x.denominator * scale)
    hi = Fraction(s + 1, x.denominator * scale)
    return Interval(lo, hi)


def bracket_e(terms=25):
    """Certified bracket of Euler's number via the factorial series."""
    partial = sum(Fraction(1, factorial(k)) for k in range(terms + 1))
    tail_hi = Fraction(2, factorial(terms + 1))
    return Interval(partial, partial + tail_hi)


def _bracket_ln_small(x, terms):
    # atanh series for x in (1, 4); z = (x-1)/(x+1) < 3/5
    z = (x - 1) / (x + 1)
    z2 = z * z
    total = ZERO
    power = z
    for j in range(terms):
        total += power / (2 * j + 1)
        power *= z2
    # tail: sum_{j>=terms} z^(2j+1)/(2j+1) <= z^(2*terms+1) / ((2*terms+1)(1-z^2))
    tail_hi = power / ((2 * terms + 1) * (1 - z2))
    return Interval(2 * total, 2 * (total + tail_hi))


_LN2 = None


def bracket_ln(x, terms=40):
    """Certified rational bracket of ln(x) for rational x > 0."""
    global _LN2
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of nonpositive rational")
    if x == 1:
        return Interval.point(0)
    if x < 1:
        return -bracket_ln(1 / x, terms)
    if _LN2 is None:
        _LN2 = _bracket_ln_small(Fraction(2), 60)
    k = 0
    while x >= 2:
        x /= 2
        k += 1
    base = _bracket_ln_small(x, terms) if x != 1 else Interval.point(0)
    return base + _LN2 * k


def bracket_log_base(n, q, terms=40):
    """Certified bracket of log_q(n)."""
    return bracket_ln(n, terms) / bracket_ln(q, terms)


# ---------------------------------------------------------------------------
# truncated power series on coefficient lists (index = exponent)

def series_trim(a, trunc):
    return list(a[: trunc + 1]) + [ZERO] * max(0, trunc + 1 - len(a))


def series_add(a, b, trunc):
    a = series_trim(a, trunc)
    b = series_trim(b, trunc)
    return [x + y for x, y in zip(a, b)]


def series_mul(a, b, trunc):
    out = [ZERO] * (trunc + 1)
    for i, x in enumerate(a[: trunc + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: trunc + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def series_inv(a, trunc):
    """Multiplicative inverse of a series with unit constant term."""
    a = series_trim(a, trunc)
    c0 = a[0]
    if not c0:
        raise ZeroDivisionError("series has no inverse (zero constant term)")
    inv0 = ONE / c0 if isinstance(c0, Fraction) else Fraction(1, c0)
    out = [ZERO] * (trunc + 1)
    out[0] = inv0
    for n in range(1, trunc + 1):
        s = ZERO
        for k in range(1, n + 1):
            if a[k]:
                s += a[k] * out[n - k]
        out[n] = -inv0 * s
    return out

def series_pow(a, k, trunc):
    out = [ONE] + [ZERO] * trunc
    base = series_trim(a, trunc)
    while k:
        if k & 1:
            out = series_mul(out, base, trunc)
        base = series_mul(base, base, trunc)
        k >>= 1
    return out


def series_exp(a, trunc):
    """exp of a series with zero constant term (Fraction coefficients)."""
    a = series_trim(a, trunc)
    if a[0]:
        raise ValueError("series_exp needs zero constant term")
    out = [ZERO] * (trunc + 1)
    out[0] = ONE
    for n in range(1, trunc + 1):
        s = ZERO
        for k in range(1, n + 1):
            if a[k]:
                s += k * a[k] * out[n - k]
        out[n] = s / n
    return out
