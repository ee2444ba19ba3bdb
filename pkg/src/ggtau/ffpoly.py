"""Small finite fields F_q (q <= 16), monic polynomials, factorization, and
the inverse-roots conjugation on polynomials with nonzero constant term.

Field elements are integers 0..q-1 encoding coordinates base p in the
polynomial basis over a fixed irreducible modulus, so serialized elements are
stable across runs. All arithmetic is table driven.
"""

from __future__ import annotations

from functools import lru_cache

FIELD_CAP = 16

# fixed modulus per (p, k), ascending coefficients, leading 1 omitted is NOT:
# full coefficient tuple including the leading 1.
_MODULI = {
    (2, 2): (1, 1, 1),          # z^2 + z + 1
    (2, 3): (1, 1, 0, 1),       # z^3 + z + 1
    (2, 4): (1, 1, 0, 0, 1),    # z^4 + z + 1
    (3, 2): (2, 2, 1),          # z^2 + 2z + 2
}


def _prime_power(q):
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1:
                return p, k
            return None
    return None


class Field:
    """F_q with precomputed addition/multiplication/inverse tables."""

    def __init__(self, q, cap=FIELD_CAP):
        if q < 2 or q > cap:
            raise ValueError(f"field size {q} outside supported range 2..{cap}")
        pk = _prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k == 1:
            self.modulus = None
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            self.modulus = _MODULI[(self.p, self.k)]
            add = [[self._ext_add(a, b) for b in range(q)] for a in range(q)]
            mul = [[self._ext_mul(a, b) for b in range(q)] for a in range(q)]
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        self.inv_table = inv

    def _digits(self, a):
        p, k = self.p, self.k
        out = []
        for _ in range(k):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, ds):
        out = 0
        for d in reversed(ds):
            out = out * self.p + d
        return out

    def _ext_add(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _ext_mul(self, a, b):
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return self._undigits(prod[:k])

    # element operations
    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a][self.inv(b)]

    def pow(self, a, e):
        out = 1
        while e:
            if e & 1:
                out = self.mul_table[out][a]
            a = self.mul_table[a][a]
            e >>= 1
        return out

    def primitive_element(self):
        for g in range(2, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul_table[x][g]
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        return 1  # q == 2

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(("Field", self.q))


@lru_cache(maxsize=None)
def field(q):
    return Field(q)


# ---------------------------------------------------------------------------
# raw polynomial helpers on ascending coefficient tuples

def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F.add(x, y))
    return _ptrim(out)


def _pscale(F, a, c):
    return _ptrim([F.mul(x, c) for x in a])


def _pmul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    mul = F.mul_table
    add = F.add_table
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return _ptrim(out)


def _pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quot = [0] * max(0, len(a) - db)
    while len(_ptrim(a)) - 1 >= db and _ptrim(a):
        a = list(_ptrim(a))
        da = len(a) - 1
        if da < db:
            break
        c = F.mul(a[-1], lead_inv)
        quot[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = F.sub(a[da - db + j], F.mul(c, b[j]))
    return _ptrim(quot), _ptrim(a)


def _pgcd(F, a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(F, a, b)[1]
    if a:
        a = _pscale(F, a, F.inv(a[-1]))  # monic normalization
    return a


def _ppowmod(F, a, e, m):
    out = (1,)
    a = _pdivmod(F, a, m)[1]
    while e:
        if e & 1:
            out = _pdivmod(F, _pmul(F, out, a), m)[1]
        a = _pdivmod(F, _pmul(F, a, a), m)[1]
        e >>= 1
    return out


class MonicPoly:
    """Monic polynomial over a small finite field, ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs or coeffs[-1] != 1:
            raise ValueError(f"not monic: {coeffs}")
        if any(c < 0 or c >= fld.q for c in coeffs):
            raise ValueError("coefficient out of field range")
        self.field = fld
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def constant_term(self):
        return self.coeffs[0] if self.degree >= 1 else 1

    def __call__(self, x):
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __mul__(self, other):
        return MonicPoly(self.field, _pmul(self.field, self.coeffs, other.coeffs))

    def __pow__(self, k):
        out = (1,)
        for _ in range(k):
            out = _pmul(self.field, out, self.coeffs)
        return MonicPoly(self.field, out)

    def divides(self, other):
        return not _pdivmod(self.field, other.coeffs, self.coeffs)[1]

    def __eq__(self, other):
        return (isinstance(other, MonicPoly) and other.field.q == self.field.q
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __lt__(self, other):
        # canonical order: degree, then ascending-coefficient lex
        return (self.degree, self.coeffs) < (other.degree, other.coeffs)

    def __repr__(self):
        return format_poly(self)

    def is_irreducible(self):
        return is_irreducible(self)


def poly_z(fld):
    return MonicPoly(fld, (0, 1))


def poly_z_minus_one(fld):
    return MonicPoly(fld, (fld.neg(1), 1)) if fld.q > 2 else MonicPoly(fld, (1, 1))


def poly_z_plus_one(fld):
    return MonicPoly(fld, (1, 1))


def format_poly(f):
    return f"GF({f.field.q}):" + ",".join(str(c) for c in f.coeffs)


def parse_poly(text):
    head, _, body = text.partition(":")
    if not head.startswith("GF(") or not head.endswith(")"):
        raise ValueError(f"bad polynomial literal {text!r}")
    q = int(head[3:-1])
    coeffs = tuple(int(c) for c in body.split(","))
    return MonicPoly(field(q), coeffs)


def is_irreducible(f):
    """Rabin irreducibility test."""
    F = f.field
    d = f.degree
    if d == 0:
        return False
    if d == 1:
        return True
    if f.coeffs[0] == 0:
        return False  # divisible by z
    z = (0, 1)
    # x^(q^d) == x mod f
    power = z
    for _ in range(d):
        power = _ppowmod(F, power, F.q, f.coeffs)
    if _ptrim(_padd(F, power, _pscale(F, z, F.neg(1)))) != ():
        return False
    # no root of x^(q^(d/r)) - x shared, for prime divisors r of d
    r = 2
    dd = d
    primes = set()
    while r * r <= dd:
        while dd % r == 0:
            primes.add(r)
            dd //= r
        r += 1
    if dd > 1:
        primes.add(dd)
    for r in primes:
        power = z
        for _ in range(d // r):
            power = _ppowmod(F, power, F.q, f.coeffs)
        g = _pgcd(F, _padd(F, power, _pscale(F, z, F.neg(1))), f.coeffs)
        if len(g) - 1 > 0:
            return False
    return True


def _all_monic(fld, d):
    q = fld.q
    for idx in range(q ** d):
        coeffs = []
        m = idx
        for _ in range(d):
            coeffs.append(m % q)
            m //= q
        coeffs.append(1)
        yield MonicPoly(fld, coeffs)


@lru_cache(maxsize=None)
def irreducibles_of_degree(q, d):
    """Monic irreducibles of degree d over F_q with nonzero constant term,
    in canonical (coefficient-lex) order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    fld = field(q)
    out = []
    for f in _all_monic(fld, d):
        if f.coeffs[0] != 0 and is_irreducible(f):
            out.append(f)
    return tuple(out)


def count_irreducibles(q, d):
    """N(q; d): number of monic degree-d irreducibles with nonzero constant term."""
    return len(irreducibles_of_degree(q, d))


def irreducible_count_identity_ok(q, max_deg=10):
    """Check prod_d (1-u^d)^(-N(q;d)) = (1-u)/(1-uq) up to u^max_deg."""
    from fractions import Fraction

    from .exact import series_inv, series_mul, series_pow

    T = max_deg
    lhs = [Fraction(1)] + [Fraction(0)] * T
    for d in range(1, T + 1):
        n = count_irreducibles(q, d)
        base = [Fraction(1)] + [Fraction(0)] * T
        base[d] = Fraction(-1)
        lhs = series_mul(lhs, series_inv(series_pow(base, n, T), T), T)
    one_minus_u = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (T - 1)
    one_minus_uq = [Fraction(1), Fraction(-q)] + [Fraction(0)] * (T - 1)
    rhs = series_mul(one_minus_u, series_inv(one_minus_uq, T), T)
    return lhs == rhs


def factor_monic(f, method="ddf"):
    """Factor a monic polynomial of degree >= 1 into irreducibles.

    Returns {MonicPoly: multiplicity}. method='trial' uses exhaustive
    trial division by enumerated irreducibles, as an independent route.
    """
    if f.degree < 1:
        raise ValueError("can only factor polynomials of degree >= 1")
    if method == "trial":
        return _factor_trial(f)
    return _factor_ddf(f)


def _factor_trial(f):
    F = f.field
    out = {}
    rem = f.coeffs
    d = 1
    while len(rem) - 1 >= 1:
        if len(rem) - 1 < 2 * d:
            g = MonicPoly(F, rem)
            out[g] = out.get(g, 0) + 1
            break
        for cand in _all_monic(F, d):
            if not is_irreducible(cand):
                continue
            while True:
                q_, r_ = _pdivmod(F, rem, cand.coeffs)
                if r_ or len(rem) - 1 < d:
                    break
                rem = q_
                out[cand] = out.get(cand, 0) + 1
        d += 1
    return out


def _squarefree_decomposition(f):
    """f = prod g_i^i with the g_i squarefree and pairwise coprime.

    Returns {MonicPoly: multiplicity} over squarefree parts; handles the
    inseparable case (zero derivative) by taking p-th roots.
    """
    F = f.field
    q, p = F.q, F.p

    def deriv(c):
        return _ptrim([F.mul(c[i], i % p) for i in range(1, len(c))])

    def pth_root(c):
        # polynomial in z^p; x -> x^(q/p) inverts Frobenius on coefficients
        return _ptrim([F.pow(c[i], q // p) for i in range(0, len(c), p)])

    out = {}

    def record(c, mult):
        if len(c) - 1 >= 1:
            key = MonicPoly(F, c)
            out[key] = out.get(key, 0) + mult

    def rec(c, mult):
        c = _ptrim(c)
        if len(c) - 1 < 1:
            return
        d = deriv(c)
        if not d:
            rec(pth_root(c), mult * p)
            return
        cpart = _pgcd(F, c, d)
        w = _pdivmod(F, c, cpart)[0]
        i = 1
        while len(w) - 1 >= 1:
            y = _pgcd(F, w, cpart)
            record(_pdivmod(F, w, y)[0], mult * i)
            w = y
            cpart = _pdivmod(F, cpart, y)[0]
            i += 1
        rec(cpart, mult)

    rec(f.coeffs, 1)
    return out


def _factor_ddf(f):
    """Distinct-degree then equal-degree splitting."""
    import random as _random

    F = f.field
    out = {}
    for sqpart, mult in _squarefree_decomposition(f).items():
        # distinct degree
        rem = sqpart.coeffs
        d = 1
        power = (0, 1)
        while len(rem) - 1 >= 1:
            if len(rem) - 1 < 2 * d:
                g = MonicPoly(F, rem)
                out[g] = out.get(g, 0) + mult
                break
            power = _ppowmod(F, power, F.q, rem)
            gc = _pgcd(F, _padd(F, power, _pscale(F, (0, 1), F.neg(1))), rem)
            if len(gc) - 1 > 0:
                for piece in _equal_degree_split(F, gc, d, _random.Random(0xC0FFEE)):
                    out[piece] = out.get(piece, 0) + mult
                rem = _pdivmod(F, rem, gc)[0]
            d += 1
    return out


def _equal_degree_split(F, c, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    c = _ptrim(c)
    deg = len(c) - 1
    if deg == d:
        return [MonicPoly(F, c)]
    q = F.q
    while True:
        r = tuple(rng.randrange(q) for _ in range(deg)) + (1,)
        if F.p == 2:
            # trace map sum_{i<k*d} r^(2^i)
            acc = _pdivmod(F, r, c)[1]
            cur = acc
            for _ in range(d * F.k - 1):
                cur = _pdivmod(F, _pmul(F, cur, cur), c)[1]
                acc = _padd(F, acc, cur)
            g = _pgcd(F, acc, c)
        else:
            e = (q ** d - 1) // 2
            pw = _ppowmod(F, r, e, c)
            g = _pgcd(F, _padd(F, pw, _pscale(F, (1,), F.neg(1))), c)
        dg = len(g) - 1
        if 0 < dg < deg:
            left = _equal_degree_split(F, g, d, rng)
            right = _equal_degree_split(F, _pdivmod(F, c, g)[0], d, rng)
            return left + right


def conjugate_poly(f):
    """phi -> reversed coefficients scaled monic; roots map to inverses."""
    if f.constant_term() == 0:
        raise ValueError("conjugation needs nonzero constant term")
    F = f.field
    rev = tuple(reversed(f.coeffs))
    c0inv = F.inv(rev[-1])
    return MonicPoly(F, _pscale(F, rev, c0inv))


def is_self_conjugate(f):
    return conjugate_poly(f) == f
