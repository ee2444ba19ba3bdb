"""Exact symmetric-function engine in m variables.

Hall-Littlewood polynomials P_lambda(x; t) are computed two independent ways:
literal symmetrization over S_m (the definition) and the one-variable-at-a-time
branching rule over horizontal strips; their agreement is a test, and the
branching route is the fast default. Coefficients are Laurent polynomials in t
with exact rational entries (genuinely negative t-powers occur).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .exact import Laurent, gaussian_binomial
from .partition import (Partition, c_poly, enumerate_partitions,
                        horizontal_strip_subs, partitions_up_to,
                        vertical_strip_covers)

SYMMETRIZE_CAP = 6

_T_ONE = Laurent.const("t", Fraction(1))


def t_const(c):
    return Laurent.const("t", Fraction(c))


def t_monomial(e, c=1):
    return Laurent.monomial("t", e, Fraction(c))


class XPoly:
    """Multivariate polynomial in x_1..x_m, coefficients in a Laurent ring.

    Stored as {exponent tuple: coefficient}; optionally truncated by total
    degree during multiplication.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        tt = {}
        if terms:
            for e, c in terms.items():
                if c:
                    tt[e] = c
        self.terms = tt

    @classmethod
    def constant(cls, m, c):
        c = _as_ring(c)
        return cls(m, {(0,) * m: c})

    @classmethod
    def monomial(cls, m, exps, c):
        return cls(m, {tuple(exps): _as_ring(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __add__(self, other):
        tt = dict(self.terms)
        for e, c in other.terms.items():
            s = tt.get(e)
            s = c if s is None else s + c
            if s:
                tt[e] = s
            elif e in tt:
                del tt[e]
        out = XPoly(self.m)
        out.terms = tt
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _as_ring(c)
        if not c:
            return XPoly(self.m)
        out = XPoly(self.m)
        out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def mul(self, other, maxdeg=None):
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if maxdeg is not None and d1 + sum(e2) > maxdeg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                s = out.get(e)
                s = prod if s is None else s + prod
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = XPoly(self.m)
        res.terms = out
        return res

    def truncate(self, maxdeg):
        out = XPoly(self.m)
        out.terms = {e: c for e, c in self.terms.items() if sum(e) <= maxdeg}
        return out

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Laurent("t"))

    def subs_t(self, value):
        """Evaluate every coefficient at an exact t value (needs no negative
        powers when value == 0)."""
        value = Fraction(value)
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Laurent):
                if value == 0:
                    v = c.coeffs.get(0, Fraction(0))
                    if any(k < 0 for k in c.coeffs):
                        raise ValueError("negative t-power at t=0")
                else:
                    v = c.evaluate(value)
            else:
                v = c
            if v:
                out[e] = v
        res = XPoly(self.m)
        res.terms = out
        return res

    def is_symmetric(self):
        for e, c in self.terms.items():
            key = tuple(sorted(e, reverse=True))
            if not _coeff_eq(self.terms.get(key), c):
                return False
        return True

    def support_partitions(self):
        """Distinct sorted exponent vectors (as partitions) in the support."""
        seen = set()
        for e in self.terms:
            seen.add(tuple(sorted((x for x in e if x), reverse=True)))
        return seen

    def divide_linear(self, i, j):
        """Exact division by (x_i - x_j), 0-indexed variables."""
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=lambda ee: (ee[i], ee))
            c = rem[e]
            if e[i] == 0:
                raise ValueError("not divisible by the Vandermonde factor")
            qe = list(e)
            qe[i] -= 1
            qe = tuple(qe)
            prev = quot.get(qe)
            quot[qe] = c if prev is None else prev + c
            del rem[e]
            se = list(qe)
            se[j] += 1
            se = tuple(se)
            s = rem.get(se)
            s = c if s is None else s + c
            if s:
                rem[se] = s
            elif se in rem:
                del rem[se]
        out = XPoly(self.m)
        out.terms = {e: c for e, c in quot.items() if c}
        return out

    def scale_coeff_div(self, denom):
        """Exact coefficientwise division by a Laurent in t."""
        out = XPoly(self.m)
        out.terms = {e: c.exact_div(denom) for e, c in self.terms.items()}
        return out


def _as_ring(c):
    if isinstance(c, (int, Fraction)):
        return t_const(c)
    return c


def _coeff_eq(a, b):
    if a is None:
        return not b
    return a == b


def v_poly(lam, m):
    """Normalizing factor: prod over part multiplicities (zero parts count,
    there are m - l(lambda) of them) of (1-t)(1-t^2)...(1-t^mult)/(1-t)^mult."""
    mults = list(lam.mults().values())
    mults.append(m - lam.length)
    one_minus_t = Laurent("t", {0: 1, 1: -1})
    num = t_const(1)
    denom_power = 0
    for mult in mults:
        for j in range(1, mult + 1):
            num = num * Laurent("t", {0: 1, j: -1})
            denom_power += 1
    for _ in range(denom_power):
        num = num.exact_div(one_minus_t)
    return num


def hl_symmetrized(lam, m):
    """Hall-Littlewood polynomial by literal symmetrization over S_m."""
    if m < 1:
        raise ValueError("need at least one variable")
    if m > SYMMETRIZE_CAP:
        raise ValueError(f"symmetrization cap is {SYMMETRIZE_CAP} variables")
    if lam.length > m:
        return XPoly(m)
    # kernel x^lambda * prod_{i<j} (x_i - t x_j)
    base = XPoly.monomial(m, tuple(lam.part(i) for i in range(1, m + 1)), 1)
    for i in range(m):
        for j in range(i + 1, m):
            ei = [0] * m
            ei[i] = 1
            ej = [0] * m
            ej[j] = 1
            factor = XPoly(m, {tuple(ei): t_const(1),
                               tuple(ej): t_monomial(1, -1)})
            base = base.mul(factor)
    total = XPoly(m)
    for w in permutations(range(m)):
        sign = _perm_sign(w)
        terms = {}
        for e, c in base.terms.items():
            pe = tuple(e[w[i]] for i in range(m))
            prev = terms.get(pe)
            cc = c if sign > 0 else c * (-1)
            terms[pe] = cc if prev is None else prev + cc
        total = total + XPoly(m, terms)
    # divide by the Vandermonde, then by v_lambda
    for i in range(m):
        for j in range(i + 1, m):
            total = total.divide_linear(i, j)
    return total.scale_coeff_div(v_poly(lam, m))


def _perm_sign(w):
    sign = 1
    seen = [False] * len(w)
    for i in range(len(w)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = w[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


def branching_weight(lam, mu):
    """Weight of one horizontal-strip branching step lambda -> mu:
    prod over i with m_i(mu) = m_i(lambda) + 1 of (1 - t^(m_i(mu)))."""
    lm = lam.mults()
    mm = mu.mults()
    out = t_const(1)
    for i, mult in mm.items():
        if mult == lm.get(i, 0) + 1:
            out = out * Laurent("t", {0: 1, mult: -1})
    return out


@lru_cache(maxsize=None)
def _hl_branching(parts, m):
    lam = Partition(parts)
    if m == 0:
        return XPoly(0, {(): t_const(1)}) if not parts else XPoly(0)
    if lam.length > m:
        return XPoly(m)
    total = XPoly(m)
    for mu in horizontal_strip_subs(lam):
        if mu.length > m - 1:
            continue
        sub = _hl_branching(mu.parts, m - 1)
        if not sub:
            continue
        weight = branching_weight(lam, mu)
        k = lam.size - mu.size
        terms = {}
        for e, c in sub.terms.items():
            terms[e + (k,)] = c * weight
        total = total + XPoly(m, terms)
    return total


def hl_polynomial(lam, m, engine="branching"):
    """Hall-Littlewood polynomial P_lambda(x_1..x_m; t) as an XPoly."""
    if m < 1:
        raise ValueError("need at least one variable")
    if m > SYMMETRIZE_CAP:
        raise ValueError(f"variable cap is {SYMMETRIZE_CAP}")
    if engine == "branching":
        return _hl_branching(lam.parts, m)
    if engine == "symmetrize":
        return hl_symmetrized(lam, m)
    raise ValueError(f"unknown engine {engine!r}")


def elementary(r, m):
    """e_r(x_1..x_m)."""
    from itertools import combinations

    if r < 0:
        raise ValueError("r must be nonnegative")
    if r > m:
        return XPoly(m)
    terms = {}
    for combo in combinations(range(m), r):
        e = [0] * m
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = t_const(1)
    return XPoly(m, terms)


def homogeneous(r, m):
    """h_r(x_1..x_m): sum of all monomials of total degree r."""
    terms = {}

    def build(i, remaining, prefix):
        if i == m - 1:
            terms[tuple(prefix) + (remaining,)] = t_const(1)
            return
        for v in range(remaining + 1):
            prefix.append(v)
            build(i + 1, remaining - v, prefix)
            prefix.pop()

    if m == 0:
        return XPoly(0, {(): t_const(1)}) if r == 0 else XPoly(0)
    build(0, r, [])
    return XPoly(m, terms)


def schur(lam, m):
    """Schur polynomial via the Jacobi-Trudi determinant det(h_{lam_i - i + j})."""
    if lam.length > m:
        return XPoly(m)
    ell = lam.length
    if ell == 0:
        return XPoly.constant(m, 1)
    rows = [[lam.part(i + 1) - (i + 1) + (j + 1) for j in range(ell)]
            for i in range(ell)]
    total = XPoly(m)
    for w in permutations(range(ell)):
        degs = [rows[i][w[i]] for i in range(ell)]
        if any(d < 0 for d in degs):
            continue
        prod = XPoly.constant(m, _perm_sign(w))
        for d in degs:
            prod = prod.mul(homogeneous(d, m))
        total = total + prod
    return total


def pieri_expand(mu, r):
    """Coefficients of P_mu * e_r in the P-basis, keyed by Partition.

    Coefficient for lambda: product over columns j of the Gaussian binomial
    C(lambda'_j - lambda'_{j+1}, lambda'_j - mu'_j) in t.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    out = {}
    for lam in vertical_strip_covers(mu, r):
        ld = lam.dual()
        md = mu.dual()
        coeff = t_const(1)
        for j in range(1, lam.part(1) + 1):
            n_ = ld.part(j) - ld.part(j + 1)
            k_ = ld.part(j) - md.part(j)
            coeff = coeff * gaussian_binomial(n_, k_, "t")
        out[lam] = coeff
    return out


# ---------------------------------------------------------------------------
# P-basis conversion by dominance triangularity

@lru_cache(maxsize=None)
def _p_cached(parts, m):
    return hl_polynomial(Partition(parts), m)


def to_p_basis(f, m):
    """Expand a symmetric XPoly in the Hall-Littlewood basis.

    Back-substitution from the reverse-lexicographically largest remaining
    monomial; P_lambda is unitriangular on dominance, so this terminates.
    """
    work = XPoly(m)
    work.terms = dict(f.terms)
    out = {}
    while work.terms:
        e = max(work.terms, key=lambda ee: tuple(sorted(ee, reverse=True)))
        lam = Partition(tuple(sorted((x for x in e if x), reverse=True)))
        c = work.terms[tuple(sorted(e, reverse=True))]
        out[lam] = c
        work = work - _p_cached(lam.parts, m).scale(c)
    return out


def hall_coefficient(mu, nu, lam):
    """Hall polynomial g^lambda_{mu,nu}(p) as a Laurent polynomial in p.

    Extracted from the P-basis expansion of t^n(mu) P_mu * t^n(nu) P_nu; the
    lambda coefficient is g(1/t) * t^(n(lambda) - n(mu) - n(nu)).
    """
    if mu.size + nu.size != lam.size:
        return Laurent("p")
    m = min(lam.length + 0, SYMMETRIZE_CAP)
    m = max(m, 1)
    if lam.length > SYMMETRIZE_CAP:
        raise ValueError("partition too long for the variable cap")
    prod = _p_cached(mu.parts, m).mul(_p_cached(nu.parts, m))
    expansion = to_p_basis(prod, m)
    c = expansion.get(lam)
    if c is None or not c:
        return Laurent("p")
    shift = mu.n_stat() + nu.n_stat() - lam.n_stat()
    g_in_inv_t = c.shift(shift)
    return g_in_inv_t.subs_recip("p")


# ---------------------------------------------------------------------------
# identity verification

IDENTITY_NAMES = ("newhall", "kawanaka", "macident", "machallsum", "schursum")


@dataclass
class IdentityReport:
    name: str
    m: int
    deg: int
    ok: bool
    monomial: tuple | None = None
    lhs_coeff: str | None = None
    rhs_coeff: str | None = None

    def as_record(self):
        rec = {"identity": self.name, "vars": self.m, "deg": self.deg,
               "status": "pass" if self.ok else "fail"}
        if not self.ok:
            rec["monomial"] = list(self.monomial)
            rec["lhs"] = self.lhs_coeff
            rec["rhs"] = self.rhs_coeff
        return rec


def _geom_factor(acc, m, exps, coeff, maxdeg):
    """Multiply acc by 1/(1 - coeff * x^exps), truncated."""
    step = sum(exps)
    if step == 0:
        raise ValueError("geometric factor needs positive degree")
    terms = {(0,) * m: t_const(1)}
    e = [0] * m
    c = t_const(1)
    d = 0
    while d + step <= maxdeg:
        e = [a + b for a, b in zip(e, exps)]
        c = c * coeff
        d += step
        terms[tuple(e)] = c
    return acc.mul(XPoly(m, terms), maxdeg)


def _linear_factor(acc, m, exps, coeff, maxdeg):
    """Multiply acc by (1 + coeff * x^exps), truncated."""
    terms = {(0,) * m: t_const(1), tuple(exps): _as_ring(coeff)}
    return acc.mul(XPoly(m, terms), maxdeg)


def _unit(i, m):
    e = [0] * m
    e[i] = 1
    return tuple(e)


def _pair(i, j, m):
    e = [0] * m
    e[i] += 1
    e[j] += 1
    return tuple(e)


def _lift_xpoly(f, lift):
    out = XPoly(f.m)
    out.terms = {e: lift(c) for e, c in f.terms.items()}
    return out


def verify_identity(name, m, deg):
    """Check one symmetric-function identity exactly up to total degree deg.

    Both sides are expanded in m variables with Laurent-in-t coefficients
    (polynomial in an extra y for 'macident'); left-hand sums run over the
    stated partition family with size <= deg.
    """
    name = name.lower()
    if name not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {name!r}")
    if deg < 0:
        raise ValueError("truncation degree must be nonnegative")
    if m > SYMMETRIZE_CAP:
        raise ValueError(f"variable cap is {SYMMETRIZE_CAP}")

    if name == "newhall":
        lhs = XPoly(m)
        for lam in partitions_up_to(deg, "even-parts-even-mult"):
            if lam.length > m:
                continue
            scale = c_poly(lam).shift(-(lam.odd_parts() + lam.size) // 2)
            lhs = lhs + _p_cached(lam.parts, m).scale(scale)
        rhs = XPoly.constant(m, 1)
        inv_t = t_monomial(-1)
        for i in range(m):
            rhs = _linear_factor(rhs, m, _unit(i, m), inv_t, deg)
            # 1/(1+x_i) expands with alternating signs
            rhs = _alt_geom(rhs, m, _unit(i, m), deg)
        for i in range(m):
            for j in range(i, m):
                rhs = _linear_factor(rhs, m, _pair(i, j, m), t_const(-1), deg)
                rhs = _geom_factor(rhs, m, _pair(i, j, m), inv_t, deg)
        return _compare(name, m, deg, lhs, rhs)

    if name == "kawanaka":
        lhs = XPoly(m)
        for lam in partitions_up_to(deg, "odd-parts-even-mult"):
            if lam.length > m:
                continue
            scale = c_poly(lam).shift((lam.odd_parts() - lam.size) // 2)
            lhs = lhs + _p_cached(lam.parts, m).scale(scale)
        rhs = XPoly.constant(m, 1)
        inv_t = t_monomial(-1)
        for i in range(m):
            for j in range(i, m):
                rhs = _linear_factor(rhs, m, _pair(i, j, m), t_const(-1), deg)
                rhs = _geom_factor(rhs, m, _pair(i, j, m), inv_t, deg)
        return _compare(name, m, deg, lhs, rhs)

    if name == "macident":
        y = Laurent.gen("y")

        def lift(c):
            return Laurent("t", {e: Laurent.const("y", v)
                                 for e, v in c.coeffs.items()})

        lhs = XPoly(m)
        for lam in partitions_up_to(deg):
            if lam.length > m:
                continue
            pref = Laurent.const("t", Laurent.const("y", Fraction(1)))
            pref = pref.shift(lam.n_stat())
            for j in range(1, lam.length + 1):
                one_y = Laurent.const("y", Fraction(1))
                if j == 1:
                    factor = Laurent("t", {0: one_y + y})
                else:
                    factor = Laurent("t", {0: one_y, 1 - j: y})
                pref = pref * factor
            lhs = lhs + _lift_xpoly(_p_cached(lam.parts, m), lift).scale(pref)
        rhs = XPoly(m, {(0,) * m: Laurent.const("t", Laurent.const("y", Fraction(1)))})
        y_in_t = Laurent.const("t", y)
        one = Laurent.const("t", Laurent.const("y", Fraction(1)))
        for j in range(m):
            rhs = _linear_factor(rhs, m, _unit(j, m), y_in_t, deg)
            rhs = _geom_factor_c(rhs, m, _unit(j, m), one, deg)
        return _compare(name, m, deg, lhs, rhs)

    if name == "machallsum":
        lhs = XPoly(m)
        for lam in partitions_up_to(deg, "all-parts-even"):
            if lam.length > m:
                continue
            lhs = lhs + _p_cached(lam.parts, m)
        rhs = XPoly.constant(m, 1)
        for i in range(m):
            rhs = _geom_factor(rhs, m, _pair(i, i, m), t_const(1), deg)
        for i in range(m):
            for j in range(i + 1, m):
                rhs = _linear_factor(rhs, m, _pair(i, j, m), t_monomial(1, -1), deg)
                rhs = _geom_factor(rhs, m, _pair(i, j, m), t_const(1), deg)
        return _compare(name, m, deg, lhs, rhs)

    # schursum
    lhs = XPoly(m)
    for lam in partitions_up_to(deg):
        if lam.length > m:
            continue
        lhs = lhs + schur(lam, m)
    rhs = XPoly.constant(m, 1)
    for i in range(m):
        rhs = _geom_factor(rhs, m, _unit(i, m), t_const(1), deg)
    for i in range(m):
        for j in range(i + 1, m):
            rhs = _geom_factor(rhs, m, _pair(i, j, m), t_const(1), deg)
    return _compare(name, m, deg, lhs, rhs)


def _alt_geom(acc, m, exps, maxdeg):
    """Multiply by 1/(1 + x^exps) = sum (-1)^k x^(k exps)."""
    step = sum(exps)
    terms = {(0,) * m: t_const(1)}
    e = [0] * m
    sign = 1
    d = 0
    while d + step <= maxdeg:
        e = [a + b for a, b in zip(e, exps)]
        sign = -sign
        d += step
        terms[tuple(e)] = t_const(sign)
    return acc.mul(XPoly(m, terms), maxdeg)


def _geom_factor_c(acc, m, exps, coeff, maxdeg):
    """Multiply acc by 1/(1 - coeff x^exps) for a general ring coefficient."""
    step = sum(exps)
    one = coeff ** 0
    terms = {(0,) * m: one}
    e = [0] * m
    c = one
    d = 0
    while d + step <= maxdeg:
        e = [a + b for a, b in zip(e, exps)]
        c = c * coeff
        d += step
        terms[tuple(e)] = c
    return acc.mul(XPoly(m, terms), maxdeg)


def _compare(name, m, deg, lhs, rhs):
    lhs = lhs.truncate(deg)
    rhs = rhs.truncate(deg)
    diff = lhs - rhs
    if not diff:
        return IdentityReport(name=name, m=m, deg=deg, ok=True)
    bad = min(diff.terms, key=lambda e: (sum(e), e))
    return IdentityReport(
        name=name, m=m, deg=deg, ok=False, monomial=bad,
        lhs_coeff=repr(lhs.coeff(bad)), rhs_coeff=repr(rhs.coeff(bad)),
    )


def hallishall_check(mu, nu, m=None):
    """Product expansion check: t^n(mu) P_mu t^n(nu) P_nu re-expands with
    coefficients g^lambda(1/t) t^(n(lambda) - n(mu) - n(nu))."""
    size = mu.size + nu.size
    if m is None:
        m = min(size, SYMMETRIZE_CAP)
    m = max(m, 1)
    prod = _p_cached(mu.parts, m).mul(_p_cached(nu.parts, m))
    expansion = to_p_basis(prod, m)
    for lam, coeff in expansion.items():
        g = hall_coefficient(mu, nu, lam)
        expect = g.subs_recip("t").shift(lam.n_stat() - mu.n_stat() - nu.n_stat())
        if coeff != expect:
            return False
    return True
