"""Closed forms for the class statistics of g * g^tau and of random
symplectic elements: the B factors, the class-data probability, per-class
solution counts, unipotent specializations, and the centralizer lower bound
for the twisted coset.

Conventions: in characteristic 2 the label z+1 coincides with z-1 and the
z-1 formulas apply; non-self-conjugate labels are only ever consumed as
conjugate pairs so every value stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Interval, bracket_e, bracket_log_base, bracket_sqrt
from .ffpoly import MonicPoly, conjugate_poly, field, is_self_conjugate
from .matrep import ClassData, centralizer_size, gl_order, u_order
from .partition import Partition
from .qseries import q_pochhammer


@dataclass(frozen=True)
class CharFlags:
    p: int
    e: int  # 0 iff characteristic 2
    f: int  # 1 in characteristic 2, else 2


def char_flags(q):
    p = field(q).p
    return CharFlags(p=p, e=0 if p == 2 else 1, f=1 if p == 2 else 2)


def _is_z_minus_one(poly):
    F = poly.field
    return poly.coeffs == (F.neg(1), 1)


def _is_z_plus_one(poly):
    return poly.coeffs == (1, 1) and poly.field.q != 2


def _even_pair_product(lam, q):
    """prod_i (1 - 1/q^2)(1 - 1/q^4)...(1 - 1/q^(2*floor(m_i/2)))."""
    out = Fraction(1)
    for mult in lam.mults().values():
        for j in range(1, mult // 2 + 1):
            out *= 1 - Fraction(1, q ** (2 * j))
    return out


def _plus_minus_one_factor(lam, q, sign):
    """q^(n(lam) + |lam|/2 +- o(lam)/2) times the even-index products."""
    twice_exp = 2 * lam.n_stat() + lam.size + sign * lam.odd_parts()
    if twice_exp % 2:
        raise ValueError("half-integer exponent; parity invariant violated")
    return Fraction(q) ** (twice_exp // 2) * _even_pair_product(lam, q)


def _mult_exponent(lam):
    """2 * (sum_{h<i} h m_h m_i + (1/2) sum_i (i-1) m_i^2); returned doubled
    so callers can keep integer arithmetic."""
    mults = sorted(lam.mults().items())
    total = 0
    for a, (h, mh) in enumerate(mults):
        for (i, mi) in (kv for kv in mults[a + 1:]):
            total += 2 * h * mh * mi
    for i, mi in mults:
        total += (i - 1) * mi * mi
    return total


def B_factor(phi_or_pair, lam, q):
    """One factor of the class probability denominator.

    For a self-conjugate label this is B(phi, lam); a non-self-conjugate
    label must be passed as the unordered pair {phi, conj(phi)} and the
    returned value is the product B(phi, lam) * B(conj phi, lam), which is
    rational (each single factor involves |GL|^(1/2)).
    """
    if isinstance(phi_or_pair, MonicPoly):
        phi = phi_or_pair
        if phi.coeffs == (0, 1):
            raise ValueError("z is not a valid label")
        if _is_z_minus_one(phi) or (q == 2 and phi.coeffs == (1, 1)):
            return _plus_minus_one_factor(lam, q, -1)
        if _is_z_plus_one(phi):
            return _plus_minus_one_factor(lam, q, +1)
        if not is_self_conjugate(phi):
            raise ValueError("non-self-conjugate label needs its conjugate pair")
        d = phi.degree  # even for self-conjugate labels other than z +- 1
        out = Fraction(q) ** (d * _mult_exponent(lam) // 2)
        for i, mi in lam.mults().items():
            out *= u_order(mi, q ** (d // 2))
        return out
    phi, phibar = phi_or_pair
    if conjugate_poly(phi) != phibar:
        raise ValueError("pair is not a conjugate pair")
    d = phi.degree
    out = Fraction(q) ** (d * _mult_exponent(lam))
    for i, mi in lam.mults().items():
        out *= gl_order(mi, q ** d)
    return out


def _pair_up(C):
    """Entries of a class grouped as z-1, z+1, self-conjugate, pairs."""
    q = C.q
    z_minus = None
    z_plus = None
    selfconj = []
    pairs = []
    seen = set()
    for phi, lam in C.entries:
        if phi in seen:
            continue
        if _is_z_minus_one(phi) or (q == 2 and phi.coeffs == (1, 1)):
            z_minus = (phi, lam)
        elif _is_z_plus_one(phi):
            z_plus = (phi, lam)
        elif is_self_conjugate(phi):
            selfconj.append((phi, lam))
        else:
            bar = conjugate_poly(phi)
            pairs.append((phi, bar, lam, C.partition_for(bar)))
            seen.add(bar)
        seen.add(phi)
    return z_minus, z_plus, selfconj, pairs


def prob_ggtau(C, q=None):
    """Chance that g * g^tau lands in the class C for uniform g in GL(n, q).

    Zero unless the class is real, the even parts of the z-1 partition have
    even multiplicity, and (odd characteristic) the odd parts of the z+1
    partition have even multiplicity; otherwise the product of 1/B factors.
    """
    q = q or C.q
    if q != C.q:
        raise ValueError("field size mismatch")
    if not C.is_real():
        return Fraction(0)
    z_minus, z_plus, selfconj, pairs = _pair_up(C)
    if z_minus and not z_minus[1].even_parts_even_mult():
        return Fraction(0)
    if z_plus and not z_plus[1].odd_parts_even_mult():
        return Fraction(0)
    out = Fraction(1)
    if z_minus:
        out /= _plus_minus_one_factor(z_minus[1], q, -1)
    if z_plus:
        out /= _plus_minus_one_factor(z_plus[1], q, +1)
    for phi, lam in selfconj:
        out /= B_factor(phi, lam, q)
    for phi, bar, lam, _ in pairs:
        out /= B_factor((phi, bar), lam, q)
    return out


def count_solutions(C, q=None):
    """Number of g with g * g^tau equal to one fixed representative of C."""
    q = q or C.q
    value = prob_ggtau(C, q) * centralizer_size(C, q)
    assert value.denominator == 1, "solution count must be an integer"
    return int(value)


def gow_macdonald_product(n, q):
    """(q-1) q^2 (q^3-1) q^4 ... with n factors."""
    out = 1
    for i in range(1, n + 1):
        out *= q ** i - 1 if i % 2 else q ** i
    return out


def prob_unipotent(mu, q, target="gl"):
    """Unipotent specialization of the two closed forms.

    target 'gl': chance g * g^tau is unipotent with Jordan type mu;
    target 'sp': chance a random element of Sp(|mu|, q) is unipotent of
    type mu (|mu| even).
    """
    if target == "gl":
        if not mu.even_parts_even_mult():
            return Fraction(0)
        return 1 / _plus_minus_one_factor(mu, q, -1)
    if target == "sp":
        if not mu.odd_parts_even_mult():
            # odd size forces an odd part of odd multiplicity, so this also
            # covers mu that fit no symplectic group
            return Fraction(0)
        return 1 / _plus_minus_one_factor(mu, q, +1)
    raise ValueError(f"unknown target {target!r}")


def prob_sp_class(C, q=None):
    """Chance a random element of Sp(n, q) has GL class data C (n = C.n even).

    The z-1 factor uses the +o/2 exponent; all other labels contribute their
    1/B factor; zero off the reality and odd-part parity conditions.
    """
    q = q or C.q
    if C.n % 2:
        raise ValueError("symplectic classes need even n")
    if not C.is_real():
        return Fraction(0)
    z_minus, z_plus, selfconj, pairs = _pair_up(C)
    if z_minus and not z_minus[1].odd_parts_even_mult():
        return Fraction(0)
    if z_plus and not z_plus[1].odd_parts_even_mult():
        return Fraction(0)
    out = Fraction(1)
    if z_minus:
        out /= _plus_minus_one_factor(z_minus[1], q, +1)
    if z_plus:
        out /= _plus_minus_one_factor(z_plus[1], q, +1)
    for phi, lam in selfconj:
        out /= B_factor(phi, lam, q)
    for phi, bar, lam, _ in pairs:
        out /= B_factor((phi, bar), lam, q)
    return out


@dataclass
class CentralizerBound:
    n: int
    q: int
    lower: Fraction
    interval: Interval


def min_centralizer_bound(n, q):
    """Certified lower bound (1-1/q^2-1/q^4)^2 q^floor(n/2)
    sqrt((1-1/q) / (4 e log_q n)) on twisted-coset centralizer orders."""
    if n < 2:
        raise ValueError("bound needs n >= 2")
    if q < 2:
        raise ValueError("bound needs q >= 2")
    poly_part = (1 - Fraction(1, q ** 2) - Fraction(1, q ** 4)) ** 2 \
        * Fraction(q) ** (n // 2)
    inner = Interval.point(1 - Fraction(1, q)) / (4 * bracket_e() * bracket_log_base(n, q))
    root = Interval(bracket_sqrt(inner.lo).lo, bracket_sqrt(inner.hi).hi)
    interval = root * poly_part
    return CentralizerBound(n=n, q=q, lower=interval.lo, interval=interval)


def centbound_inequality_ok(lam, q, side):
    """Exact check of the two per-partition inequalities behind the bound.

    side 'even-mult-even-parts': q^(n+|lam|/2-o/2) prod >= q^floor(|lam|/2) (1-1/q^2-1/q^4)
    side 'even-mult-odd-parts':  q^(n+|lam|/2+o/2) prod >= q^(|lam|/2) (1-1/q^2-1/q^4)
    """
    target = 1 - Fraction(1, q ** 2) - Fraction(1, q ** 4)
    if side == "even-mult-even-parts":
        if not lam.even_parts_even_mult():
            raise ValueError("partition off the stated support")
        lhs = _plus_minus_one_factor(lam, q, -1)
        rhs = Fraction(q) ** (lam.size // 2) * target
    elif side == "even-mult-odd-parts":
        if not lam.odd_parts_even_mult():
            raise ValueError("partition off the stated support")
        lhs = _plus_minus_one_factor(lam, q, +1)
        rhs = Fraction(q) ** Fraction(lam.size, 2) * target
    else:
        raise ValueError(f"unknown side {side!r}")
    return lhs >= rhs
