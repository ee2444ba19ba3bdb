"""Partition measures attached to the twisted squaring map: exact masses with
certified normalizing prefactors, exact sampling, the product identity over
irreducible polynomials, and empirical comparison against matrix experiments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .exact import Interval, series_exp
from .ffpoly import conjugate_poly, field, irreducibles_of_degree
from .formulas import char_flags
from .matrep import enumerate_class_data
from .partition import Partition, enumerate_partitions

FAMILIES = ("Sp", "O-even", "O-odd")


@dataclass(frozen=True)
class PartitionMeasure:
    family: str
    u: Fraction
    q: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        u = Fraction(self.u)
        if not 0 < u <= 1:
            raise ValueError("u must lie in (0, 1]")
        object.__setattr__(self, "u", u)
        if self.q < 2:
            raise ValueError("q must be >= 2")

    def supports(self, lam):
        if self.family == "Sp":
            return lam.odd_parts_even_mult()
        if self.family == "O-even":
            return lam.size % 2 == 0 and lam.even_parts_even_mult()
        return lam.size % 2 == 1 and lam.even_parts_even_mult()

    @property
    def sign(self):
        return +1 if self.family == "Sp" else -1


def _denominator(lam, q, sign):
    """q^(n(lam) + |lam|/2 +- o/2) prod_i (1-1/q^2)...(1-1/q^(2 floor(m_i/2)))."""
    twice = 2 * lam.n_stat() + lam.size + sign * lam.odd_parts()
    out = Fraction(q) ** (twice // 2)
    for mult in lam.mults().values():
        for j in range(1, mult // 2 + 1):
            out *= 1 - Fraction(1, q ** (2 * j))
    return out


def relative_mass(measure, lam):
    """Mass without the normalizing prefactor; exact rational."""
    if not measure.supports(lam):
        return Fraction(0)
    u = measure.u
    exponent = lam.size - (1 if measure.family == "O-odd" else 0)
    return u ** exponent / _denominator(lam, measure.q, measure.sign)


def prefactor_interval(measure, terms=40):
    """Certified interval for prod_{i>=1} (1 - u^2 / q^(2i-1))."""
    u2 = measure.u ** 2
    q = measure.q
    partial = Fraction(1)
    for i in range(1, terms + 1):
        partial *= 1 - u2 / q ** (2 * i - 1)
    # Weierstrass: 1 - sum x_i <= prod (1 - x_i) <= 1 over the tail
    tail_sum = u2 * Fraction(1, q ** (2 * terms + 1)) / (1 - Fraction(1, q * q))
    return Interval.point(partial) * Interval(1 - tail_sum, 1)


def measure_mass(measure, lam, terms=40):
    """Mass of one partition as a certified interval (width <= ~q^-80)."""
    rel = relative_mass(measure, lam)
    if rel == 0:
        return Interval.point(0)
    return prefactor_interval(measure, terms) * rel


@lru_cache(maxsize=None)
def _size_relative_sum(family, u, q, size):
    m = PartitionMeasure(family, u, q)
    return sum(relative_mass(m, lam) for lam in enumerate_partitions(size))


@lru_cache(maxsize=None)
def _even_series_coeff(q, k):
    """q^-k / prod_{i<=k} (1 - q^-2i): per-size sum in closed form.

    This equals the enumerated _size_relative_sum at u = 1 (tested against it
    on small sizes); the sampler uses it so large size caps stay cheap.
    """
    out = Fraction(1, q ** k)
    for i in range(1, k + 1):
        out /= 1 - Fraction(1, q ** (2 * i))
    return out


def size_weight(family, u, q, size):
    """Relative mass of one size class, via the closed form."""
    if family in ("Sp", "O-even"):
        if size % 2:
            return Fraction(0)
        return u ** size * _even_series_coeff(q, size // 2)
    if size % 2 == 0:
        return Fraction(0)
    return u ** (size - 1) * _even_series_coeff(q, (size - 1) // 2)


def _tail_relative_bound(measure, cap):
    """Upper bound on the relative mass beyond the size cap.

    The per-size sums are coefficients of 1 / prod_j (1 - v^2/q^(2j-1))
    (shifted by (1+v) on the O side), whose even coefficients are
    q^-k / prod(1 - q^-2i) <= q^-k / (1 - 1/q^2 - 1/q^4).
    """
    q = measure.q
    u = measure.u
    floor_bound = 1 - Fraction(1, q ** 2) - Fraction(1, q ** 4)
    # sizes n > cap; group by the even series index k
    if measure.family == "Sp" or measure.family == "O-even":
        k0 = cap // 2 + 1  # first size 2*k0 beyond cap
        geom = (u ** 2 / q) ** k0 / (1 - u ** 2 / q)
        return geom / floor_bound
    # O-odd: size 2k+1 carries u^(2k) q^-k / prod
    k0 = (cap + 1) // 2  # smallest k with 2k+1 > cap
    geom = (u ** 2 / q) ** k0 / (1 - u ** 2 / q)
    return geom / floor_bound


@dataclass
class NormalizationReport:
    measure: PartitionMeasure
    size_cap: int
    interval: Interval
    contains_one: bool
    width: Fraction


def normalization_check(measure, size_cap):
    """Certified interval around the total mass; must contain 1."""
    if size_cap < 0:
        raise ValueError("size cap must be nonnegative")
    partial = sum(_size_relative_sum(measure.family, measure.u, measure.q, n)
                  for n in range(size_cap + 1))
    tail = Interval(Fraction(0), _tail_relative_bound(measure, size_cap))
    total = prefactor_interval(measure) * (Interval.point(partial) + tail)
    return NormalizationReport(
        measure=measure, size_cap=size_cap, interval=total,
        contains_one=total.contains(1), width=total.width(),
    )


@lru_cache(maxsize=None)
def _conditional_weights(family, u, q, size):
    m = PartitionMeasure(family, u, q)
    lams = [lam for lam in enumerate_partitions(size) if m.supports(lam)]
    return tuple((lam, relative_mass(m, lam)) for lam in lams)


def _structural_denominator(n, q, u_den):
    """Common denominator for every relative mass at sizes <= n.

    Each weight is q^(+-e) / prod_j (q^2j - 1)^(mult_j) with
    e <= binom(n,2) + n and mult_j <= floor(n / 2j), times a power of the
    denominator of u up to n.
    """
    L = q ** (n * (n - 1) // 2 + n) * u_den ** n
    for j in range(1, n // 2 + 1):
        L *= (q ** (2 * j) - 1) ** (n // (2 * j))
    return L


def _integerize(weights, denom):
    ints = []
    for w in weights:
        scaled = w * denom
        if scaled.denominator != 1:
            raise AssertionError("structural denominator too small")
        ints.append(int(scaled))
    return ints, sum(ints)


@lru_cache(maxsize=None)
def _size_weight_table(family, u, q, size_cap):
    sums = [size_weight(family, u, q, n) for n in range(size_cap + 1)]
    return _integerize(sums, _structural_denominator(size_cap, q, u.denominator))


@lru_cache(maxsize=None)
def _conditional_weight_table(family, u, q, size):
    weights = _conditional_weights(family, u, q, size)
    ints, total = _integerize([w for _, w in weights],
                              _structural_denominator(max(size, 1), q, u.denominator))
    return tuple(lam for lam, _ in weights), ints, total


def sample_partition(measure, size_cap, rng):
    """Exact inverse-CDF sample conditioned on size <= size_cap.

    Two stages, both with integer weights over a common denominator, so the
    conditional distribution is hit exactly. The unconditioned tail beyond
    the cap must be below 1e-9.
    """
    tail = _tail_relative_bound(measure, size_cap) * prefactor_interval(measure).hi
    if tail >= Fraction(1, 10 ** 9):
        raise ValueError("size cap leaves more than 1e-9 tail mass")
    key = (measure.family, measure.u, measure.q)
    ints, total = _size_weight_table(*key, size_cap)
    size = _weighted_draw(ints, total, rng)
    lams, cints, ctotal = _conditional_weight_table(*key, size)
    return lams[_weighted_draw(cints, ctotal, rng)]


def _weighted_draw(ints, total, rng):
    if total == 0:
        raise ValueError("empty distribution")
    draw = rng.randrange(total)
    acc = 0
    for i, w in enumerate(ints):
        acc += w
        if draw < acc:
            return i
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# the product identity over irreducible polynomials

@dataclass
class ProductIdentityReport:
    q: int
    trunc: int
    ok: bool
    lhs: list
    rhs: list


def verify_product_identity(q, trunc):
    """Both sides of the factorization of 1 - u^2 over polynomial families.

    The right side is exp of the sum of logs; each log coefficient is an
    exact geometric sum over the inner index, so the whole comparison is
    exact rational arithmetic at every u-power up to trunc.
    """
    if trunc < 1:
        raise ValueError("truncation must be >= 1")
    f = char_flags(q).f
    log_series = [Fraction(0)] * (trunc + 1)

    # (prod_{i>=1} (1 - u^2 / q^(2i-1)))^f
    for k in range(1, trunc // 2 + 1):
        ratio = Fraction(1, q ** (2 * k))
        inner = Fraction(q) ** k * ratio / (1 - ratio)  # sum_i q^(k - 2ik)
        log_series[2 * k] -= f * inner / k

    for d in range(1, trunc + 1):
        for phi in irreducibles_of_degree(q, d):
            if phi.coeffs == (phi.field.neg(1), 1) or phi.coeffs == (1, 1):
                continue
            bar = conjugate_poly(phi)
            if bar == phi:
                # prod_i (1 + u^d / ((-1)^i q^(i d / 2))), d even
                for k in range(1, trunc // d + 1):
                    r = Fraction((-1) ** k, q ** (d * k // 2)) \
                        if (d * k) % 2 == 0 else None
                    if r is None:
                        raise AssertionError("odd exponent for self-conjugate label")
                    geom = r / (1 - r)
                    log_series[d * k] += Fraction((-1) ** (k + 1), k) * geom
            elif phi < bar:
                # prod_i (1 - u^(2d) / q^(i d)) per unordered pair
                for k in range(1, trunc // (2 * d) + 1):
                    r = Fraction(1, q ** (d * k))
                    geom = r / (1 - r)
                    log_series[2 * d * k] -= geom / k
    rhs = series_exp(log_series, trunc)
    lhs = [Fraction(0)] * (trunc + 1)
    lhs[0] = Fraction(1)
    if trunc >= 2:
        lhs[2] = Fraction(-1)
    return ProductIdentityReport(q=q, trunc=trunc, ok=lhs == rhs,
                                 lhs=lhs, rhs=rhs)


# ---------------------------------------------------------------------------
# exact finite-n distribution of the unipotent part

def finite_n_z1_distribution(n, q):
    """Exact law of the z-1 partition of g g^tau via the closed forms,
    summed over enumerated class data."""
    from .formulas import prob_ggtau

    F = field(q)
    zm1 = (F.neg(1), 1)
    out = {}
    for C in enumerate_class_data(n, q):
        p = prob_ggtau(C)
        if not p:
            continue
        lam = Partition()
        for poly, pl in C.entries:
            if poly.coeffs == zm1:
                lam = pl
                break
        out[lam] = out.get(lam, Fraction(0)) + p
    return out


# ---------------------------------------------------------------------------
# empirical sampling over F_2 (bitmask fast path) and generic fields

def _f2_rank(rows, n):
    rank = 0
    basis = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            rank += 1
    return rank


def _f2_inverse(rows, n):
    work = [(rows[i] << n) | (1 << (n - 1 - i)) for i in range(n)]
    # forward elimination to reduced row echelon over the left block
    pivots = []
    for col in range(2 * n - 1, n - 1, -1):
        bit = 1 << col
        pivot = None
        for idx, r in enumerate(work):
            if idx in (p[0] for p in pivots):
                continue
            if r & bit:
                pivot = idx
                break
        if pivot is None:
            return None
        for idx, r in enumerate(work):
            if idx != pivot and r & bit:
                work[idx] = r ^ work[pivot]
        pivots.append((pivot, col))
    pivots.sort(key=lambda pc: -pc[1])
    mask = (1 << n) - 1
    return [work[idx] & mask for idx, _ in pivots]


def _f2_mul(A, B, n):
    out = []
    for row in A:
        acc = 0
        for j in range(n):
            if row & (1 << (n - 1 - j)):
                acc ^= B[j]
        out.append(acc)
    return out


def _f2_transpose(A, n):
    return [sum(((A[i] >> (n - 1 - j)) & 1) << (n - 1 - i) for i in range(n))
            for j in range(n)]


def _f2_add_identity(A, n):
    return [A[i] ^ (1 << (n - 1 - i)) for i in range(n)]


def _f2_unipotent_partition(h, n):
    """Partition of the z-1 label over F_2 from nullity increments."""
    M = _f2_add_identity(h, n)
    dual = []
    prev = 0
    power = M
    while True:
        nullity = n - _f2_rank(power, n)
        step = nullity - prev
        if step == 0:
            break
        dual.append(step)
        prev = nullity
        power = _f2_mul(power, M, n)
    return Partition(dual).dual()


def _f2_poly_partition(h, n, coeffs):
    """Partition label of an irreducible with the given coefficient tuple."""
    d = len(coeffs) - 1
    acc = None
    for c in reversed(coeffs):
        if acc is None:
            acc = [(1 << (n - 1 - i)) if c else 0 for i in range(n)]
        else:
            acc = _f2_mul(acc, h, n)
            if c:
                acc = _f2_add_identity(acc, n)
    dual = []
    prev = 0
    power = acc
    while True:
        nullity = n - _f2_rank(power, n)
        step = (nullity - prev) // d
        if step == 0:
            break
        dual.append(step)
        prev = nullity
        power = _f2_mul(power, acc, n)
    return Partition(dual).dual()


@dataclass
class EmpiricalRow:
    partition: Partition
    mass: Interval
    frequency: Fraction
    z_score: float


@dataclass
class EmpiricalReport:
    n: int
    q: int
    trials: int
    rows: list = dc_field(default_factory=list)
    empty_within_tolerance: bool = False
    joint_ratio: float | None = None
    observed_sizes: list = dc_field(default_factory=list)

    def csv_lines(self):
        yield "partition,mass_lo,mass_hi,frequency,z_score"
        for row in self.rows:
            yield (f"{row.partition!r},{row.mass.lo},{row.mass.hi},"
                   f"{row.frequency},{row.z_score:.3f}")


def empirical_limit_compare(n, q, trials, rng, tolerance=Fraction(1, 50)):
    """Sample uniform invertible matrices by rejection, compare the law of the
    z-1 partition of g g^tau with the size-parity limit measure."""
    if trials < 10 ** 4:
        raise ValueError("need at least 1e4 trials")
    if q != 2:
        raise NotImplementedError("empirical runs are wired for q = 2")
    parity_family = "O-even" if n % 2 == 0 else "O-odd"
    measure = PartitionMeasure(parity_family, Fraction(1), q)
    counts = {}
    joint_pair = 0
    z1_empty = 0
    pair_empty = 0
    cubic = (1, 1, 0, 1)  # one polynomial of the degree-3 conjugate pair
    for _ in range(trials):
        while True:
            g = [rng.getrandbits(n) for _ in range(n)]
            gi = _f2_inverse(g, n)
            if gi is not None:
                break
        h = _f2_mul(g, _f2_transpose(gi, n), n)
        lam = _f2_unipotent_partition(h, n)
        counts[lam] = counts.get(lam, 0) + 1
        lam_pair = _f2_poly_partition(h, n, cubic)
        if lam.size == 0:
            z1_empty += 1
        if lam_pair.size == 0:
            pair_empty += 1
        if lam.size == 0 and lam_pair.size == 0:
            joint_pair += 1
    rows = []
    for size in range(5):
        for lam in enumerate_partitions(size):
            if not measure.supports(lam):
                continue
            mass = measure_mass(measure, lam)
            freq = Fraction(counts.get(lam, 0), trials)
            mid = float(mass.mid())
            sigma = (mid * (1 - mid) / trials) ** 0.5
            z = (float(freq) - mid) / sigma if sigma else 0.0
            rows.append(EmpiricalRow(partition=lam, mass=mass,
                                     frequency=freq, z_score=z))
    empty_mass = measure_mass(measure, Partition())
    empty_freq = Fraction(counts.get(Partition(), 0), trials)
    ok = abs(empty_freq - empty_mass.mid()) < tolerance
    joint = None
    if z1_empty and pair_empty:
        joint = (joint_pair / trials) / ((z1_empty / trials) * (pair_empty / trials))
    return EmpiricalReport(n=n, q=q, trials=trials, rows=rows,
                           empty_within_tolerance=ok, joint_ratio=joint,
                           observed_sizes=sorted({lam.size for lam in counts}))


def make_rng(seed):
    if seed is None:
        raise ValueError("sampling requires an explicit seed")
    return random.Random(seed)
