"""Brute-force ground truth over small groups: solution counts for the
twisted squaring map, full class histograms, congruence orbits for GL and SL,
stabilizer orders, symplectic class statistics, extension-group class counts,
and subgroup counting in abelian p-groups.

Everything here recomputes from first principles (enumeration and orbit
closure); agreement with the closed forms elsewhere is exact integer equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .ffpoly import field
from .matrep import (ClassData, alternating_form_matrix, classify_rcf,
                     class_size, centralizer_size, enumerate_gl,
                     enumerate_group, ggtau, gl_generators, gl_order,
                     group_cap, is_symplectic, mat_det, mat_identity, mat_inv,
                     mat_mul, mat_transpose, sl_generators, sp_order)
from .partition import Partition


@dataclass
class Histogram:
    n: int
    q: int
    counts: dict
    total: int

    def proportion(self, C):
        return Fraction(self.counts.get(C, 0), self.total)

    def merge(self, other):
        if (other.n, other.q) != (self.n, self.q):
            raise ValueError("histogram shape mismatch")
        counts = dict(self.counts)
        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v
        return Histogram(self.n, self.q, counts, self.total + other.total)


def brute_histogram(n, q, cap=None):
    """Exact counts of g by the class of g * g^tau, one enumeration pass."""
    F = field(q)
    by_matrix = {}
    for g in enumerate_gl(n, q, cap):
        h = ggtau(F, g)
        by_matrix[h] = by_matrix.get(h, 0) + 1
    counts = {}
    for h, c in by_matrix.items():
        C = classify_rcf(F, h)
        counts[C] = counts.get(C, 0) + c
    return Histogram(n=n, q=q, counts=counts, total=gl_order(n, q))


def congruence_orbit(F, g, gens):
    """Closure of {g} under a -> a g a' over the generator list."""
    pre = [(a, mat_transpose(a)) for a in gens]
    seen = {g}
    dq = deque((g,))
    while dq:
        x = dq.popleft()
        for a, at in pre:
            y = mat_mul(F, mat_mul(F, a, x), at)
            if y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


@dataclass
class OrbitReport:
    kind: str
    n: int
    q: int
    representatives: list
    sizes: list
    stabilizer_orders: list
    group_order: int

    @property
    def orbit_count(self):
        return len(self.representatives)


def brute_congruence_orbits(kind, n, q, cap=None):
    """Decompose the invertible matrices into congruence orbits.

    kind 'GL' acts with the full group; kind 'SL' restricts the acting group
    (orbits then refine both the GL orbits and the determinant square-classes).
    """
    cap = cap or group_cap()
    if gl_order(n, q) > cap:
        raise ValueError("enumeration cap exceeded")
    F = field(q)
    gens = gl_generators(n, q) if kind == "GL" else sl_generators(n, q)
    order = gl_order(n, q) if kind == "GL" else gl_order(n, q) // (q - 1)
    remaining = set(enumerate_gl(n, q, cap))
    total = len(remaining)
    reps, sizes, stabs = [], [], []
    while remaining:
        g = min(remaining)
        orbit = congruence_orbit(F, g, gens)
        reps.append(g)
        sizes.append(len(orbit))
        if order % len(orbit):
            raise AssertionError("orbit size does not divide the group order")
        stabs.append(order // len(orbit))
        remaining -= orbit
    report = OrbitReport(kind=kind, n=n, q=q, representatives=reps,
                         sizes=sizes, stabilizer_orders=stabs,
                         group_order=order)
    if sum(sizes) != total:
        raise AssertionError("orbits do not partition the invertible matrices")
    return report


def brute_stabilizer(g, q, with_elements=False, cap=None):
    """|O_g| = |{a : a g a' = g}| via orbit-stabilizer on the congruence orbit."""
    n = len(g)
    F = field(q)
    orbit = congruence_orbit(F, g, gl_generators(n, q))
    order = gl_order(n, q)
    if order % len(orbit):
        raise AssertionError("orbit size does not divide |GL|")
    stab_order = order // len(orbit)
    if not with_elements:
        return stab_order
    els = [a for a in enumerate_gl(n, q, cap)
           if mat_mul(F, mat_mul(F, a, g), mat_transpose(a)) == g]
    if len(els) != stab_order:
        raise AssertionError("stabilizer filter disagrees with orbit count")
    return stab_order, els


@dataclass
class SpStats:
    n: int
    q: int
    counts: dict
    total: int

    def proportion(self, C):
        return Fraction(self.counts.get(C, 0), self.total)

    def regular_semisimple_proportion(self):
        mass = sum(c for C, c in self.counts.items()
                   if C.is_regular_semisimple())
        return Fraction(mass, self.total)


def brute_sp_stats(n, q, cap=None):
    """Class histogram of Sp(n, q) by GL class labels."""
    if n % 2:
        raise ValueError("Sp needs even dimension")
    F = field(q)
    counts = {}
    total = 0
    for g in enumerate_group("Sp", n, q, cap):
        C = classify_rcf(F, g)
        counts[C] = counts.get(C, 0) + 1
        total += 1
    if total != sp_order(n, q):
        raise AssertionError("symplectic filter missed elements")
    return SpStats(n=n, q=q, counts=counts, total=total)


def mu2_order(q):
    """Number of square roots of unity in F_q."""
    return 1 if q % 2 == 0 else 2


def _tau(F, g):
    return mat_transpose(mat_inv(F, g))


def _min_poly_coprime_z2_minus_1(C):
    """No z-1 or z+1 label (char 2: no z-1 label)."""
    F = field(C.q)
    for poly, _ in C.entries:
        if poly.coeffs == (F.neg(1), 1) or poly.coeffs == (1, 1):
            return False
    return True


@dataclass
class OrbitStructureReport:
    n: int
    q: int
    classes_checked: int
    ok: bool
    failures: list = dc_field(default_factory=list)


def verify_orbit_structure(n, q, cap=None):
    """Per-representative checks of the solution-count structure.

    n even: for real h with minimal polynomial coprime to z^2 - 1, the number
    of solutions g g^tau = h is |C(h)| / |O_g|, all solutions form one
    C(h)-orbit under a -> a g a', and g, g', g^-1 are mutually congruent.
    n odd: same counts with lambda_{z-1} = (1), times |mu_2(F_q)|.
    """
    F = field(q)
    zm1 = (F.neg(1), 1)
    failures = []

    # single pass: count per h, pick one canonical h and solution list per class
    counts = {}
    class_rep_h = {}
    solutions = {}
    for g in enumerate_gl(n, q, cap):
        h = ggtau(F, g)
        counts[h] = counts.get(h, 0) + 1
    for h in counts:
        C = classify_rcf(F, h)
        if C not in class_rep_h or h < class_rep_h[C]:
            class_rep_h[C] = h
    # second pass: collect every solution of the chosen representatives
    wanted = set(class_rep_h.values())
    for g in enumerate_gl(n, q, cap):
        h = ggtau(F, g)
        if h in wanted:
            solutions.setdefault(h, []).append(g)

    def _partition_at(C, coeffs):
        for p, lam in C.entries:
            if p.coeffs == coeffs:
                return lam
        return Partition()

    def qualifying(C):
        if not C.is_real():
            return False
        if n % 2 == 0:
            return _min_poly_coprime_z2_minus_1(C)
        if _partition_at(C, zm1) != Partition((1,)):
            return False
        # the rest of the minimal polynomial must avoid z + 1 as well
        return all(p.coeffs == zm1 or p.coeffs != (1, 1)
                   for p, _ in C.entries)

    gl_els = None
    checked = 0
    for C, h in class_rep_h.items():
        if not qualifying(C):
            continue
        checked += 1
        sols = solutions.get(h, [])
        if not sols:
            failures.append(("no-solutions", repr(C)))
            continue
        if gl_els is None:
            gl_els = list(enumerate_gl(n, q, cap))
        cent = [a for a in gl_els if mat_mul(F, a, h) == mat_mul(F, h, a)]
        g0 = sols[0]
        orbit = congruence_orbit(F, g0, gl_generators(n, q))
        o_g = gl_order(n, q) // len(orbit)
        expect = len(cent) // o_g
        if n % 2:
            expect *= mu2_order(q)
        if len(sols) != expect:
            failures.append(("count", repr(C), len(sols), expect))
            continue
        if len(cent) != centralizer_size(C, q):
            failures.append(("centralizer", repr(C), len(cent)))
        if n % 2 == 0:
            reachable = {mat_mul(F, mat_mul(F, a, g0), mat_transpose(a))
                         for a in cent}
            if reachable != set(sols):
                failures.append(("orbit-closure", repr(C)))
        if mat_transpose(g0) not in orbit or mat_inv(F, g0) not in orbit:
            failures.append(("self-congruence", repr(C)))
    return OrbitStructureReport(n=n, q=q, classes_checked=checked,
                                ok=not failures, failures=failures)


@dataclass
class SlSplitReport:
    n: int
    q: int
    gl_orbit_count: int
    sl_orbit_counts: dict  # determinant -> orbit count on that slice
    splits: list
    ok: bool
    failures: list = dc_field(default_factory=list)


def sl_orbit_split_report(n, q, cap=None):
    """Check the SL splitting rule orbit by orbit.

    A GL congruence orbit meets the slice {det = d} for d in one coset of the
    squares; the slice decomposes into one SL orbit when the stabilizer has an
    element of determinant -1 and into two otherwise. Odd n never splits.
    """
    F = field(q)
    minus_one = F.neg(1)
    gl_rep = brute_congruence_orbits("GL", n, q, cap)
    sl_gens = sl_generators(n, q)
    gl_els = list(enumerate_gl(n, q, cap))
    failures = []
    splits = []
    slice_counts = {}
    for g in gl_rep.representatives:
        orbit = congruence_orbit(F, g, gl_generators(n, q))
        d = mat_det(F, g)
        dets = {mat_det(F, x) for x in orbit}
        slice_part = [x for x in orbit if mat_det(F, x) == d]
        sl_orbit = congruence_orbit(F, g, sl_gens)
        stab = [a for a in gl_els
                if mat_mul(F, mat_mul(F, a, g), mat_transpose(a)) == g]
        has_det_minus_one = any(mat_det(F, a) == minus_one for a in stab)
        split = len(sl_orbit) != len(slice_part)
        splits.append(split)
        if split and 2 * len(sl_orbit) != len(slice_part):
            failures.append(("uneven-split", g))
        if split == has_det_minus_one:
            failures.append(("criterion", g, split, has_det_minus_one))
        if n % 2 and split:
            failures.append(("odd-n-split", g))
        for dd in dets:
            slice_counts[dd] = slice_counts.get(dd, 0) + (2 if split else 1)
    return SlSplitReport(
        n=n, q=q, gl_orbit_count=gl_rep.orbit_count,
        sl_orbit_counts=slice_counts, splits=splits,
        ok=not failures, failures=failures)


# ---------------------------------------------------------------------------
# the extension group as pairs (g, eps) with twisted multiplication

def ext_mul(F, x, y):
    g, e = x
    h, f = y
    return (mat_mul(F, g, _tau(F, h) if e else h), e ^ f)


def ext_inv(F, x):
    g, e = x
    gi = mat_inv(F, g)
    return (gi, 0) if e == 0 else (_tau(F, gi), 1)


def extension_class_count(n, q, cap=None):
    """Brute conjugacy class count of the index-2 extension."""
    F = field(q)
    els = [(g, e) for g in enumerate_gl(n, q, cap) for e in (0, 1)]
    pairs = [(c, ext_inv(F, c)) for c in els]
    seen = set()
    classes = 0
    for y in els:
        if y in seen:
            continue
        classes += 1
        for c, ci in pairs:
            z = ext_mul(F, ext_mul(F, c, y), ci)
            seen.add(z)
    return classes


def coset_class_count_brute(n, q, cap=None):
    """Conjugacy classes of the extension lying in the twisted coset."""
    F = field(q)
    els = [(g, 1) for g in enumerate_gl(n, q, cap)]
    all_pairs = [(c, ext_inv(F, c))
                 for g in enumerate_gl(n, q, cap) for c in ((g, 0), (g, 1))]
    seen = set()
    classes = 0
    for y in els:
        if y in seen:
            continue
        classes += 1
        for c, ci in all_pairs:
            z = ext_mul(F, ext_mul(F, c, y), ci)
            seen.add(z)
    return classes


# ---------------------------------------------------------------------------
# subgroup counting in abelian p-groups (independent Hall-polynomial oracle)

class AbelianPGroup:
    """Direct sum of Z/p^lambda_i with tabulated addition."""

    def __init__(self, lam, p):
        self.lam = lam
        self.p = p
        self.orders = tuple(p ** part for part in lam.parts)
        self.size = 1
        for o in self.orders:
            self.size *= o
        self.elements = list(range(self.size))
        self._add = None
        self._mulp = None

    def decode(self, x):
        out = []
        for o in self.orders:
            out.append(x % o)
            x //= o
        return tuple(out)

    def encode(self, tup):
        out = 0
        for v, o in zip(reversed(tup), reversed(self.orders)):
            out = out * o + v
        return out

    @property
    def add(self):
        if self._add is None:
            tups = [self.decode(x) for x in range(self.size)]
            self._add = [
                [self.encode(tuple((a + b) % o for a, b, o in
                                   zip(tups[x], tups[y], self.orders)))
                 for y in range(self.size)]
                for x in range(self.size)
            ]
        return self._add

    @property
    def mulp(self):
        if self._mulp is None:
            self._mulp = [self.encode(tuple((self.p * a) % o for a, o in
                                            zip(self.decode(x), self.orders)))
                          for x in range(self.size)]
        return self._mulp


def _subgroup_type(group, members):
    """Partition type from the p-power kernel profile.

    s_k = log_p |ker(p^k)| determines the dual: lambda'_k = s_k - s_(k-1).
    """
    p = group.p
    mulp = group.mulp
    members = tuple(members)
    logs = []
    k = 0
    while not logs or p ** logs[-1] < len(members):
        k += 1
        count = sum(1 for x in members if _iter_mulp(mulp, x, k) == 0)
        e = 0
        while count > 1:
            count //= p
            e += 1
        logs.append(e)
    dual = []
    prev = 0
    for s in logs:
        dual.append(s - prev)
        prev = s
    return Partition(tuple(x for x in dual if x)).dual()


def _iter_mulp(mulp, x, k):
    for _ in range(k):
        x = mulp[x]
    return x


from functools import lru_cache


@lru_cache(maxsize=None)
def subgroup_type_census(lam_parts, p):
    """All subgroups of the abelian p-group of type lam, tallied by
    (subgroup type, quotient type)."""
    group = AbelianPGroup(Partition(lam_parts), p)
    census = {}
    for H in _all_subgroups(group):
        key = (_subgroup_type(group, H), _quotient_type(group, H))
        census[key] = census.get(key, 0) + 1
    return census


def hall_subgroup_count(lam, mu, nu, p):
    """Number of subgroups of type mu with quotient type nu in an abelian
    p-group of type lam, by explicit subgroup enumeration."""
    if mu.size + nu.size != lam.size:
        return 0
    return subgroup_type_census(lam.parts, p).get((mu, nu), 0)


def _join(add, H, g):
    """Subgroup generated by the subgroup H and one extra element."""
    new = set(H)
    coset = H
    while True:
        coset = {add[x][g] for x in coset}
        if next(iter(coset)) in new:  # cosets are contained or disjoint
            return frozenset(new)
        new |= coset


def _all_subgroups(group):
    add = group.add
    size = group.size
    trivial = frozenset((0,))
    seen = {trivial}
    queue = deque((trivial,))
    while queue:
        H = queue.popleft()
        tried = set(H)
        for g in range(size):
            if g in tried:
                continue
            tried.update(add[g][h] for h in H)
            newH = _join(add, H, g)
            if newH not in seen:
                seen.add(newH)
                queue.append(newH)
    return seen


def _quotient_type(group, H):
    """Type of G/H via kernel profiles of multiplication by p^k."""
    p = group.p
    mulp = group.mulp
    Hset = set(H)
    quotient_order = group.size // len(H)
    logs = []
    k = 0
    covered = 1
    while covered < quotient_order:
        k += 1
        cnt = sum(1 for x in range(group.size)
                  if _iter_mulp(mulp, x, k) in Hset) // len(H)
        e = 0
        c = cnt
        while c > 1:
            c //= p
            e += 1
        logs.append(e)
        covered = cnt
    dual = []
    prev = 0
    for s in logs:
        dual.append(s - prev)
        prev = s
    return Partition(sorted((x for x in dual if x), reverse=True)).dual()


def change_of_form_count(n, q, sample_a, cap=None):
    """Conjugating the standard alternating form by a and recounting the
    stabilizer order (must be |Sp(n, q)| for any congruent form)."""
    F = field(q)
    J = alternating_form_matrix(n, q)
    J2 = mat_mul(F, mat_mul(F, sample_a, J), mat_transpose(sample_a))
    count = 0
    for g in enumerate_gl(n, q, cap):
        if mat_mul(F, mat_mul(F, mat_transpose(g), J2), g) == J2:
            count += 1
    return count
