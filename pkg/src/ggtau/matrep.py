"""Matrices over F_q, enumeration of GL/SL/Sp, rational canonical form labels,
centralizer orders, and enumeration of class data.

Matrices are tuples of row tuples of field elements; all arithmetic goes
through the field tables. Enumeration caps protect against accidentally
walking a group with more than ~3e7 elements.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

from .ffpoly import (MonicPoly, conjugate_poly, factor_monic, field,
                     format_poly, irreducibles_of_degree, parse_poly)
from .partition import Partition, enumerate_partitions, parse_partition
from .qseries import q_pochhammer

DEFAULT_GROUP_CAP = 30_000_000
CAP_ENV_VAR = "GGTAU_GROUP_CAP"


def group_cap():
    return int(os.environ.get(CAP_ENV_VAR, DEFAULT_GROUP_CAP))


# ---------------------------------------------------------------------------
# matrix arithmetic

def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F, A, B):
    n = len(A)
    mul = F.mul_table
    add = F.add_table
    Bcols = tuple(zip(*B))
    out = []
    for row in A:
        new = []
        for col in Bcols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = add[acc][mul[a][b]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_transpose(A):
    return tuple(zip(*A))


def mat_add(F, A, B):
    add = F.add_table
    return tuple(tuple(add[a][b] for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


def mat_neg(F, A):
    neg = F.neg_table
    return tuple(tuple(neg[a] for a in row) for row in A)


def mat_scale(F, A, c):
    mul = F.mul_table
    return tuple(tuple(mul[c][a] for a in row) for row in A)


def mat_inv(F, A):
    """Gauss-Jordan inverse; None if singular."""
    n = len(A)
    mul, add, neg, inv = F.mul_table, F.add_table, F.neg_table, F.inv_table
    work = [list(row) + [1 if i == j else 0 for j in range(n)]
            for i, row in enumerate(A)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        pv = inv[work[col][col]]
        if pv != 1:
            work[col] = [mul[pv][x] for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = neg[work[r][col]]
                rowc = work[col]
                work[r] = [add[x][mul[c][y]] for x, y in zip(work[r], rowc)]
    return tuple(tuple(row[n:]) for row in work)


def mat_rank(F, A):
    n = len(A)
    if n == 0:
        return 0
    mul, add, neg, inv = F.mul_table, F.add_table, F.neg_table, F.inv_table
    work = [list(row) for row in A]
    rank = 0
    for col in range(len(A[0])):
        pivot = None
        for r in range(rank, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = inv[work[rank][col]]
        if pv != 1:
            work[rank] = [mul[pv][x] for x in work[rank]]
        for r in range(n):
            if r != rank and work[r][col]:
                c = neg[work[r][col]]
                rowc = work[rank]
                work[r] = [add[x][mul[c][y]] for x, y in zip(work[r], rowc)]
        rank += 1
        if rank == n:
            break
    return rank


def mat_det(F, A):
    n = len(A)
    mul, add, neg, inv = F.mul_table, F.add_table, F.neg_table, F.inv_table
    work = [list(row) for row in A]
    det = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = neg[det]
        det = mul[det][work[col][col]]
        pv = inv[work[col][col]]
        for r in range(col + 1, n):
            if work[r][col]:
                c = neg[mul[pv][work[r][col]]]
                rowc = work[col]
                work[r] = [add[x][mul[c][y]] for x, y in zip(work[r], rowc)]
    return det


def mat_poly_eval(F, poly, A):
    """Evaluate a monic polynomial at a matrix (Horner)."""
    n = len(A)
    acc = None
    for c in reversed(poly.coeffs):
        if acc is None:
            acc = mat_scale(F, mat_identity(n), c)
        else:
            acc = mat_mul(F, acc, A)
            if c:
                acc = mat_add(F, acc, mat_scale(F, mat_identity(n), c))
    return acc


def mat_tau(F, A):
    """Inverse transpose."""
    inv = mat_inv(F, A)
    if inv is None:
        raise ValueError("matrix is singular")
    return mat_transpose(inv)


def ggtau(F, g):
    """g * g^tau = g * (g')^{-1}."""
    return mat_mul(F, g, mat_tau(F, g))


# ---------------------------------------------------------------------------
# group orders and enumeration

def gl_order(n, q):
    return _prod(q ** n - q ** i for i in range(n))


def sl_order(n, q):
    return gl_order(n, q) // (q - 1)


def sp_order(n, q):
    if n % 2:
        raise ValueError("symplectic groups need even dimension")
    m = n // 2
    out = q ** (m * m)
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out


def u_order(n, q):
    """|U(n, q)| = (-1)^n |GL(n, -q)| evaluated as a polynomial in q."""
    out = 1
    mq = -q
    for i in range(n):
        out *= mq ** n - mq ** i
    return (-1) ** n * out


def group_order(kind, n, q):
    if kind == "GL":
        return gl_order(n, q)
    if kind == "SL":
        return sl_order(n, q)
    if kind == "Sp":
        return sp_order(n, q)
    raise ValueError(f"unknown group kind {kind!r}")


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


def _int_to_vec(idx, n, q):
    out = []
    for _ in range(n):
        out.append(idx % q)
        idx //= q
    return tuple(out)


def _span_set(F, rows, n):
    """All linear combinations of the given rows, as a set of vectors."""
    q = F.q
    add, mul = F.add_table, F.mul_table
    span = {(0,) * n}
    for row in rows:
        new = set(span)
        scaled = [tuple(mul[c][x] for x in row) for c in range(1, q)]
        for v in span:
            for s in scaled:
                new.add(tuple(add[a][b] for a, b in zip(v, s)))
        span = new
    return span


def enumerate_gl(n, q, cap=None):
    """Yield GL(n, q) once each, rows built left to right avoiding spans."""
    cap = cap or group_cap()
    if gl_order(n, q) > cap:
        raise ValueError(f"|GL({n},{q})| = {gl_order(n, q)} exceeds cap {cap}")
    F = field(q)
    vectors = [_int_to_vec(i, n, q) for i in range(q ** n)]

    def build(rows, span):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in vectors:
            if v in span:
                continue
            rows.append(v)
            yield from build(rows, _span_set(F, rows, n))
            rows.pop()

    yield from build([], {(0,) * n})


def gl_element_at(n, q, index):
    """Random access into the enumeration order of enumerate_gl."""
    F = field(q)
    order = gl_order(n, q)
    if not 0 <= index < order:
        raise IndexError("index out of range")
    vectors = [_int_to_vec(i, n, q) for i in range(q ** n)]
    rows = []
    span = {(0,) * n}
    remaining = order
    for k in range(n):
        choices = q ** n - q ** k
        remaining //= choices
        pick, index = divmod(index, remaining)
        count = 0
        for v in vectors:
            if v in span:
                continue
            if count == pick:
                rows.append(v)
                span = _span_set(F, rows, n)
                break
            count += 1
    return tuple(rows)


def standard_alternating_form(n):
    """J = [[0, I], [-I, 0]] in block form (n even)."""
    if n % 2:
        raise ValueError("alternating form needs even dimension")
    m = n // 2

    def entry(F, i, j):
        if j == i + m:
            return 1
        if i == j + m:
            return F.neg(1)
        return 0

    def build(q):
        F = field(q)
        return tuple(tuple(entry(F, i, j) for j in range(n)) for i in range(n))

    return build


def alternating_form_matrix(n, q):
    return standard_alternating_form(n)(q)


def is_symplectic(F, g, J):
    return mat_mul(F, mat_mul(F, mat_transpose(g), J), g) == J


def enumerate_group(kind, n, q, cap=None):
    """Yield each element of GL/SL/Sp(n, q) exactly once."""
    cap = cap or group_cap()
    if kind == "GL":
        yield from enumerate_gl(n, q, cap)
        return
    if kind == "SL":
        F = field(q)
        for g in enumerate_gl(n, q, cap):
            if mat_det(F, g) == 1:
                yield g
        return
    if kind == "Sp":
        if n % 2:
            raise ValueError("Sp needs even dimension")
        F = field(q)
        J = alternating_form_matrix(n, q)
        if gl_order(n, q) > cap:
            raise ValueError("underlying GL enumeration exceeds cap")
        for g in enumerate_gl(n, q, cap):
            if is_symplectic(F, g, J):
                yield g
        return
    raise ValueError(f"unknown group kind {kind!r}")


def gl_generators(n, q):
    """Generating set for GL(n, q): scaling, cycle, transposition, transvection."""
    F = field(q)
    gens = []
    if q > 2:
        alpha = F.primitive_element()
        gens.append(tuple(tuple(alpha if i == j == 0 else (1 if i == j else 0)
                                for j in range(n)) for i in range(n)))
    if n >= 2:
        cyc = tuple(tuple(1 if j == (i + 1) % n else 0 for j in range(n))
                    for i in range(n))
        gens.append(cyc)
        swap = list(mat_identity(n))
        swap[0] = tuple(1 if j == 1 else 0 for j in range(n))
        swap[1] = tuple(1 if j == 0 else 0 for j in range(n))
        gens.append(tuple(swap))
        trans = list(mat_identity(n))
        trans[0] = tuple(1 if j in (0, 1) else 0 for j in range(n))
        gens.append(tuple(trans))
    if not gens:
        gens.append(mat_identity(n))
    return gens


def sl_generators(n, q):
    """Transvections I + a E_ij over a spanning set of a values."""
    F = field(q)
    if n == 1:
        return [mat_identity(1)]
    alpha = F.primitive_element()
    avals = sorted({F.pow(alpha, e) for e in range(F.k)}) if q > 2 else [1]
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for a in avals:
                g = [list(r) for r in mat_identity(n)]
                g[i][j] = a
                gens.append(tuple(tuple(r) for r in g))
    return gens


# ---------------------------------------------------------------------------
# class data

class ClassData:
    """Rational canonical form label: {irreducible poly != z : partition}."""

    __slots__ = ("n", "q", "entries")

    def __init__(self, n, q, entries):
        items = []
        total = 0
        for poly, lam in (entries.items() if isinstance(entries, dict) else entries):
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            if lam.size == 0:
                continue
            if poly.coeffs == (0, 1):
                raise ValueError("the polynomial z cannot label an invertible class")
            if poly.constant_term() == 0:
                raise ValueError("labels need nonzero constant term")
            items.append((poly, lam))
            total += poly.degree * lam.size
        if total != n:
            raise ValueError(f"degrees x sizes sum to {total}, expected {n}")
        items.sort(key=lambda kv: (kv[0].degree, kv[0].coeffs))
        self.n = n
        self.q = q
        self.entries = tuple(items)

    def partition_for(self, poly):
        for p, lam in self.entries:
            if p == poly:
                return lam
        return Partition()

    def polys(self):
        return tuple(p for p, _ in self.entries)

    def is_real(self):
        for p, lam in self.entries:
            if self.partition_for(conjugate_poly(p)) != lam:
                return False
        return True

    def is_regular_semisimple(self):
        return all(lam.size <= 1 for _, lam in self.entries)

    def without(self, poly):
        """Copy with the entry at poly removed (size shrinks accordingly)."""
        kept = [(p, lam) for p, lam in self.entries if p != poly]
        removed = self.n - sum(p.degree * lam.size for p, lam in kept)
        return ClassData(self.n - removed, self.q, kept)

    def __eq__(self, other):
        return (isinstance(other, ClassData) and other.n == self.n
                and other.q == self.q and other.entries == self.entries)

    def __hash__(self):
        return hash((self.n, self.q,
                     tuple((p.coeffs, lam.parts) for p, lam in self.entries)))

    def __repr__(self):
        return format_class_data(self)


def format_class_data(C):
    bits = [f"n={C.n}"]
    for poly, lam in C.entries:
        bits.append(f"{format_poly(poly)}:{lam!r}")
    return "; ".join(bits)


def parse_class_data(text):
    chunks = [c.strip() for c in text.split(";")]
    if not chunks or not chunks[0].startswith("n="):
        raise ValueError(f"bad class data literal {text!r}")
    n = int(chunks[0][2:])
    entries = []
    q = None
    for chunk in chunks[1:]:
        if not chunk:
            continue
        head, _, part = chunk.rpartition(":")
        poly = parse_poly(head)
        lam = parse_partition(part)
        entries.append((poly, lam))
        q = poly.field.q
    if q is None:
        raise ValueError("class data needs at least one entry")
    return ClassData(n, q, entries)


def classify_rcf(F, A):
    """Class data of an invertible matrix from nullity chains.

    lambda'_k(phi) = (nullity phi(A)^k - nullity phi(A)^(k-1)) / deg(phi).
    """
    n = len(A)
    if mat_det(F, A) == 0:
        raise ValueError("matrix is singular")
    q = F.q
    entries = []
    remaining = n
    for d in range(1, n + 1):
        if remaining == 0:
            break
        if d > remaining:
            break
        for phi in irreducibles_of_degree(q, d):
            M = mat_poly_eval(F, phi, A)
            nullity = n - mat_rank(F, M)
            if nullity == 0:
                continue
            dual_parts = []
            prev = 0
            power = M
            while True:
                cur = n - mat_rank(F, power)
                step = (cur - prev) // d
                if step == 0:
                    break
                dual_parts.append(step)
                prev = cur
                power = mat_mul(F, power, M)
            lam = Partition(dual_parts).dual()
            entries.append((phi, lam))
            remaining -= d * lam.size
            if remaining == 0:
                break
    return ClassData(n, q, entries)


def companion_matrix(poly):
    d = poly.degree
    F = poly.field
    rows = []
    for i in range(d):
        row = [0] * d
        if i + 1 < d:
            row[i + 1] = 1
        rows.append(row)
    rows[d - 1] = [F.neg(c) for c in poly.coeffs[:d]]
    return tuple(tuple(r) for r in rows)


def representative_matrix(C):
    """Block-diagonal companion representative of a class."""
    F = field(C.q)
    blocks = []
    for poly, lam in C.entries:
        for part in lam.parts:
            blocks.append(companion_matrix(poly ** part))
    n = C.n
    out = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[offset + i][offset + j] = b[i][j]
        offset += k
    return tuple(tuple(r) for r in out)


def centralizer_size(C, q=None):
    """GL centralizer order: per poly, Q^(2n(lam)+|lam|) prod_i (1/Q)_{m_i},
    with Q = q^deg."""
    q = q or C.q
    if q != C.q:
        raise ValueError("field size mismatch")
    out = Fraction(1)
    for poly, lam in C.entries:
        Q = q ** poly.degree
        out *= Fraction(Q) ** (2 * lam.n_stat() + lam.size)
        for mult in lam.mults().values():
            out *= q_pochhammer(mult, Q)
    assert out.denominator == 1 and out > 0
    return int(out)


def class_size(C, q=None):
    q = q or C.q
    return gl_order(C.n, q) // centralizer_size(C, q)


def enumerate_class_data(n, q, predicate="all"):
    """All class data with sum deg * |lambda| = n, optionally filtered."""
    if predicate not in ("all", "real", "regular-semisimple"):
        raise ValueError(f"unknown predicate {predicate!r}")
    polys = []
    for d in range(1, n + 1):
        polys.extend(irreducibles_of_degree(q, d))

    out = []

    def build(idx, remaining, entries):
        if remaining == 0:
            C = ClassData(n, q, list(entries))
            out.append(C)
            return
        if idx == len(polys):
            return
        poly = polys[idx]
        d = poly.degree
        if d > remaining:
            # polynomials are degree-sorted, nothing later fits either
            return
        build(idx + 1, remaining, entries)
        max_size = remaining // d
        for s in range(1, max_size + 1):
            for lam in enumerate_partitions(s):
                entries.append((poly, lam))
                build(idx + 1, remaining - d * s, entries)
                entries.pop()

    build(0, n, [])
    if predicate == "real":
        out = [C for C in out if C.is_real()]
    elif predicate == "regular-semisimple":
        out = [C for C in out if C.is_regular_semisimple()]
    return out


@lru_cache(maxsize=None)
def _class_data_cached(n, q):
    return tuple(enumerate_class_data(n, q))
