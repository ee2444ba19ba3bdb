"""Partitions and their diagram statistics.

Conventions: parts weakly decreasing, dual lambda'_i = m_i + m_{i+1} + ...,
n(lambda) = sum_i binom(lambda'_i, 2), o(lambda) = number of odd parts,
arm/leg counted east/south of a box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Laurent


class Partition:
    """Integer partition as an explicit tuple of parts."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def __repr__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    @property
    def size(self):
        return sum(self.parts)

    @property
    def length(self):
        return len(self.parts)

    def part(self, i):
        """1-indexed part, 0 beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def mult(self, i):
        """Number of parts equal to i."""
        return sum(1 for p in self.parts if p == i)

    def mults(self):
        out = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def dual(self):
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= j)
                               for j in range(1, self.parts[0] + 1)))

    def n_stat(self):
        """sum_i binom(lambda'_i, 2) = sum_i (i-1) * lambda_i."""
        return sum((i) * p for i, p in enumerate(self.parts))

    def odd_parts(self):
        return sum(1 for p in self.parts if p % 2)

    def contains(self, other):
        return all(self.part(i) >= other.part(i)
                   for i in range(1, len(other.parts) + 1))

    def arm(self, i, j):
        """Boxes east of box (i, j), 1-indexed."""
        return self.parts[i - 1] - j

    def leg(self, i, j):
        """Boxes south of box (i, j), 1-indexed."""
        return sum(1 for p in self.parts[i:] if p >= j)

    def even_parts_even_mult(self):
        return all(m % 2 == 0 for p, m in self.mults().items() if p % 2 == 0)

    def odd_parts_even_mult(self):
        return all(m % 2 == 0 for p, m in self.mults().items() if p % 2 == 1)

    def all_parts_even(self):
        return all(p % 2 == 0 for p in self.parts)


@dataclass
class PartitionStats:
    dual: Partition
    mults: dict
    n: int
    odd: int
    length: int
    size: int


def partition_stats(lam):
    return PartitionStats(
        dual=lam.dual(),
        mults=lam.mults(),
        n=lam.n_stat(),
        odd=lam.odd_parts(),
        length=lam.length,
        size=lam.size,
    )


def c_poly(lam):
    """Product of (1 - t^(leg+1)) over boxes with arm 0 and even leg.

    The arm-0 boxes are the last box of each row; row i (1-indexed) has its
    last box in column lambda_i with leg = #{i' > i : lambda_i' >= lambda_i}.
    """
    out = Laurent.const("t", Fraction(1))
    parts = lam.parts
    for i in range(1, len(parts) + 1):
        legs = sum(1 for p in parts[i:] if p >= parts[i - 1])
        if legs % 2 == 0:
            out = out * Laurent("t", {0: 1, legs + 1: -1})
    return out


CONSTRAINTS = ("all", "even-parts-even-mult", "odd-parts-even-mult", "all-parts-even")


def _admits(lam, constraint):
    if constraint == "all":
        return True
    if constraint == "even-parts-even-mult":
        return lam.even_parts_even_mult()
    if constraint == "odd-parts-even-mult":
        return lam.odd_parts_even_mult()
    if constraint == "all-parts-even":
        return lam.all_parts_even()
    raise ValueError(f"unknown constraint {constraint!r}")


@lru_cache(maxsize=None)
def _partitions_tuple(n):
    """All partitions of n in reverse lexicographic order (largest first)."""
    if n == 0:
        return ((),)
    out = []

    def build(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            prefix.append(p)
            build(remaining - p, p, prefix)
            prefix.pop()

    build(n, n, [])
    return tuple(out)


def enumerate_partitions(n, constraint="all"):
    """Partitions of n satisfying the constraint, reverse lexicographic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for parts in _partitions_tuple(n):
        lam = Partition(parts)
        if _admits(lam, constraint):
            yield lam


def partitions_up_to(n, constraint="all"):
    """Partitions of every size 0..n with the constraint, ordered by size."""
    for m in range(n + 1):
        yield from enumerate_partitions(m, constraint)


def vertical_strip_covers(mu, r):
    """All lambda containing mu with lambda - mu a vertical strip of size r.

    A vertical strip puts at most one box per row: lambda_i - mu_i in {0, 1}.
    """
    if r < 0:
        raise ValueError("strip size must be nonnegative")
    n_rows = len(mu.parts) + r
    out = []

    def build(i, remaining, prefix):
        if remaining == 0:
            rest = tuple(mu.part(j) for j in range(i, len(mu.parts) + 1))
            out.append(Partition(tuple(prefix) + rest))
            return
        if i > n_rows:
            return
        base = mu.part(i)
        prev = prefix[-1] if prefix else None
        if prev is None or base + 1 <= prev:
            prefix.append(base + 1)
            build(i + 1, remaining - 1, prefix)
            prefix.pop()
        if base > 0:  # base == 0 with no box added ends the shape
            prefix.append(base)
            build(i + 1, remaining, prefix)
            prefix.pop()

    build(1, r, [])
    return out


def horizontal_strip_subs(lam):
    """All mu contained in lambda with lambda - mu a horizontal strip.

    Horizontal strip: at most one box per column, i.e. the interleaving
    lambda_i >= mu_i >= lambda_{i+1}.
    """
    parts = lam.parts
    out = []

    def build(i, prefix):
        if i == len(parts):
            out.append(Partition(tuple(p for p in prefix if p > 0)))
            return
        lo = parts[i + 1] if i + 1 < len(parts) else 0
        hi = min(parts[i], prefix[-1]) if prefix else parts[i]
        for v in range(hi, lo - 1, -1):
            prefix.append(v)
            build(i + 1, prefix)
            prefix.pop()

    build(0, [])
    return out


def dominance_leq(mu, lam):
    """mu <= lambda in dominance order (same size assumed)."""
    s_mu = s_lam = 0
    for i in range(1, max(len(mu.parts), len(lam.parts)) + 1):
        s_mu += mu.part(i)
        s_lam += lam.part(i)
        if s_mu > s_lam:
            return False
    return True


def parse_partition(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad partition literal {text!r}")
    body = text[1:-1].strip()
    if not body:
        return Partition()
    return Partition(tuple(int(x) for x in body.split(",")))


def format_partition(lam):
    return repr(lam)
