"""Exact-arithmetic statistics of g * g^tau in GL(n, q).

Closed forms for the conjugacy class of g * g^tau (tau the inverse-transpose
involution), the symmetric-function and q-series identities behind them,
class counts of the extended group, the associated partition measures, and
brute-force oracles that cross-check every closed form on small groups.
"""

__version__ = "0.1.0"
