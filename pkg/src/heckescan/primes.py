"""Prime sieve, Chebyshev theta prefix sums, primorial rows, and the
smallest prime not dividing N.

theta values are extended-precision reals (default 96 bits, never below
80); they come from summing logs of the exact sieved primes, so the table
is a faithful sample of the step function, not an analytic approximation.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass

import mpmath

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = int

DEFAULT_THETA_BITS = 96


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit plus running theta sums: theta_prefix[i] is
    sum(log p) over the first i+1 primes, at prec_bits of precision.
    Immutable; share freely across threads."""

    limit: int
    primes: tuple[int, ...]
    theta_prefix: tuple
    prec_bits: int


@dataclass(frozen=True)
class PrimorialRow:
    """k-th primorial summary: the k-th prime, the gap to the next one,
    and log(p_1 * ... * p_k) = theta(p_k)."""

    k: int
    p_k: int
    gap: int
    log_primorial: object


def _sieve_flags(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    i = 2
    while i * i <= limit:
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
        i += 1
    return flags


def sieve(limit, prec_bits=DEFAULT_THETA_BITS):
    """Sieve all primes <= limit and accumulate the theta prefix sums."""
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    if prec_bits < 80:
        raise ValueError("theta precision below 80 bits is not supported")
    flags = _sieve_flags(limit)
    ps = [i for i in range(2, limit + 1) if flags[i]]
    prefix = []
    with mpmath.workprec(prec_bits):
        total = mpmath.mpf(0)
        for p in ps:
            total += mpmath.log(p)
            prefix.append(total)
    return PrimeTable(limit, tuple(ps), tuple(prefix), prec_bits)


def theta(x, table):
    """Chebyshev theta(x) = sum of log p over primes p <= x, read off the
    table (right-continuous step function)."""
    if x > table.limit:
        raise ValueError(f"theta({x}) beyond table limit {table.limit}")
    idx = bisect.bisect_right(table.primes, x)
    if idx == 0:
        return mpmath.mpf(0)
    return table.theta_prefix[idx - 1]


def primorial_row(k, table):
    """(k, p_k, p_(k+1) - p_k, theta(p_k)); the table must reach p_(k+1)."""
    if k < 1:
        raise ValueError("primorial index must be positive")
    if k >= len(table.primes):
        raise ValueError(f"table holds {len(table.primes)} primes; need p_{k + 1}")
    p_k = table.primes[k - 1]
    return PrimorialRow(k, p_k, table.primes[k] - p_k, table.theta_prefix[k - 1])


# --- smallest prime not dividing N ------------------------------------
#
# Trial division in prime order, batched: primes are grouped into segments
# of doubling size, each with a cached product tree.  One remainder per
# segment decides whether every prime in it divides N (segment products
# are squarefree, so product | N iff each prime | N); descending the tree
# of the first failing segment finds the leftmost non-divisor in O(log)
# remainders.  For typical N this costs one or two small mods; for
# primorial N it stays quasi-linear in the answer's index.

class _SegmentTree:
    __slots__ = ("primes", "levels")

    def __init__(self, ps):
        self.primes = ps
        level = [_mpz(p) for p in ps]
        levels = [level]
        while len(level) > 1:
            level = [
                level[i] * level[i + 1] if i + 1 < len(level) else level[i]
                for i in range(0, len(level), 2)
            ]
            levels.append(level)
        self.levels = levels

    @property
    def product(self):
        return self.levels[-1][0]

    def first_nondivisor(self, n):
        # Caller guarantees n % product != 0.  A node promoted without a
        # sibling is its own left child, so the leftward test never sends
        # us to a missing right child.
        idx = 0
        for lvl in range(len(self.levels) - 2, -1, -1):
            left = self.levels[lvl][2 * idx]
            idx = 2 * idx if n % left else 2 * idx + 1
        return self.primes[idx]


_seg_lock = threading.Lock()
_segments: list[_SegmentTree] = []
_seg_prime_pool: list[int] = []
_seg_pool_limit = 0


def _segment(i):
    if i < len(_segments):
        return _segments[i]
    with _seg_lock:
        global _seg_pool_limit
        while i >= len(_segments):
            size = 1 << len(_segments)
            start = size - 1
            while len(_seg_prime_pool) < start + size:
                _seg_pool_limit = max(1024, _seg_pool_limit * 2)
                flags = _sieve_flags(_seg_pool_limit)
                _seg_prime_pool[:] = [p for p in range(2, _seg_pool_limit + 1) if flags[p]]
            _segments.append(_SegmentTree(_seg_prime_pool[start : start + size]))
    return _segments[i]


def smallest_nondivisor_prime(n):
    """Least prime p with p not dividing n (n >= 1)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    nz = _mpz(n)
    i = 0
    while True:
        seg = _segment(i)
        if nz % seg.product:
            return seg.first_nondivisor(nz)
        i += 1
