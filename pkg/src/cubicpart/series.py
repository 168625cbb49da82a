"""Exact integer tables for the ordinary and cubic partition functions.

Everything here is big-integer arithmetic; no floating point. These tables
are the ground truth that the analytic evaluation engine is checked against.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence


@dataclass(frozen=True)
class PartitionTable:
    """Dense table of partition counts, indexed 0..max_index."""
    kind: str                      # "ordinary" | "even_parts" | "cubic"
    values: tuple

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]


@dataclass(frozen=True)
class CongruenceReport:
    checked_count: int
    first_failure: Optional[int]

    @property
    def ok(self) -> bool:
        return self.first_failure is None


def _pentagonal_pairs(n: int):
    """Generalized pentagonal numbers g <= n with the Euler sign, largest-j last."""
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            return
        sign = -1 if j % 2 == 0 else 1
        yield g1, sign
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            yield g2, sign
        j += 1


def p_table(N: int) -> PartitionTable:
    """p(0..N) by the Euler pentagonal-number recurrence."""
    if N < 0:
        raise ValueError("N must be non-negative")
    p = [0] * (N + 1)
    p[0] = 1
    for n in range(1, N + 1):
        acc = 0
        for g, sign in _pentagonal_pairs(n):
            acc += sign * p[n - g]
        p[n] = acc
    return PartitionTable("ordinary", tuple(p))


def even_parts_table(N: int, ordinary: Optional[PartitionTable] = None) -> PartitionTable:
    """Partitions of n into even parts: p(n/2) for even n, else 0."""
    if ordinary is None or ordinary.max_index < N // 2:
        ordinary = p_table(N // 2)
    vals = [0] * (N + 1)
    for n in range(0, N + 1, 2):
        vals[n] = ordinary[n // 2]
    return PartitionTable("even_parts", tuple(vals))


def cubic_table(N: int, ordinary: Optional[PartitionTable] = None) -> PartitionTable:
    """a(0..N) by exact convolution a(n) = sum_{2j<=n} p(j) p(n-2j)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if ordinary is None or ordinary.max_index < N:
        ordinary = p_table(N)
    p = ordinary.values
    vals = [0] * (N + 1)
    for n in range(N + 1):
        acc = 0
        for j in range(0, n // 2 + 1):
            acc += p[j] * p[n - 2 * j]
        vals[n] = acc
    return PartitionTable("cubic", tuple(vals))


def cubic_value(n: int, ordinary: Optional[PartitionTable] = None) -> int:
    """Single a(n) without building the whole cubic table (cheap for large n)."""
    if ordinary is None or ordinary.max_index < n:
        ordinary = p_table(n)
    p = ordinary.values
    return sum(p[j] * p[n - 2 * j] for j in range(0, n // 2 + 1))


def check_congruence(table: PartitionTable, step: int, offset: int,
                     modulus: int) -> CongruenceReport:
    """Scan table[offset + step*i] for divisibility by modulus."""
    if not (0 <= offset < step):
        raise ValueError("offset must satisfy 0 <= offset < step")
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    checked = 0
    for idx in range(offset, table.max_index + 1, step):
        if table[idx] % modulus != 0:
            return CongruenceReport(checked, idx)
        checked += 1
    return CongruenceReport(checked, None)


# --- slower cross-check oracles, used by the test suite ---------------------

def euler_product_coeffs(N: int, multiplier: int = 1) -> list:
    """Coefficients of prod_{n>=1} (1 - q^(multiplier*n)) up to degree N (sparse via pentagonal numbers)."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    j = 1
    while True:
        sign = -1 if j % 2 else 1  # (-1)^j
        done = True
        for g in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            e = multiplier * g
            if e <= N:
                coeffs[e] += sign
                done = False
        if done:
            return coeffs
        j += 1


def series_reciprocal_cubic(N: int) -> list:
    """a(0..N) by inverting the truncated product (q;q)(q^2;q^2) as a power series.

    Independent of the convolution route; O(N^2), test-scale only.
    """
    e1 = euler_product_coeffs(N, 1)
    e2 = euler_product_coeffs(N, 2)
    # dense product of the two sparse Euler series
    prod = [0] * (N + 1)
    for i, ci in enumerate(e1):
        if ci:
            for j in range(0, N + 1 - i):
                if e2[j]:
                    prod[i + j] += ci * e2[j]
    # power series reciprocal: a * prod = 1
    a = [0] * (N + 1)
    a[0] = 1
    for n in range(1, N + 1):
        acc = 0
        for j in range(1, n + 1):
            if prod[j]:
                acc += prod[j] * a[n - j]
        a[n] = -acc
    return a


def partitions_brute_force(n: int, max_part: Optional[int] = None) -> int:
    """Count partitions of n by direct recursion (tiny n only)."""
    if n == 0:
        return 1
    if max_part is None:
        max_part = n
    total = 0
    for part in range(min(n, max_part), 0, -1):
        total += partitions_brute_force(n - part, part)
    return total
