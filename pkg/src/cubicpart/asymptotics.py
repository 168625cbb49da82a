"""Leading-order growth of the cubic counting function and the log-expansion
residual scan.

All reference logarithms come from the exact integer tables (big integer ->
high-precision log), never from the analytic evaluation engine, so these
checks are independent of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from mpmath import mp, mpf, workprec

from .series import PartitionTable, cubic_value, p_table

#: coefficient of the 1/sqrt(n) correction in the log-expansion, ~0.7931
C1 = 15 / (8 * math.pi) + math.pi / 16


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    exact_log: object          # mpf, log a(n) from the integer oracle
    predicted: object          # mpf, log_expansion(n, expansion_order)
    residual: object           # mpf, exact_log - predicted
    expansion_order: int

    @property
    def scaled_residual(self):
        """n * residual; stabilizes toward the first unmodelled coefficient."""
        return self.n * self.residual


def _bits_for(n: int) -> int:
    """Enough bits for e^{pi sqrt(n)}-sized quantities; never below the
    caller's ambient precision."""
    return max(128, mp.prec + 16,
               int(math.pi * math.sqrt(n) / math.log(2)) + 64)


def leading_asymptotic(n: int):
    """e^{pi sqrt(n - 1/8)} / (8 (n - 1/8)^{5/4})."""
    if n < 1:
        raise ValueError("n must be positive")
    with workprec(_bits_for(n)):
        x = mpf(n) - mpf(1) / 8
        return mp.exp(mp.pi * mp.sqrt(x)) / (8 * x ** mpf("1.25"))


def log_expansion(n: int, order: int = 1):
    """pi sqrt(n) - (5/4) log n - log 8, minus (15/(8 pi) + pi/16)/sqrt(n)
    at order 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    with workprec(_bits_for(n)):
        r = mp.sqrt(mpf(n))
        val = mp.pi * r - mpf(5) / 4 * mp.log(mpf(n)) - mp.log(mpf(8))
        if order == 1:
            val -= (15 / (8 * mp.pi) + mp.pi / 16) / r
        return val


def exact_log_value(n: int, ordinary: Optional[PartitionTable] = None):
    """log a(n) computed from the exact integer."""
    a = cubic_value(n, ordinary)
    with workprec(a.bit_length() + 64):
        return mp.log(mpf(a))


def conjecture_residual_scan(grid: Sequence[int],
                             ordinary: Optional[PartitionTable] = None,
                             order: int = 1):
    """Order-1 residuals r(n) = log a(n) - log_expansion(n, 1) over an
    ascending grid. r(n) should fall like 1/n, so n*r(n) stabilizes."""
    grid = list(grid)
    if grid != sorted(grid) or len(set(grid)) != len(grid):
        raise ValueError("grid must be strictly ascending")
    if grid and grid[0] < 100:
        raise ValueError("grid entries must be >= 100")
    if ordinary is None and grid:
        ordinary = p_table(max(grid))
    out = []
    for n in grid:
        exact = exact_log_value(n, ordinary)
        pred = log_expansion(n, order)
        out.append(AsymptoticReport(n, exact, pred, exact - pred, order))
    return out


def extrapolate_c2(reports: Sequence[AsymptoticReport]):
    """Estimate of the 1/n coefficient from the last two scan points.

    Models n*r(n) = c2 + d/sqrt(n) and eliminates d; the error bar is the
    shift from the raw final value, which dominates the neglected terms.
    Returns (estimate, error_bar) as floats; an estimate only, no ground
    truth exists to assert against.
    """
    if len(reports) < 2:
        raise ValueError("need at least two scan points")
    a, b = reports[-2], reports[-1]
    sa = float(a.scaled_residual)
    sb = float(b.scaled_residual)
    t = math.sqrt(b.n / a.n)
    est = (t * sb - sa) / (t - 1)
    return est, abs(est - sb)
