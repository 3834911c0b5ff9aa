"""Grid cross-check of every valuation route against the oracle."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import config, powersum
from .valuation import v2


@dataclass
class Discrepancy:
    m: int
    n: int
    method: str
    expected: str
    got: str

    def to_json(self) -> dict:
        return {"m": str(self.m), "n": str(self.n), "method": self.method,
                "expected": self.expected, "got": self.got}


@dataclass
class SweepResult:
    checked: int = 0
    discrepancies: int = 0
    first: Optional[Discrepancy] = field(default=None)

    def to_json(self) -> dict:
        out = {"checked": self.checked, "discrepancies": self.discrepancies}
        if self.first is not None:
            out["first_discrepancy"] = self.first.to_json()
        return out


def check_point(m: int, n: int, budget: int | None = None) -> list[Discrepancy]:
    """Compare closed form, modular, and doubling routes with the oracle at one point."""
    exact = powersum.oracle_sum(m, n, budget)
    truth = v2(exact)
    bad = []
    closed = powersum.v2_closed_form(m, n)
    if closed != truth:
        bad.append(Discrepancy(m, n, "formula", str(truth), str(closed)))
    modular = powersum.v2_modular(m, n)
    if modular != truth:
        bad.append(Discrepancy(m, n, "modular", str(truth), str(modular)))
    doubled = powersum.doubling_sum(m, n)
    if doubled != exact:
        bad.append(Discrepancy(m, n, "doubling", str(exact), str(doubled)))
    return bad


def _sweep_rows(ms, n_max: int, budget) -> SweepResult:
    res = SweepResult()
    for m in ms:
        for n in range(1, n_max + 1):
            res.checked += 1
            bad = check_point(m, n, budget)
            if bad:
                res.discrepancies += len(bad)
                if res.first is None:
                    res.first = bad[0]
    return res


def sweep_verify(m_max: int, n_max: int, *, jobs: int = 1, budget: int | None = None) -> SweepResult:
    """Check every ``1 <= m <= m_max``, ``1 <= n <= n_max``.

    The first discrepancy reported is the smallest in ``(m, n)`` order,
    independent of ``jobs``.
    """
    if m_max < 1 or n_max < 1:
        raise ValueError("m_max and n_max must be >= 1")
    limit = config.oracle_budget(budget)
    if m_max > limit:
        # fail fast instead of deep inside a worker
        raise powersum.OracleBudgetExceeded(f"m_max={m_max} exceeds the oracle budget of {limit}")
    ms = range(1, m_max + 1)
    if jobs <= 1:
        return _sweep_rows(ms, n_max, budget)
    # contiguous blocks keep the merged first discrepancy in (m, n) order
    size = -(-len(ms) // jobs)
    blocks = [ms[i:i + size] for i in range(0, len(ms), size)]
    total = SweepResult()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_sweep_rows, blocks, [n_max] * len(blocks), [budget] * len(blocks)):
            total.checked += part.checked
            total.discrepancies += part.discrepancies
            if total.first is None:
                total.first = part.first
    return total
