"""Generalized Erdos-Moser equation ``1**n + ... + (m-1)**n == a * m**n``.

The search derives ``a`` from ``(m, n)`` and discards even ``m`` with
``n >= 2`` up front: a solution would force ``v2(S_n(m)) >= n*d`` with
``d = v2(m)``, while the valuation formula caps it at ``2(d-1)``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import config
from .powersum import OracleBudgetExceeded, oracle_sum
from .valuation import split2

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MoserCandidate:
    m: int
    n: int
    a: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.a < 1:
            raise ValueError(f"a must be >= 1, got {self.a}")

    def to_json(self) -> dict:
        return {k: str(v) for k, v in asdict(self).items()}


@dataclass(frozen=True)
class ObstructionReport:
    d: int
    needed: int
    available: int
    blocked: bool

    def to_json(self) -> dict:
        return asdict(self)


class FalsePrune(AssertionError):
    """The parity obstruction discarded a pair that solves the equation."""


def _budget_check(m: int, budget: int | None) -> None:
    limit = config.oracle_budget(budget)
    if m - 1 > limit:
        raise OracleBudgetExceeded(f"m={m} exceeds the oracle budget of {limit} terms")


def check_candidate(c: MoserCandidate, budget: int | None = None) -> bool:
    _budget_check(c.m, budget)
    return oracle_sum(c.m - 1, c.n, budget) == c.a * c.m**c.n


def implied_multiplier(m: int, n: int, budget: int | None = None) -> Optional[int]:
    """The ``a`` solving the equation for ``(m, n)``, or None."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    _budget_check(m, budget)
    a, rem = divmod(oracle_sum(m - 1, n, budget), m**n)
    if rem or a < 1:
        return None
    return a


def parity_obstruction(m: int, n: int) -> ObstructionReport:
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and positive, got {m}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    d = split2(m).d
    # v2(S_n(m)) is d-1 (n even) or 2(d-1) (n odd); 2(d-1) bounds both
    available = 2 * (d - 1)
    needed = n * d
    return ObstructionReport(d=d, needed=needed, available=available, blocked=needed > available)


def trivial_solution(a: int) -> MoserCandidate:
    """``1 + 2 + ... + 2a == a(2a+1)``."""
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    return MoserCandidate(2 * a + 1, 1, a)


def _search_range(ms, n_max: int, budget, verify_prunes: bool) -> List[MoserCandidate]:
    found = []
    for m in ms:
        for n in range(1, n_max + 1):
            if m % 2 == 0 and n >= 2 and parity_obstruction(m, n).blocked:
                if verify_prunes and implied_multiplier(m, n, budget) is not None:
                    raise FalsePrune(f"obstruction discarded a solution at m={m}, n={n}")
                continue
            a = implied_multiplier(m, n, budget)
            if a is not None:
                found.append(MoserCandidate(m, n, a))
    return found


def search(
    m_max: int,
    n_max: int,
    *,
    budget: int | None = None,
    verify_prunes: bool = False,
    jobs: int = 1,
) -> List[MoserCandidate]:
    """All solutions with ``2 <= m <= m_max`` and ``1 <= n <= n_max``.

    Results are sorted by ``(m, n)``. With ``verify_prunes`` every pair
    discarded by the parity obstruction is also checked exactly, raising
    :class:`FalsePrune` on disagreement.
    """
    if m_max < 2:
        raise ValueError(f"m_max must be >= 2, got {m_max}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    _budget_check(m_max, budget)
    ms = range(2, m_max + 1)
    if jobs <= 1:
        found = _search_range(ms, n_max, budget, verify_prunes)
    else:
        chunks = [ms[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _search_range,
                chunks,
                [n_max] * jobs,
                [budget] * jobs,
                [verify_prunes] * jobs,
            )
            found = [c for part in parts for c in part]
    found.sort()
    log.debug("search m<=%d n<=%d: %d solutions", m_max, n_max, len(found))
    return found
