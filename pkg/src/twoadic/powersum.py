"""Power sums ``S_n(m) = 1**n + 2**n + ... + m**n`` and their 2-adic valuation.

Four independent routes are provided:

* :func:`oracle_sum` -- direct O(m) summation, the ground truth;
* :func:`doubling_sum` -- exact recursion through the symmetric doubling
  identity ``S_n(2a) = a**n + 2 * sum_i C(n, 2i) a**(n-2i) S_{2i}(a)``;
* :func:`modular_sum` / :func:`v2_modular` -- residues mod ``2**K`` using
  the period ``2**K`` of ``j -> j**n mod 2**K``;
* :func:`v2_closed_form` -- the divisibility formula, O(1) in the size of m.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from . import config
from .valuation import Valuation, trailing_zeros, triangular, v2_half_product


class OracleBudgetExceeded(ValueError):
    """Direct summation was asked for more terms than the budget allows."""


class PrecisionCeilingExceeded(ArithmeticError):
    """Residue stayed zero at the maximum precision."""


class ResidueResult(NamedTuple):
    residue: int
    precision_K: int

    @property
    def modulus(self) -> int:
        return 1 << self.precision_K


def _check_query(m: int, n: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"m must be a positive int, got {m!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive int, got {n!r}")


def oracle_sum(m: int, n: int, budget: int | None = None) -> int:
    """Exact ``S_n(m)`` by adding every term.

    Raises :class:`OracleBudgetExceeded` when ``m`` exceeds the iteration
    budget (default from :func:`twoadic.config.oracle_budget`).
    """
    _check_query(m, n)
    limit = config.oracle_budget(budget)
    if m > limit:
        raise OracleBudgetExceeded(
            f"m={m} exceeds the oracle budget of {limit} terms; "
            "use doubling_sum or modular_sum"
        )
    return sum(j**n for j in range(1, m + 1))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k exceeds n")
    return math.comb(n, k)


def doubling_sum(m: int, n: int) -> int:
    """Exact ``S_n(m)`` in O(n**2 log m) big-integer operations.

    Even arguments go through the doubling identity, odd ones peel off
    their last term. ``S_0(a)`` is taken to be ``a``.
    """
    _check_query(m, n)

    # The reduction m -> m-1 (odd) or m//2 (even) is a single chain, so the
    # per-call memo is one dict of exponent -> value per chain node.
    chain = []
    a = m
    while a > 0:
        chain.append(a)
        a = a - 1 if a & 1 else a >> 1

    needs = [{n}]
    for a in chain[:-1]:
        top = needs[-1]
        if a & 1:
            needs.append(set(top))
        else:
            nxt = {2 * i for i in range(1, max(top) // 2 + 1)}
            if not nxt:
                # only S_0 below this node, which is known directly
                break
            needs.append(nxt)
    chain = chain[: len(needs)]

    below: dict[int, int] = {}  # values at the child node; chain ends at 0
    for a, exps in zip(reversed(chain), reversed(needs)):
        if a & 1:
            cur = {e: below.get(e, 0) + a**e for e in exps}
        else:
            h = a >> 1
            cur = {}
            for e in exps:
                acc = 0
                for i in range(e // 2 + 1):
                    s = h if i == 0 else below[2 * i]
                    acc += math.comb(e, 2 * i) * h ** (e - 2 * i) * s
                cur[e] = h**e + 2 * acc
        below = cur
    return below[n]


def _prefix_sums_mod(length: int, n: int, modulus: int) -> list[int]:
    """``[S_0(L), S_1(L), ..., S_n(L)] mod modulus`` for ``L = length``.

    Built bit by bit: ``L -> 2L`` uses the shift expansion
    ``S_k(2L) = S_k(L) + sum_i C(k, i) L**(k-i) S_i(L)`` and ``L -> L+1``
    adds one term per exponent.
    """
    sums = [0] * (n + 1)
    if length == 0:
        return sums
    binom = [[math.comb(k, i) % modulus for i in range(k + 1)] for k in range(n + 1)]
    cur = 0
    for bit in bin(length)[2:]:
        if cur:
            lp = [1] * (n + 1)
            for e in range(1, n + 1):
                lp[e] = lp[e - 1] * cur % modulus
            shifted = [
                sum(row[i] * lp[k - i] * sums[i] for i in range(k + 1)) % modulus
                for k, row in enumerate(binom)
            ]
            sums = [(x + y) % modulus for x, y in zip(sums, shifted)]
            cur <<= 1
        if bit == "1":
            cur += 1
            t = 1
            for k in range(n + 1):
                sums[k] = (sums[k] + t) % modulus
                t = t * cur % modulus
    return sums


def modular_sum(m: int, n: int, K: int) -> ResidueResult:
    """``S_n(m) mod 2**K`` in time polynomial in ``K``, ``n`` and ``log m``.

    ``m = t * 2**K + r`` contributes ``t`` full periods plus the partial
    block ``1..r``.
    """
    _check_query(m, n)
    if not isinstance(K, int) or K < 1:
        raise ValueError(f"K must be a positive int, got {K!r}")
    modulus = 1 << K
    periods, rest = divmod(m, modulus)
    residue = 0
    if periods:
        # summing 1..2**K equals summing 0..2**K-1 mod 2**K since n >= 1
        period_sum = _prefix_sums_mod(modulus, n, modulus)[n]
        residue = periods % modulus * period_sum
    if rest:
        residue += _prefix_sums_mod(rest, n, modulus)[n]
    return ResidueResult(residue % modulus, K)


def v2_lemma(n: int, d: int, q: int) -> Valuation:
    """Valuation of ``S_n(2**d * q)`` for ``d >= 1`` and odd ``q``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive int, got {n!r}")
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be >= 1, got {d!r}")
    if not isinstance(q, int) or q < 1 or q % 2 == 0:
        raise ValueError(f"q must be a positive odd int, got {q!r}")
    if n >= 3 and n % 2 == 1:
        return Valuation(2 * (d - 1))
    return Valuation(d - 1)


def v2_closed_form(m: int, n: int) -> Valuation:
    """Valuation of ``S_n(m)`` from the divisibility formula.

    ``v2(m(m+1)/2)`` when ``n == 1`` or ``n`` is even, twice that when ``n``
    is odd and at least 3.
    """
    _check_query(m, n)
    base = v2_half_product(m).finite()
    if n >= 3 and n % 2 == 1:
        return Valuation(2 * base)
    return Valuation(base)


def v2_modular(m: int, n: int, max_bits: int | None = None) -> Valuation:
    """Valuation of ``S_n(m)`` counted from residues mod ``2**K``.

    The closed form only seeds the starting precision; ``K`` doubles while
    the residue is zero, up to ``max_bits``.
    """
    _check_query(m, n)
    ceiling = config.max_precision_bits(max_bits)
    K = min(v2_closed_form(m, n).finite() + 8, ceiling)
    while True:
        residue = modular_sum(m, n, K).residue
        if residue:
            return Valuation(trailing_zeros(residue))
        if K >= ceiling:
            raise PrecisionCeilingExceeded(
                f"S_{n}({m}) is 0 mod 2**{K}; precision ceiling of {ceiling} bits exceeded"
            )
        K = min(2 * K, ceiling)


def check_prop1(m: int, n: int, budget: int | None = None) -> bool:
    """Whether ``m(m+1)/2`` divides ``S_n(m)`` (odd ``n`` only)."""
    _check_query(m, n)
    if n % 2 == 0:
        raise ValueError(f"n must be odd, got {n}")
    return oracle_sum(m, n, budget) % triangular(m) == 0
