"""Exact 2-adic valuations of power sums and the generalized Erdos-Moser equation."""
from .moser import (
    MoserCandidate,
    ObstructionReport,
    check_candidate,
    implied_multiplier,
    parity_obstruction,
    search,
    trivial_solution,
)
from .powersum import (
    OracleBudgetExceeded,
    PrecisionCeilingExceeded,
    ResidueResult,
    binomial,
    check_prop1,
    doubling_sum,
    modular_sum,
    oracle_sum,
    v2_closed_form,
    v2_lemma,
    v2_modular,
)
from .valuation import INFINITE, TwoAdicSplit, Valuation, split2, triangular, v2, v2_half_product

__version__ = "0.1.0"
