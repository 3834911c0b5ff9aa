"""Exit criteria. Each test appends one PASS/FAIL line to the terminal summary."""
import contextlib
import json
import random
import time

import pytest

from twoadic import cli, powersum
from twoadic.moser import implied_multiplier, parity_obstruction, search, trivial_solution
from twoadic.powersum import (
    check_prop1,
    doubling_sum,
    modular_sum,
    oracle_sum,
    v2_closed_form,
    v2_lemma,
    v2_modular,
)
from twoadic.valuation import Valuation, triangular, v2, v2_half_product

from conftest import ACCEPTANCE_LINES


@contextlib.contextmanager
def criterion(name, seconds=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        if seconds is not None:
            assert elapsed < seconds, f"{name}: took {elapsed:.1f}s, limit {seconds}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"{name} ({elapsed:.2f}s)"
        ACCEPTANCE_LINES.append((line, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {line}")


def test_c1_theorem_sweep():
    with criterion("1 valuation formula vs oracle, m<=512, n<=16", seconds=30):
        checked = 0
        for n in range(1, 17):
            for m in range(1, 513):
                assert v2_closed_form(m, n) == v2(oracle_sum(m, n)), (m, n)
                checked += 1
        assert checked == 8192


def test_c2_lemma_sweep():
    with criterion("2 lemma vs oracle, d<=8, q in {1,3,5,7}, n<=10", seconds=10):
        checked = 0
        for d in range(1, 9):
            for q in (1, 3, 5, 7):
                for n in range(1, 11):
                    assert v2_lemma(n, d, q) == v2(oracle_sum(2**d * q, n)), (n, d, q)
                    checked += 1
        assert checked == 320


def test_c3_doubling_identity():
    with criterion("3 doubling_sum == oracle_sum, m<=256, n<=12", seconds=30):
        for m in range(1, 257):
            for n in range(1, 13):
                assert doubling_sum(m, n) == oracle_sum(m, n), (m, n)


def test_c4_modular_path():
    with criterion("4 modular residues and v2_modular at scale", seconds=60):
        for m in range(1, 301):
            for n in range(1, 9):
                s = oracle_sum(m, n)
                for K in (1, 4, 16, 40):
                    assert modular_sum(m, n, K).residue == s % (1 << K), (m, n, K)
        rng = random.Random(4)
        for _ in range(1000):
            m = rng.randint(1, 10**50)
            n = rng.randint(1, 50)
            assert v2_modular(m, n) == v2_closed_form(m, n), (m, n)


def test_c5_prop1_and_strictness():
    with criterion("5 m(m+1)/2 | S_n(m) for odd n<=15, m<=400; strict inequality"):
        for n in range(1, 16, 2):
            for m in range(1, 401):
                assert oracle_sum(m, n) % triangular(m) == 0, (m, n)
                assert check_prop1(m, n)
        rng = random.Random(5)
        ms = list(range(1, 401)) + [rng.randint(1, 10**50) for _ in range(500)]
        hits = 0
        for m in ms:
            h = v2_half_product(m)
            if h >= 1:
                for n in range(3, 32, 2):
                    assert v2_closed_form(m, n) > h, (m, n)
                    hits += 1
        assert hits > 0


def test_c6_moser_search(capsys):
    with criterion("6 moser search 300 6: trivial family only, m odd, zero false prunes", seconds=60):
        assert cli.main(["--json", "moser", "search", "300", "6", "--verify-prunes"]) == 0
        rec = json.loads(capsys.readouterr().out)
        got = [(int(c["m"]), int(c["n"]), int(c["a"])) for c in rec["result"]["candidates"]]
        assert got == [(2 * a + 1, 1, a) for a in range(1, 150)]
        assert rec["result"]["all_m_odd"] is True
        assert search(300, 6) == [trivial_solution(a) for a in range(1, 150)]
        for m in range(2, 301, 2):
            for n in range(2, 7):
                assert parity_obstruction(m, n).blocked
                assert implied_multiplier(m, n) is None, (m, n)


def test_c7_spot_values(capsys):
    with criterion("7 v2(40)=3, S_1(100)=5050, 1+2=3"):
        assert v2(40) == Valuation(3)
        assert oracle_sum(100, 1) == 5050
        for argv, expected in [
            (["v2", "40"], {"finite": 3}),
            (["sum", "100", "1"], {"value": "5050", "method_used": "oracle"}),
            (["moser", "check", "3", "1", "1"], True),
        ]:
            assert cli.main(["--json", *argv]) == 0
            assert json.loads(capsys.readouterr().out)["result"] == expected


def test_c8_discrepancy_detector_fires(capsys, monkeypatch):
    with criterion("8 corrupted formula -> sweep exit 5 naming (m, n)"):
        real = powersum.v2_closed_form

        def corrupted(m, n):
            v = real(m, n)
            return Valuation(v.finite() + 1) if (m, n) == (24, 7) else v

        monkeypatch.setattr(powersum, "v2_closed_form", corrupted)
        code = cli.main(["--json", "sweep-verify", "64", "8"])
        rec = json.loads(capsys.readouterr().out)
        assert code == 5
        assert rec["status"] == "error"
        assert rec["result"]["discrepancies"] == 1
        first = rec["result"]["first_discrepancy"]
        assert (first["m"], first["n"], first["method"]) == ("24", "7", "formula")
        assert "m=24, n=7" in rec["error_detail"]
