"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its measurement and wall
time.  Run with ``pytest tests/test_acceptance.py -s`` or directly as a
script.
"""
from __future__ import annotations

import json
import math
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable

import pytest

from siegelmult.certificates import (
    DELIGNE_CONCLUSION,
    LEMMA_TAGS,
    Certificate,
    bms_build,
    bms_w_check,
    deligne_certificate,
    mennicke_axiom_check,
    random_bms_parameters,
    replay,
    verify_lemma,
)
from siegelmult.cocycle import PETERSSON, cocycle_identity_check, w_cocycle
from siegelmult.genus1 import compare_with_oracle, discrepancy_report
from siegelmult.multipliers import (
    delta_multiplier,
    rademacher_integer,
    theta_multiplier,
    verify_multiplier_relation,
)
from siegelmult.sampling import random_sl2, random_sp4, random_table_pair, random_theta_word
from siegelmult.symbols import is_prime, kronecker, legendre_oracle
from siegelmult.symplectic import identity, mul


@dataclass
class Outcome:
    passed: bool
    detail: str


CRITERIA: list[tuple[int, str, float, Callable[[], Outcome]]] = []


def criterion(number: int, name: str, budget: float):
    def register(fn):
        CRITERIA.append((number, name, budget, fn))
        return fn
    return register


@criterion(1, "cocycle integrality and identity", 60.0)
def cocycle_identity() -> Outcome:
    rng = random.Random("acc1")
    worst, broken = 0.0, 0
    for n, sampler in ((10_000, random_sl2), (1_000, random_sp4)):
        for _ in range(n):
            chk = cocycle_identity_check(sampler(rng), sampler(rng), sampler(rng))
            worst = max(worst, chk.w12_3.residual, chk.w1_2.residual, chk.w1_23.residual, chk.w2_3.residual)
            broken += not chk.holds
    return Outcome(broken == 0 and worst < 1e-6,
                   f"10^4 genus-1 + 10^3 genus-2 triples, {broken} identity failures, worst residual {worst:.1e}")


@criterion(2, "table equals oracle", 30.0)
def table_oracle() -> Outcome:
    rng = random.Random("acc2")
    mismatches = sum(not compare_with_oracle(*random_table_pair(rng, "generic")).agree for _ in range(10_000))
    pairs = [random_table_pair(rng, case) for case in ("m1p=0", "m1=0", "c=0", "c=m1=m1p=0") for _ in range(250)]
    mE = -identity(1)
    pairs.append((mE, mE))
    report = discrepancy_report(pairs)
    degenerate_ok = all(t.agree_petersson == t.pairs for t in report.values())
    minus_e = compare_with_oracle(mE, mE)
    summary = ", ".join(f"{k} {t.agree_petersson}/{t.pairs}" for k, t in report.items())
    return Outcome(mismatches == 0 and degenerate_ok and minus_e.agree,
                   f"generic mismatches {mismatches}/10000; degenerate {summary}; "
                   f"M=S=-E table {minus_e.table}, oracle {minus_e.oracle} (multiplier sign)")


@criterion(3, "lemma suite", 300.0)
def lemma_suite() -> Outcome:
    bad = [tag for tag in LEMMA_TAGS if not verify_lemma(tag, samples=1000, seed=0).passed]
    return Outcome(not bad, f"{len(LEMMA_TAGS)} tags x 1000 samples, failing: {bad or 'none'}")


@criterion(4, "seven-matrix identity", 60.0)
def bms_identity() -> Outcome:
    rng = random.Random("acc4")
    failures, steps, biggest, numeric_w = 0, 0, 0, 0
    for _ in range(1000):
        p = random_bms_parameters(rng, 10**6, nonzero=True)
        biggest = max(biggest, max(abs(v) for v in (p.a, p.b1, p.c1, p.d1, p.b2, p.c2, p.d2)))
        ok = bms_build(p).identity_holds
        cert = bms_w_check(p)
        steps += len(cert.steps)
        numeric_w += sum(st.op == "w" for st in cert.steps)
        failures += not (ok and cert.passed)
    return Outcome(failures == 0, f"1000 tuples, largest entry {biggest}, {steps} checks "
                                    f"({numeric_w} w-values also by path continuation), {failures} failing tuples")


@criterion(5, "multiplier relations", 120.0)
def multiplier_relations() -> Outcome:
    parts, ok = [], True
    for r in (0.3, 0.5, 1.0, 3.5):
        rng = random.Random(f"acc5:{r}")
        pairs = [(random_sl2(rng), random_sl2(rng)) for _ in range(100)]
        report = verify_multiplier_relation(lambda X, r=r: delta_multiplier(r, X), r, pairs)
        ok &= report.passed
        parts.append(f"delta r={r} worst {report.worst:.1e}")
    rng = random.Random("acc5:theta")
    pairs = [(random_theta_word(rng), random_theta_word(rng)) for _ in range(100)]
    report = verify_multiplier_relation(theta_multiplier, 0.5, pairs)
    ok &= report.passed
    parts.append(f"theta r=1/2 worst {report.worst:.1e}")
    return Outcome(ok, "; ".join(parts))


@criterion(6, "cocycle bridge", 60.0)
def bridge() -> Outcome:
    rng = random.Random("acc6")
    bad = 0
    for _ in range(1000):
        M, N = random_sl2(rng), random_sl2(rng)
        lhs = rademacher_integer(mul(M, N)) - rademacher_integer(M) - rademacher_integer(N)
        bad += lhs != 12 * w_cocycle(M, N, PETERSSON).w
    return Outcome(bad == 0, f"d(MN)-d(M)-d(N) = 12 w on 1000 pairs, {bad} mismatches")


@criterion(7, "weight constraint certificate", 5.0)
def deligne() -> Outcome:
    cert = deligne_certificate(4)
    by = {s.description: s.computed for s in cert.steps}
    expected = {
        "(c/d) = -1": "-1",
        "w(M, (1-q,-q;q,1+q)) = 1 from the table, signs (+,+,-)": "1",
        "table w(M, M) = 0": "0",
        "N = M^2": "233,144;144,89",
        "(gamma/delta) = 1": "1",
    }
    wrong = [k for k, v in expected.items() if by.get(k) != v]
    same = deligne_certificate(4).to_json() == cert.to_json()
    ok = cert.passed and not wrong and same and cert.steps[0].inputs["m"] == "13,8;8,5" \
        and cert.conclusion == DELIGNE_CONCLUSION
    return Outcome(ok, f"M={cert.steps[0].inputs['m']}, {len(cert.steps)} steps, wrong values {wrong or 'none'}, "
                       f"byte-identical {same}, conclusion '{cert.conclusion}'")


@criterion(8, "Kronecker rules", 10.0)
def kronecker_rules() -> Outcome:
    rng = random.Random("acc8")
    fails = {"numerator product": 0, "denominator product": 0, "numerator period": 0,
             "denominator period": 0, "sign of -1": 0}

    def odd():
        return 2 * rng.randint(-10**5, 10**5) + 1

    for _ in range(10_000):
        c1, c2, d, d2 = rng.randint(-10**5, 10**5), rng.randint(-10**5, 10**5), odd(), odd()
        fails["numerator product"] += kronecker(c1 * c2, d) != kronecker(c1, d) * kronecker(c2, d)
        fails["denominator product"] += kronecker(c1, d * d2) != kronecker(c1, d) * kronecker(c1, d2)
        c3 = c1 + d * rng.randint(-20, 20)
        if d > 0 or c1 * c3 > 0:
            fails["numerator period"] += kronecker(c1, d) != kronecker(c3, d)
        c = 2 * rng.randint(-10**4, 10**4) or 4
        step = c if c % 4 == 0 else 4 * c
        fails["denominator period"] += kronecker(c, d) != kronecker(c, d + step * rng.randint(-20, 20))
        if c1:
            fails["sign of -1"] += kronecker(c1, -1) != (1 if c1 > 0 else -1)
    oracle_bad = sum(kronecker(c, p) != legendre_oracle(c, p)
                     for p in range(3, 201) if is_prime(p) for c in range(1, 201))
    total = sum(fails.values())
    return Outcome(total == 0 and oracle_bad == 0,
                   f"10^4 instances, rule failures {total}, oracle disagreements {oracle_bad} (c<=200, p<=200)")


@criterion(9, "Mennicke axioms", 120.0)
def mennicke() -> Outcome:
    main = mennicke_axiom_check(q=4, samples=10, seed=0)
    levels = {q: mennicke_axiom_check(q=q, samples=10, seed=0, max_doublings=0) for q in (4, 8, 16)}
    outcome = ", ".join(f"q={q} {'holds' if c.level else f'{len(c.failures())} violations'}"
                        for q, c in levels.items())
    witnesses = main.failures()
    replayed = all(r.reproduced for r in replay(Certificate("witness", None, witnesses))) if witnesses else True
    roundtrip = all(r.reproduced for r in replay(json.loads(main.to_json())))
    ok = main.level is not None and f"minimal passing q = {main.level}" in main.conclusion and replayed and roundtrip
    return Outcome(ok, f"{outcome}; minimal passing q = {main.level}; {len(witnesses)} witnesses replayed {replayed}")


def _run(number: int, name: str, budget: float, fn) -> tuple[bool, str]:
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    ok = out.passed and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'} [{number}] {name}: {out.detail} ({elapsed:.1f}s, budget {budget:.0f}s)"
    return ok, line


@pytest.mark.parametrize("number,name,budget,fn", CRITERIA, ids=[f"{n}-{name.replace(' ', '_')}" for n, name, _, _ in CRITERIA])
def test_criterion(number, name, budget, fn, capsys):
    ok, line = _run(number, name, budget, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
