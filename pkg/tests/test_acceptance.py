"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from barkerlab.certlab import (CertificateError, nonexistence_certificate, star_swap_normalize,
                               verify_certificate)
from barkerlab.newton import power_sums_monic, verify_S_pattern, verify_s_pattern
from barkerlab.polycore import (IntPolynomial, build_Q, eval_at_one, from_sequence, multiply,
                                negate_variable, q_structure_check, reciprocal)
from barkerlab.searchlab import exhaustive_search, pruned_search, range_scan
from barkerlab.seqcore import (autocorrelation, barker_odd_structure, eq3_check, eq4_check,
                               mod4_fold_check, parity_identity_check, skew_check)

from conftest import ACCEPTANCE_LINES, brute_autocorr, certificate_mutations

BARKER_LENGTHS = {1, 2, 3, 4, 5, 7, 11, 13}


def criterion_1():
    rows = range_scan(1, 24, mode="exhaustive")
    lengths = {r.n for r in rows if r.barker_count}
    odd_empty = all(not pruned_search(n).found for n in range(15, 30, 2))
    return lengths == BARKER_LENGTHS and odd_empty, f"Barker lengths {sorted(lengths)}, odd 15-29 empty={odd_empty}"


def criterion_2():
    bad = [n for n in range(1, 22, 2)
           if pruned_search(n, canonical=False).found != exhaustive_search(n, canonical=False).found]
    return not bad, f"odd n <= 21, mismatches {bad}"


def criterion_3():
    rng = random.Random(20260301)
    failures = 0
    for _ in range(10_000):
        n = rng.randint(2, 64)
        a = tuple(rng.choice((-1, 1)) for _ in range(n))
        c = autocorrelation(a).values
        ok = list(c) == brute_autocorr(a) and mod4_fold_check(a)
        ok &= all(parity_identity_check(a, k) for k in range(n))
        ok &= all(abs(c[k]) <= n - k and (c[k] - (n - k)) % 2 == 0 for k in range(n))
        failures += not ok
    return failures == 0, f"10000 random sequences, {failures} failures"


def _found(n):
    return exhaustive_search(n, canonical=False).found


def criterion_4():
    checked, failed = 0, []
    for n in (3, 5, 7, 11, 13):
        m = (n - 1) // 2
        for s in _found(n):
            checked += 1
            p = from_sequence(s)
            star_ok = reciprocal(p, 2 * m) == negate_variable(p) * (-1) ** m
            ok = all(bool(x) for x in (skew_check(s), eq3_check(s), eq4_check(s),
                                       barker_odd_structure(s), q_structure_check(s)))
            if not (ok and star_ok):
                failed.append(s.to_signs())
    return checked > 0 and not failed, f"{checked} sequences, failed {failed}"


def criterion_5():
    checked, failed = 0, []
    for n in (5, 7, 11, 13):
        for s in _found(n):
            checked += 1
            # s_1 = -1 in the orientation with a_1 = +1 and prefix run >= 3
            norm, _ = star_swap_normalize(s)
            s1_ok = power_sums_monic(from_sequence(norm), 1)[1] == -1
            if not (verify_S_pattern(s) and verify_s_pattern(s) and s1_ok):
                failed.append(s.to_signs())
    return checked > 0 and not failed, f"{checked} sequences, failed {failed}"


def criterion_6():
    rng = random.Random(6)
    bad = 0
    for _ in range(500):
        roots = [rng.randint(-9, 9) for _ in range(rng.randint(1, 8))]
        p = IntPolynomial((1,))
        for r in roots:
            p = multiply(p, IntPolynomial((-r, 1)))
        count = rng.randint(1, 16)
        want = tuple(sum(r ** mu for r in roots) for mu in range(1, count + 1))
        bad += power_sums_monic(p, count).values != want
    return bad == 0, f"500 polynomials, {bad} mismatches"


def criterion_7():
    t0 = time.perf_counter()
    invalid = [n for n in range(15, 10002, 2) if not verify_certificate(nonexistence_certificate(n))]
    elapsed = time.perf_counter() - t0
    rng = random.Random(7)
    sampled = sorted(rng.sample(range(15, 10002, 2), 3)) + [15, 17]
    accepted, tried = [], 0
    for n in sampled:
        doc = json.loads(nonexistence_certificate(n).to_json())
        picks = set(rng.sample(range(len(doc["records"])), min(12, len(doc["records"]))))
        for bad in certificate_mutations(doc, picks):
            tried += 1
            try:
                ok = verify_certificate(bad)
            except CertificateError:
                ok = False
            if ok:
                accepted.append(n)
    ok = not invalid and elapsed < 10 and not accepted
    return ok, (f"4994 certificates in {elapsed:.2f}s, invalid {invalid[:5]}; "
                f"{tried} mutations of n={sampled}, accepted {len(accepted)}")


def criterion_8():
    rng = random.Random(8)
    bad = 0
    for _ in range(10_000):
        n = 2 * rng.randint(0, 31) + 1
        a = tuple(rng.choice((-1, 1)) for _ in range(n))
        m = (n - 1) // 2
        q = build_Q(a)
        c = brute_autocorr(a)
        pal = [c[abs(i - 2 * m)] for i in range(4 * m + 1)]
        bad += list(q.coeffs) != pal or eval_at_one(q) != eval_at_one(from_sequence(a)) ** 2
    return bad == 0, f"10000 random odd-length sequences, {bad} mismatches"


CRITERIA = {
    1: ("Barker census", criterion_1),
    2: ("pruned/exhaustive equivalence", criterion_2),
    3: ("unconditional identities", criterion_3),
    4: ("Barker-conditional identities", criterion_4),
    5: ("Newton patterns", criterion_5),
    6: ("Newton engine oracle", criterion_6),
    7: ("certificates to 10001", criterion_7),
    8: ("Q versus autocorrelation", criterion_8),
}


def _run(k):
    name, fn = CRITERIA[k]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'}  criterion {k} ({name}): {detail}"
    print(line)
    return ok, line


def _gate(k):
    ok, line = _run(k)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_census():
    _gate(1)


def test_criterion_2_oracle_equivalence():
    _gate(2)


def test_criterion_3_unconditional_identities():
    _gate(3)


def test_criterion_4_barker_conditional():
    _gate(4)


def test_criterion_5_newton_patterns():
    _gate(5)


def test_criterion_6_newton_oracle():
    _gate(6)


def test_criterion_7_certificates():
    _gate(7)


def test_criterion_8_q_coherence():
    _gate(8)


if __name__ == "__main__":
    results = [_run(k)[0] for k in CRITERIA]
    sys.exit(0 if all(results) else 1)
