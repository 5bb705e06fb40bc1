import copy
import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from barkerlab.certlab import (CASE_NAMES, CONCLUSION, EVEN_P_EXCLUSION, RESIDUAL, CertificateError,
                               NonexistenceCertificate, _build_columns, case_classify,
                               certificate_range, lemma3_block_check, lemma12_residue_replay,
                               nonexistence_certificate, prefix_run, star_swap_normalize,
                               verify_certificate)
from barkerlab.seqcore import SequenceError, skew_check

from conftest import certificate_mutations as _mutations


# --------------------------------------------------------------------------
# lemma replays

def test_prefix_run():
    assert prefix_run("+++-") == 3
    assert prefix_run("--+") == 2
    assert prefix_run("+") == 1


def test_star_swap(found_raw):
    for n in (5, 7, 11, 13):
        for s in found_raw[n]:
            t, swapped = star_swap_normalize(s)
            assert t.entries[0] == 1 and prefix_run(t) >= 3
            assert t in (s, s.negated(), s.reversed(), s.reversed().negated())
            assert swapped == (t not in (s, s.negated()))
    with pytest.raises(SequenceError):
        star_swap_normalize("++-")


def test_lemma_replays_on_barker(found_raw):
    for n in (5, 7, 11, 13):
        for s in found_raw[n]:
            r3 = lemma3_block_check(s)
            assert r3.passed, r3.failures
            r12 = lemma12_residue_replay(s)
            assert r12.passed, r12.failures
            p = r12.details["p"]
            assert r12.details["residues"] == [p - 1] * max(0, n - 2 - p)


def test_lemma12_n13_detail():
    r = lemma12_residue_replay("+++++--++-+-+")
    assert r.details["p"] == 5 and r.details["range_top"] == 6
    assert r.details["residues"] == [4] * 6
    assert [st["mu"] for st in r.details["steps"]] == [2, 4]
    assert r.details["steps"][1]["case"] == "case2"  # mu + 1 = 5 = p
    assert r.details["steps"][0]["adjacent_products"] == (1, 1)


def test_lemma_replays_preconditions():
    for fn in (lemma3_block_check, lemma12_residue_replay):
        with pytest.raises(SequenceError):
            fn("++-")      # Barker, but no orientation has a prefix run of 3
        with pytest.raises(SequenceError):
            fn("+++")      # not Barker
        with pytest.raises(SequenceError):
            fn("++-+")     # even length


# --------------------------------------------------------------------------
# classification

def test_classify_examples():
    r = case_classify(15, 3)
    assert (r.case, r.u, r.r) == ("CASE2", 5, 0)
    assert case_classify(19, 7).case == "CASE3"
    r = case_classify(15, 9)
    assert r.case == "CASE5" and r.witness["inequality"] == 31
    assert r.witness["inequality"] == 9 * 9 - 6 * 9 + 4
    r = case_classify(15, 7)
    assert r.case == "CASE4" and r.witness["inequality"] == 49 - 28 - 5
    assert case_classify(15, 5).case == "CASE1"


def test_classify_errors():
    with pytest.raises(CertificateError):
        case_classify(15, 4)
    with pytest.raises(CertificateError):
        case_classify(15, 17)
    with pytest.raises(CertificateError):
        case_classify(13, 3)
    with pytest.raises(CertificateError):
        case_classify(16, 3)


def expected_case(n, p):
    # the partition written out independently of the library
    u, r = divmod(n, p)
    if u >= 3:
        return "CASE1" if p >= 5 else "CASE2"
    if u == 2:
        if p >= 5 and r >= 4:
            return "CASE3"
        if p >= 7 and r <= 3:
            return "CASE4"
        return "RESIDUAL"
    return "CASE5" if p >= 7 else "RESIDUAL"


@given(st.integers(7, 5000).map(lambda k: 2 * k + 1), st.data())
def test_partition_property(n, data):
    p = data.draw(st.integers(1, (n - 1) // 2).map(lambda k: 2 * k + 1))
    rec = case_classify(n, p)
    assert rec.case == expected_case(n, p) != "RESIDUAL"
    assert rec.u * p + rec.r == n and 0 <= rec.r < p
    assert rec.validate()


def test_residual_only_at_small_n():
    # the same builder on n = 13 lands p = 5 (u = 2, r = 3) in the residual range
    cols = _build_columns(13, np.array([5]))
    assert int(cols["case"][0]) == RESIDUAL
    for n in range(15, 400, 2):
        assert all(expected_case(n, p) != "RESIDUAL" for p in range(3, n + 1, 2))


# --------------------------------------------------------------------------
# certificates

def test_certificate_n15():
    cert = nonexistence_certificate(15)
    assert [r.p for r in cert.records] == [3, 5, 7, 9, 11, 13, 15]
    assert cert.case_counts() == {"CASE1": 1, "CASE2": 1, "CASE4": 1, "CASE5": 4}
    assert cert.even_p_exclusion == EVEN_P_EXCLUSION and cert.conclusion == CONCLUSION
    assert verify_certificate(cert)
    doc = json.loads(cert.to_json())
    assert doc["schema"] == "barker-nonexistence/1" and doc["n"] == 15
    assert verify_certificate(doc) and verify_certificate(cert.to_json())
    assert NonexistenceCertificate.from_json(cert.to_json()).to_json() == cert.to_json()


def test_certificate_scope():
    for n in (13, 11, 3, 16, 10000):
        with pytest.raises(CertificateError):
            nonexistence_certificate(n)


def test_certificate_n10001():
    cert = nonexistence_certificate(10001)
    assert len(cert) == 5000
    assert "RESIDUAL" not in cert.case_counts()
    assert verify_certificate(cert)


def test_witness_sources():
    for n in range(15, 301, 2):
        for rec in nonexistence_certificate(n).records:
            if rec.case in ("CASE1", "CASE2", "CASE3"):
                w = rec.witness
                assert w["source"] in ("triple", "repaired")
                assert all(1 <= i <= w["bound"] for i in w["front"] + w["back"])
                assert w["back"] == [n + 1 - i for i in w["front"]]
                assert len({(i - 1) // rec.p for i in w["front"]}) == 1
                assert len({(i - 1) // rec.p for i in w["back"]}) == 1


def skew_sequences(n):
    m = (n - 1) // 2
    for half in product((1, -1), repeat=m):
        a = [1, *half] + [0] * m
        for k in range(m):
            # a_{k+1} a_{n-k} = (-1)^(m+k)
            a[n - 1 - k] = a[k] * (-1) ** (m + k)
        yield a


def block_constant(a, p):
    n = len(a)
    return all(a[i - 1] == a[i] for i in range(1, n - p - 1) if (i - 1) // p == i // p)


@pytest.mark.parametrize("n", [15, 17, 19, 21, 23, 25])
def test_index_witness_soundness_oracle(n):
    # every CASE1-3 record claims no skew sequence with prefix run exactly p is block-constant
    seqs = list(skew_sequences(n))
    assert all(skew_check(s) for s in seqs[:8])
    for rec in nonexistence_certificate(n).records:
        if rec.case not in ("CASE1", "CASE2", "CASE3"):
            continue
        survivors = [a for a in seqs if prefix_run(a) == rec.p and block_constant(a, rec.p)]
        assert survivors == [], (n, rec.p)


@pytest.mark.parametrize("n", range(15, 80, 2))
def test_quadratic_witnesses(n):
    m = (n - 1) // 2
    for rec in nonexistence_certificate(n).records:
        p, w = rec.p, rec.witness
        if rec.case == "CASE4":
            assert w["inequality"] == p * p - 4 * p - 5 > 0
            assert w["upper"] == 4 * p + 5 and w["q_at_one"] == 2 * n - 1
            assert w["p_squared"] == p * p > w["upper"]
        elif rec.case == "CASE5":
            assert w["inequality"] == p * p - 6 * p + 4 > 0
            assert w["upper"] == 4 * p - 3
            assert w["p_minus_1_squared"] == (p - 1) ** 2 > w["upper"]
            assert w["q_at_one"] in (1, 4 * m + 1)


def _accepts(doc):
    try:
        return verify_certificate(doc)
    except CertificateError:
        return False


@pytest.mark.parametrize("n", [15, 19, 27, 41])
def test_single_field_mutations_rejected(n):
    doc = json.loads(nonexistence_certificate(n).to_json())
    assert _accepts(doc)
    count = 0
    for bad in _mutations(doc):
        count += 1
        assert not _accepts(bad)
    assert count > 20


def test_malformed_inputs():
    good = json.loads(nonexistence_certificate(15).to_json())
    for text in ("", "[]", "{}", "not json", '{"schema": "x"}'):
        with pytest.raises(CertificateError):
            NonexistenceCertificate.from_json(text)
    d = copy.deepcopy(good)
    d["records"][0]["witness"]["front"] = "7"
    with pytest.raises(CertificateError):
        NonexistenceCertificate.from_dict(d)
    d = copy.deepcopy(good)
    d["records"][0]["extra"] = 1
    with pytest.raises(CertificateError):
        NonexistenceCertificate.from_dict(d)
    d = copy.deepcopy(good)
    d["records"][0]["p"] = True
    with pytest.raises(CertificateError):
        NonexistenceCertificate.from_dict(d)


def test_residual_record_is_never_valid():
    doc = json.loads(nonexistence_certificate(15).to_json())
    doc["records"][3] = {"p": 9, "u": 1, "r": 6, "case": "RESIDUAL", "witness": {"bound": 13}}
    assert not _accepts(doc)


def test_certificate_range_workers():
    one = certificate_range(15, 201, workers=1)
    two = certificate_range(15, 201, workers=2)
    assert one == two
    assert [n for n, _, _ in one] == list(range(15, 202, 2))
    assert all(ok for _, ok, _ in one)


@settings(max_examples=30, deadline=None)
@given(st.integers(7, 1500).map(lambda k: 2 * k + 1))
def test_round_trip_property(n):
    cert = nonexistence_certificate(n)
    again = NonexistenceCertificate.from_json(cert.to_json())
    assert again.to_json() == cert.to_json()
    assert verify_certificate(again)
