from itertools import product

import pytest

from barkerlab.searchlab import (RULES, SearchError, exhaustive_search, found_are_barker,
                                 pruned_search, psl_search, range_scan)
from barkerlab.seqcore import canonicalize, is_barker

from conftest import brute_autocorr

BARKER_LENGTHS = {1, 2, 3, 4, 5, 7, 11, 13}


def brute_barker(n):
    return sorted(v for v in product((-1, 1), repeat=n)
                  if all(abs(c) <= 1 for c in brute_autocorr(v)[1:]))


def brute_psl(n):
    best = min(max((abs(c) for c in brute_autocorr(v)[1:]), default=0)
               for v in product((-1, 1), repeat=n))
    return best


@pytest.mark.parametrize("n", range(1, 15))
def test_exhaustive_matches_brute_force(n, found_raw):
    want = brute_barker(n)
    rep = exhaustive_search(n, canonical=False)
    assert [s.entries for s in rep.found] == want
    canon = exhaustive_search(n)
    assert [s.entries for s in canon.found] == sorted({canonicalize(v).entries for v in want})
    assert (len(canon.found) > 0) == (n in BARKER_LENGTHS)
    assert rep.nodes_explored == 2 ** n
    assert rep.prune_stats["rejected"] == 2 ** n - len(want)


def test_canonical_counts():
    # alternation joins ++ with +- and +++- with ++-+, so each length has one orbit
    counts = {n: len(exhaustive_search(n).found) for n in range(1, 14)}
    assert counts == {n: int(n in BARKER_LENGTHS) for n in range(1, 14)}


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11, 13, 15])
def test_pruned_agrees_with_exhaustive(n):
    want = exhaustive_search(n, canonical=False).found
    for k in range(len(RULES) + 1):
        rules = RULES[:k]
        rep = pruned_search(n, rules, canonical=False)
        assert rep.found == want, rules
    assert pruned_search(n, ("partial_bound",), canonical=False).found == want
    assert pruned_search(n, ("odd_lag_mod4", "even_lag_value"), canonical=False).found == want


def test_rules_reduce_nodes():
    n = 17
    counts = [pruned_search(n, RULES[:k]).nodes_explored for k in range(len(RULES) + 1)]
    assert counts == sorted(counts, reverse=True)
    assert counts[-1] < counts[0] / 50


def test_pruned_beyond_13_empty():
    for n in (15, 17, 19, 21, 23, 25, 27, 29):
        rep = pruned_search(n)
        assert rep.found == [] and rep.nodes_explored > 0


def test_sharding_and_workers_are_deterministic():
    a = exhaustive_search(13, canonical=False, prefix_bits=0)
    b = exhaustive_search(13, canonical=False, prefix_bits=4, workers=2)
    assert a.found == b.found
    c = pruned_search(21, prefix_bits=0)
    d = pruned_search(21, prefix_bits=3, workers=2)
    assert c.found == d.found and c.nodes_explored == d.nodes_explored
    for bits in (1, 2, 5, 11):
        e = pruned_search(21, prefix_bits=bits)
        assert (e.nodes_explored, e.prune_stats) == (c.nodes_explored, c.prune_stats)
    raw = pruned_search(13, rules=("partial_bound",), canonical=False, prefix_bits=4)
    assert raw.nodes_explored == pruned_search(13, rules=("partial_bound",), canonical=False).nodes_explored
    assert c.to_dict(timing=False) == d.to_dict(timing=False)


def test_ceiling_and_errors():
    with pytest.raises(SearchError):
        exhaustive_search(31)
    with pytest.raises(SearchError):
        exhaustive_search(0)
    with pytest.raises(SearchError):
        pruned_search(14)
    with pytest.raises(SearchError):
        pruned_search(15, ("bogus",))
    with pytest.raises(SearchError):
        range_scan(5, 3)
    with pytest.raises(SearchError):
        range_scan(1, 3, mode="fast")
    assert pruned_search(31, ceiling=31).found == []


def test_range_scan():
    rows = range_scan(1, 25)
    assert {r.n for r in rows if r.barker_count} == BARKER_LENGTHS
    assert all(r.mode == ("pruned" if r.n % 2 and r.n > 21 else "exhaustive") for r in rows)
    for r in rows:
        if r.example:
            assert is_barker(r.example)


@pytest.mark.parametrize("n", range(1, 13))
def test_psl_matches_brute_force(n):
    best, wit = psl_search(n)
    assert best == brute_psl(n)
    for s in wit:
        assert max((abs(c) for c in brute_autocorr(s.entries)[1:]), default=0) == best
        assert canonicalize(s) == s


def test_psl_examples():
    assert psl_search(1)[0] == 0
    best, wit = psl_search(6)
    assert best == 2 and len(wit) == 4
    assert psl_search(13)[0] == 1


def test_report_serialization():
    rep = exhaustive_search(5)
    assert found_are_barker(rep)
    d = rep.to_dict(timing=False)
    assert d["found"] == ["+++-+"] or d["found"] == [rep.found[0].to_signs()]
    assert "wall_time" not in d and "wall_time" in rep.to_dict()
    assert rep.to_csv().splitlines()[0] == "n,mode,canonical,count,nodes_explored,wall_time"
