import copy
import random

import pytest

from barkerlab.certlab import CASE_NAMES
from barkerlab.searchlab import exhaustive_search
from barkerlab.seqcore import LittlewoodSeq


def brute_autocorr(a):
    n = len(a)
    out = []
    for k in range(n):
        total = 0
        for j in range(n - k):
            total += a[j] * a[j + k]
        out.append(total)
    return out


def random_seq(rng: random.Random, lo: int, hi: int, odd: bool = False) -> LittlewoodSeq:
    n = rng.randint(lo, hi)
    if odd and n % 2 == 0:
        n += 1 if n < hi else -1
    return LittlewoodSeq(tuple(rng.choice((-1, 1)) for _ in range(n)))


@pytest.fixture(scope="session")
def found_raw():
    """Every Barker sequence (all orientations) for n <= 13, from exhaustive search."""
    return {n: exhaustive_search(n, canonical=False).found for n in range(1, 14)}


@pytest.fixture(scope="session")
def barker13(found_raw):
    return found_raw[13][0]


def certificate_mutations(doc, records=None):
    """Every single-field change to a small certificate document."""
    recs = doc["records"]
    for i, rec in enumerate(recs):
        if records is not None and i not in records:
            continue
        for key in ("p", "u", "r"):
            d = copy.deepcopy(doc)
            d["records"][i][key] += 1
            yield d
        d = copy.deepcopy(doc)
        d["records"][i]["case"] = next(c for c in CASE_NAMES[1:] if c != rec["case"])
        yield d
        for key, val in rec["witness"].items():
            d = copy.deepcopy(doc)
            w = d["records"][i]["witness"]
            if isinstance(val, int):
                w[key] = val + 1
            elif isinstance(val, list):
                w[key] = [val[0] + 1] + val[1:]
            else:
                w[key] = "triple" if val == "repaired" else ("repaired" if val == "triple" else val + "x")
            yield d
    for key in ("n", "even_p_exclusion", "conclusion", "schema"):
        d = copy.deepcopy(doc)
        d[key] = d[key] + 2 if key == "n" else d[key] + " "
        yield d
    d = copy.deepcopy(doc)
    d["records"].pop()
    yield d
    d = copy.deepcopy(doc)
    d["records"].append(copy.deepcopy(d["records"][-1]))
    yield d


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
