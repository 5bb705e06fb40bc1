"""Exhaustive and pruned Barker searches, range scans and minimum-PSL search.

Exhaustive search packs each candidate into an integer (bit j-1 set means
a_j = +1) and filters whole numpy blocks lag by lag with popcounts:

    c_k = (n - k) - 2 * popcount((x ^ (x >> k)) & mask(n - k))

Pruned search walks odd-n sequences from both ends at once, fixing a_d
and a_{n+1-d} at depth d. After depth d the lag n-d is fully determined,
so the lag rules can cut the subtree there. Lag sums are maintained
incrementally along the path.

The space is split into shards by fixed sign prefixes; each shard is
searched independently and results are merged in sorted order, so the
output does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .seqcore import LittlewoodSeq, canonicalize, is_barker

DEFAULT_CEILING = 30
CHUNK_BITS = 20
RULES = ("skew_fix", "even_lag_value", "odd_lag_mod4", "partial_bound")


class SearchError(ValueError):
    pass


@dataclass
class SearchReport:
    n: int
    mode: str
    canonical: bool
    found: list[LittlewoodSeq]
    nodes_explored: int
    wall_time: float = 0.0
    prune_stats: dict[str, int] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {"n": self.n, "mode": self.mode, "canonical": self.canonical,
             "found": [s.to_signs() for s in self.found],
             "nodes_explored": self.nodes_explored,
             "prune_stats": dict(sorted(self.prune_stats.items()))}
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "mode", "canonical", "count", "nodes_explored", "wall_time"])
        w.writerow([self.n, self.mode, int(self.canonical), len(self.found),
                    self.nodes_explored, f"{self.wall_time:.6f}"])
        return buf.getvalue()


def _check_n(n: int, ceiling: int) -> None:
    if n < 1:
        raise SearchError("n must be >= 1")
    if n > ceiling:
        raise SearchError(f"n={n} exceeds the search ceiling {ceiling}; raise the ceiling explicitly")


def _bits_to_seq(x: int, n: int) -> LittlewoodSeq:
    return LittlewoodSeq(tuple(1 if (x >> j) & 1 else -1 for j in range(n)))


def _finish(seqs, canonical: bool) -> list[LittlewoodSeq]:
    if canonical:
        seqs = {canonicalize(s) for s in seqs}
    return sorted(seqs, key=lambda s: s.entries)


def _pool_map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*jobs)))


# --------------------------------------------------------------------------
# exhaustive (bit-packed)

def _sidelobe_filter(x: np.ndarray, n: int, limit: int) -> np.ndarray:
    """Keep the words whose every sidelobe satisfies |c_k| <= limit."""
    for k in range(1, n):
        if not len(x):
            break
        span = n - k
        mask = np.int64((1 << span) - 1)
        diff = np.bitwise_count((x ^ (x >> k)) & mask).astype(np.int64)
        c = span - 2 * diff
        x = x[np.abs(c) <= limit]
    return x


def _exhaustive_shard(n: int, lo: int, hi: int) -> list[int]:
    out: list[int] = []
    step = 1 << CHUNK_BITS
    for base in range(lo, hi, step):
        x = np.arange(base, min(base + step, hi), dtype=np.int64)
        out.extend(int(v) for v in _sidelobe_filter(x, n, 1))
    return out


def _shards(n: int, prefix_bits: int | None) -> list[tuple[int, int, int]]:
    if prefix_bits is None:
        prefix_bits = max(0, n - CHUNK_BITS)
    prefix_bits = min(prefix_bits, n)
    size = 1 << (n - prefix_bits)
    return [(n, s * size, (s + 1) * size) for s in range(1 << prefix_bits)]


def exhaustive_search(n: int, canonical: bool = True, workers: int = 1,
                      ceiling: int = DEFAULT_CEILING, prefix_bits: int | None = None) -> SearchReport:
    _check_n(n, ceiling)
    t0 = time.perf_counter()
    hits = sorted(v for part in _pool_map(_exhaustive_shard, _shards(n, prefix_bits), workers)
                  for v in part)
    found = _finish([_bits_to_seq(v, n) for v in hits], canonical)
    return SearchReport(n, "exhaustive", canonical, found, 1 << n,
                        time.perf_counter() - t0, {"rejected": (1 << n) - len(hits)})


# --------------------------------------------------------------------------
# pruned depth-first search from both ends

def _pruned_shard(n: int, rules: frozenset, prefix: tuple[int, ...]):
    """Search every completion of the front entries ``prefix`` (a_1..a_w).

    Returns (found words as sign tuples, nodes visited, cut counts).
    """
    m = (n - 1) // 2
    depth_max = (n + 1) // 2
    a = [0] * (n + 1)             # 1-based, 0 = unset
    fixed: list[int] = []         # positions in assignment order
    c = [0] * n                   # partial lag sums over fixed pairs
    stats = {r: 0 for r in ("even_lag_value", "odd_lag_mod4", "partial_bound", "prefix", "leaf_reject")}
    found: list[tuple[int, ...]] = []
    nodes = 0
    target_even = (-1) ** m
    skew = "skew_fix" in rules
    use_even = "even_lag_value" in rules
    use_odd = "odd_lag_mod4" in rules
    use_bound = "partial_bound" in rules
    # nodes above the shard boundary are shared by several shards; only the
    # shard whose remaining prefix entries are all +1 counts them
    owner = [all(x == 1 for x in prefix[d:]) for d in range(len(prefix) + 1)]

    def place(pos: int, v: int) -> None:
        a[pos] = v
        for q in fixed:
            c[abs(pos - q)] += v * a[q]
        fixed.append(pos)

    def unplace() -> None:
        pos = fixed.pop()
        v = a[pos]
        for q in fixed:
            c[abs(pos - q)] -= v * a[q]
        a[pos] = 0

    def lag_cut(k: int) -> str | None:
        ck = c[k]
        if use_bound and abs(ck) > 1:
            return "partial_bound"
        if k % 2 == 0:
            if use_even and ck != target_even:
                return "even_lag_value"
        elif use_odd and ck % 4:
            return "odd_lag_mod4"
        return None

    def leaf() -> None:
        for k in range(1, n):
            if abs(c[k]) > 1:
                stats["leaf_reject"] += 1
                return
            cut = lag_cut(k)
            if cut:
                stats[cut] += 1
                return
        found.append(tuple(a[1:]))

    def visit(d: int) -> None:
        nonlocal nodes
        if d > depth_max:
            leaf()
            return
        back = n + 1 - d
        front_vals = (prefix[d - 1],) if d <= len(prefix) else (1, -1)
        for v in front_vals:
            if back == d:
                back_vals = (None,)
            elif skew:
                # a_{k+1} a_{n-k} = (-1)^(m+k) with k = d-1
                back_vals = (v * (-1) ** (m + d - 1),)
            else:
                back_vals = (1, -1)
            mine = d > len(prefix) or owner[d]
            for w in back_vals:
                nodes += mine
                place(d, v)
                if w is not None:
                    place(back, w)
                # lags n-d .. n-1 are complete now; only n-d is new
                cut = lag_cut(n - d) if n - d >= 1 else None
                if cut:
                    stats[cut] += mine
                else:
                    visit(d + 1)
                if w is not None:
                    unplace()
                unplace()

    visit(1)
    return found, nodes, stats


def pruned_search(n: int, rules=RULES, canonical: bool = True, workers: int = 1,
                  ceiling: int = DEFAULT_CEILING, prefix_bits: int = 0) -> SearchReport:
    if n % 2 == 0:
        raise SearchError("pruned search is for odd n")
    _check_n(n, ceiling)
    rules = frozenset(rules)
    unknown = rules - set(RULES)
    if unknown:
        raise SearchError(f"unknown rules: {sorted(unknown)}")
    t0 = time.perf_counter()
    width = min(prefix_bits, (n + 1) // 2)
    prefixes = [tuple(1 if (s >> (width - 1 - j)) & 1 else -1 for j in range(width))
                for s in range(1 << width)]
    parts = _pool_map(_pruned_shard, [(n, rules, pre) for pre in prefixes], workers)
    words: list[tuple[int, ...]] = []
    nodes = 0
    stats: dict[str, int] = {}
    for f, k, st in parts:
        words.extend(f)
        nodes += k
        for key, val in st.items():
            stats[key] = stats.get(key, 0) + val
    stats = {k: v for k, v in stats.items() if v or k in rules}
    found = _finish([LittlewoodSeq(w) for w in sorted(words)], canonical)
    return SearchReport(n, "pruned", canonical, found, nodes, time.perf_counter() - t0, stats)


# --------------------------------------------------------------------------
# scans and PSL

@dataclass
class ScanRow:
    n: int
    barker_count: int
    example: str
    mode: str
    time: float


def range_scan(n_lo: int, n_hi: int, mode: str = "auto", canonical: bool = True,
               workers: int = 1, ceiling: int = DEFAULT_CEILING) -> list[ScanRow]:
    """Count Barker sequences for every n in [n_lo, n_hi].

    ``mode`` is 'exhaustive', 'pruned' (odd n pruned, even n exhaustive) or
    'auto' (exhaustive up to 21, pruned above for odd n).
    """
    if not 1 <= n_lo <= n_hi:
        raise SearchError(f"bad range {n_lo}..{n_hi}")
    if n_hi > ceiling:
        raise SearchError(f"n={n_hi} exceeds the search ceiling {ceiling}")
    if mode not in ("auto", "exhaustive", "pruned"):
        raise SearchError(f"unknown scan mode {mode!r}")
    rows = []
    for n in range(n_lo, n_hi + 1):
        use_pruned = n % 2 == 1 and (mode == "pruned" or (mode == "auto" and n > 21))
        if use_pruned:
            rep = pruned_search(n, canonical=canonical, workers=workers, ceiling=ceiling)
        else:
            rep = exhaustive_search(n, canonical=canonical, workers=workers, ceiling=ceiling)
        example = rep.found[0].to_signs() if rep.found else ""
        rows.append(ScanRow(n, len(rep.found), example, rep.mode, rep.wall_time))
    return rows


def _psl_shard(n: int, lo: int, hi: int, limit: int) -> tuple[int, list[int]]:
    best, words = limit, []
    step = 1 << CHUNK_BITS
    for base in range(lo, hi, step):
        x = np.arange(base, min(base + step, hi), dtype=np.int64)
        x = x[(x & 1) == 1]  # a_1 = +1; negation covers the rest
        x = _sidelobe_filter(x, n, best)
        if not len(x):
            continue
        psl = np.zeros(len(x), dtype=np.int64)
        for k in range(1, n):
            span = n - k
            diff = np.bitwise_count((x ^ (x >> k)) & np.int64((1 << span) - 1)).astype(np.int64)
            np.maximum(psl, np.abs(span - 2 * diff), out=psl)
        low = int(psl.min())
        if low < best:
            best, words = low, []
        words.extend(int(v) for v in x[psl == best])
    return best, words


def psl_search(n: int, workers: int = 1, ceiling: int = DEFAULT_CEILING) -> tuple[int, list[LittlewoodSeq]]:
    """Exact minimum peak sidelobe level over all length-n sequences, with canonical witnesses."""
    _check_n(n, ceiling)
    if n == 1:
        return 0, [canonicalize(LittlewoodSeq((1,)))]
    # any binary sequence has PSL <= n-1; the all-ones word attains it
    parts = _pool_map(_psl_shard, [job + (n - 1,) for job in _shards(n, None)], workers)
    best = min(b for b, _ in parts)
    words = sorted(v for b, ws in parts if b == best for v in ws)
    return best, _finish([_bits_to_seq(v, n) for v in words], True)


def found_are_barker(report: SearchReport) -> bool:
    return all(is_barker(s) for s in report.found)
