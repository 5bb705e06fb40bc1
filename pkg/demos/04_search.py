"""
Searching for Barker sequences
==============================

"""

from barkerlab.searchlab import RULES, exhaustive_search, pruned_search, psl_search, range_scan

# every length up to 20, checked exhaustively
for row in range_scan(1, 20, mode="exhaustive"):
    print(f"{row.n:3d} {row.barker_count:2d} {row.example}")

# odd lengths can use the pruned search; compare how many nodes each rule set touches
for k in range(len(RULES) + 1):
    rep = pruned_search(21, RULES[:k])
    print(f"{','.join(RULES[:k]) or '(none)':45s} nodes={rep.nodes_explored:8d} found={len(rep.found)}")

# pruned search reaches further quickly
for n in (23, 25, 27, 29):
    rep = pruned_search(n)
    print(n, len(rep.found), rep.nodes_explored, rep.prune_stats)

# all raw Barker sequences of length 13 (the orbit has 4 members)
print([s.to_signs() for s in exhaustive_search(13, canonical=False).found])

# smallest possible peak sidelobe for lengths with no Barker sequence
for n in (6, 8, 9, 10, 12, 14):
    best, wit = psl_search(n)
    print(n, best, len(wit))
