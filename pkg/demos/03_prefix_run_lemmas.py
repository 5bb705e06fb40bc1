"""
Prefix runs on the known odd Barker sequences
=============================================

The long Barker sequences start with a run of p equal signs (possibly after
reversing). Their power sums are then -1 mod p for a while, and the
entries come in constant blocks of length p.
"""

from barkerlab.certlab import lemma12_residue_replay, lemma3_block_check, star_swap_normalize

for text in ("+++-+", "+++--+-", "+++---+--+-", "+++++--++-+-+"):
    # try the reversed orientation too
    for seq in (text, text[::-1]):
        norm, swapped = star_swap_normalize(seq)
        blocks = lemma3_block_check(seq)
        res = lemma12_residue_replay(seq)
        print(f"{seq:15s} -> {norm.to_signs():15s} swapped={swapped!s:5s} p={res.details['p']} "
              f"residues={res.details['residues']} blocks={blocks.passed}")

# the step records show which inductive case each even index used
for step in lemma12_residue_replay("+++++--++-+-+").details["steps"]:
    print(step)
