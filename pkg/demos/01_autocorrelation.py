"""
Autocorrelation, identities and canonical forms
===============================================

"""

from barkerlab.seqcore import (autocorrelation, barker_odd_structure, canonicalize, identity_suite,
                               is_barker, merit_factor, orbit, parse_sequence)

# three spellings of the same length-13 sequence
b13 = parse_sequence("+++++--++-+-+")
print(parse_sequence("1111100110101") == b13, parse_sequence("1,1,1,1,1,-1,-1,1,1,-1,1,-1,1") == b13)

# every off-peak correlation is 0 or 1
prof = autocorrelation(b13)
print(list(prof))
print("Barker:", is_barker(b13), " merit factor:", merit_factor(b13))

# odd correlations vanish and even ones equal (-1)^m
print(barker_odd_structure(b13).details)

# the unconditional identities hold for any sequence, the others only for Barker ones
print(identity_suite("+++-++-"))
print(identity_suite(b13))

# negation, reversal and alternation keep the Barker property
for s in sorted({t.to_signs() for t in orbit(b13)}):
    print(s, is_barker(s))
print("canonical:", canonicalize(b13).to_signs())
