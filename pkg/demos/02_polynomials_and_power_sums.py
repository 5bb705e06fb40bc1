"""
From sequences to polynomials and power sums
============================================

"""

from barkerlab.newton import power_sums_monic, power_sums_q, verify_S_pattern, verify_s_pattern
from barkerlab.polycore import build_Q, eval_at_one, from_sequence, q_structure_check

b13 = "+++++--++-+-+"
P = from_sequence(b13)
print("P(z) =", P)

# Q = P * P^*, with the autocorrelation profile mirrored around z^12
Q = build_Q(b13)
print("Q(z) =", Q)
print("Q(1) =", eval_at_one(Q), "= P(1)^2 =", eval_at_one(P) ** 2)
rep = q_structure_check(b13)
print(rep.passed, rep.details["star_identity"], rep.details["q_identity"])

# power sums of the roots, straight from the coefficients
S = power_sums_q(Q, 12)
s = power_sums_monic(P, 12)
print("S:", S.values)
print("s:", s.values)

# even power sums sit at -2 and -1 below the middle of the range
print(verify_S_pattern(b13).passed, verify_s_pattern(b13).passed)

# a cubic with roots 1, 2, 3 as a sanity check
from barkerlab.polycore import IntPolynomial
print(power_sums_monic(IntPolynomial((-6, 11, -6, 1)), 4).values)  # 6, 14, 36, 98
