"""Root power sums from coefficients via Newton's identities.

No roots are ever computed. With the polynomial written from the leading
coefficient down, ``c_1 z^d + c_2 z^{d-1} + ... + c_{d+1}``, the power sums
satisfy

    c_1 S_mu + c_2 S_{mu-1} + ... + c_mu S_1 + mu c_{mu+1} = 0

for every mu >= 1, with ``c_j = 0`` past the constant term. Leading
coefficient +-1 keeps every S_mu an integer without division.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .polycore import IntPolynomial, build_Q, from_sequence
from .seqcore import CheckReport, SequenceError, as_seq, is_barker


@dataclass(frozen=True)
class PowerSumSeries:
    """``values[mu - 1]`` is the mu-th power sum; ``source`` is 'S' (roots of Q) or 's' (roots of P)."""
    values: tuple[int, ...]
    source: str

    def __getitem__(self, mu: int) -> int:
        if mu < 1 or mu > len(self.values):
            raise IndexError(f"power sum index {mu} outside 1..{len(self.values)}")
        return self.values[mu - 1]

    @property
    def count(self) -> int:
        return len(self.values)

    def to_json(self) -> str:
        return json.dumps({"source": self.source, "values": [str(v) for v in self.values]})

    @classmethod
    def from_json(cls, text: str) -> PowerSumSeries:
        d = json.loads(text)
        return cls(tuple(int(v) for v in d["values"]), d["source"])


def _newton(desc: list[int], count: int) -> list[int]:
    lead = desc[0]
    sums: list[int] = []
    for mu in range(1, count + 1):
        acc = mu * desc[mu] if mu < len(desc) else 0
        for j in range(2, min(mu, len(desc)) + 1):
            # 1-based c_j pairs with S_{mu+1-j}
            acc += desc[j - 1] * sums[mu - j]
        # lead is +-1, so dividing by it is multiplying by it
        sums.append(-acc * lead)
    return sums


def power_sums_monic(p: IntPolynomial, count: int) -> PowerSumSeries:
    if count < 1:
        raise ValueError("count must be >= 1")
    if p.leading != 1:
        raise ValueError(f"polynomial is not monic (leading coefficient {p.leading})")
    return PowerSumSeries(tuple(_newton(p.descending(), count)), "s")


def power_sums_q(q: IntPolynomial, count: int) -> PowerSumSeries:
    if count < 1:
        raise ValueError("count must be >= 1")
    if q.leading not in (1, -1):
        raise ValueError(f"leading coefficient {q.leading} is not +-1")
    return PowerSumSeries(tuple(_newton(q.descending(), count)), "S")


def residues_mod(series: PowerSumSeries | list[int] | tuple[int, ...], p: int) -> list[int]:
    if p < 2:
        raise ValueError("modulus must be >= 2")
    values = series.values if isinstance(series, PowerSumSeries) else series
    return [v % p for v in values]


def _pattern_input(seq):
    s = as_seq(seq)
    if s.n % 2 == 0:
        raise SequenceError("power-sum patterns need odd n")
    m = (s.n - 1) // 2
    if m < 2:
        raise SequenceError("power-sum patterns need n >= 5")
    if not is_barker(s):
        raise SequenceError("sequence is not Barker")
    return s, m


def verify_S_pattern(seq) -> CheckReport:
    """S_2 = S_4 = ... = S_{2m-2} = -2 and S_odd = 0 on Q built from the sequence."""
    s, m = _pattern_input(seq)
    S = power_sums_q(build_Q(s), 4 * m)
    failures = [f"S_{2 * k} = {S[2 * k]} != -2" for k in range(1, m) if S[2 * k] != -2]
    failures += [f"S_{mu} = {S[mu]} != 0" for mu in range(1, 4 * m + 1, 2) if S[mu] != 0]
    return CheckReport("S_pattern", not failures,
                       {"m": m, "S": {mu: S[mu] for mu in range(1, 2 * m - 1)}},
                       failures)


def verify_s_pattern(seq) -> CheckReport:
    """s_{2k} = -1 for k < m, with 2 s_mu = S_mu (even mu) and S_mu = 0 (odd mu) up to 2m.

    A sequence starting with -1 is negated first so P is monic; the report
    says whether that happened. ``s_1`` is checked against ``-a_2``, which is
    -1 whenever the leading run has length at least 2.
    """
    s, m = _pattern_input(seq)
    negated = s.entries[0] == -1
    if negated:
        s = s.negated()
    sp = power_sums_monic(from_sequence(s), 2 * m)
    S = power_sums_q(build_Q(s), 2 * m)
    failures = [f"s_{2 * k} = {sp[2 * k]} != -1" for k in range(1, m) if sp[2 * k] != -1]
    for mu in range(1, 2 * m + 1):
        want = 2 * sp[mu] if mu % 2 == 0 else 0
        if S[mu] != want:
            failures.append(f"S_{mu} = {S[mu]} but root symmetry gives {want}")
    if sp[1] != -s.entries[1]:
        failures.append(f"s_1 = {sp[1]} != -a_2")
    return CheckReport("s_pattern", not failures,
                       {"m": m, "negated": negated, "s_1": sp[1],
                        "s": {mu: sp[mu] for mu in range(1, 2 * m - 1)}},
                       failures)
