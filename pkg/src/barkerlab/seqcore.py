"""±1 sequences, aperiodic autocorrelation and the identities they satisfy.

Sequences are stored 0-based as tuples of ints, but every index that
appears in a report or an error message is 1-based: ``a_1`` is the first
entry, ``a_n`` the last.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class SequenceError(ValueError):
    """Bad sequence text or a sequence that violates an operation's precondition."""


@dataclass(frozen=True)
class LittlewoodSeq:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(a) for a in self.entries)
        if not entries:
            raise SequenceError("a Littlewood sequence needs at least one entry")
        for j, a in enumerate(entries, start=1):
            if a not in (-1, 1):
                raise SequenceError(f"a_{j} = {a} is not in {{-1, +1}}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def a(self, j: int) -> int:
        """Entry ``a_j`` with the 1-based index used throughout the reports."""
        if not 1 <= j <= self.n:
            raise IndexError(f"index {j} outside 1..{self.n}")
        return self.entries[j - 1]

    def negated(self) -> LittlewoodSeq:
        return LittlewoodSeq(tuple(-a for a in self.entries))

    def reversed(self) -> LittlewoodSeq:
        return LittlewoodSeq(self.entries[::-1])

    def alternated(self) -> LittlewoodSeq:
        # a_j -> (-1)^j a_j with 1-based j
        return LittlewoodSeq(tuple(a if j % 2 == 0 else -a
                                   for j, a in enumerate(self.entries, start=1)))

    def to_signs(self) -> str:
        return "".join("+" if a > 0 else "-" for a in self.entries)

    def __str__(self) -> str:
        return self.to_signs()


def as_seq(seq: LittlewoodSeq | Sequence[int] | str) -> LittlewoodSeq:
    if isinstance(seq, LittlewoodSeq):
        return seq
    if isinstance(seq, str):
        return parse_sequence(seq)
    return LittlewoodSeq(tuple(seq))


_SIGN_RE = re.compile(r"[+\-]+")
_BINARY_RE = re.compile(r"[01]+")


def parse_sequence(text: str) -> LittlewoodSeq:
    """Parse ``"++-"``, ``"110"`` or ``"1,1,-1"`` into a sequence.

    Binary strings map ``1`` to +1 and ``0`` to -1. Whitespace is ignored
    everywhere; the first symbol is ``a_1``.
    """
    s = "".join(text.split())
    if not s:
        raise SequenceError("empty sequence text")
    if "," in s:
        out = []
        for tok in s.split(","):
            if tok not in ("1", "-1", "+1"):
                raise SequenceError(f"invalid entry {tok!r} in comma-separated sequence")
            out.append(int(tok))
        return LittlewoodSeq(tuple(out))
    if _SIGN_RE.fullmatch(s):
        return LittlewoodSeq(tuple(1 if ch == "+" else -1 for ch in s))
    if _BINARY_RE.fullmatch(s):
        return LittlewoodSeq(tuple(1 if ch == "1" else -1 for ch in s))
    bad = next((ch for ch in s if ch not in "+-01,"), None)
    if bad is not None:
        raise SequenceError(f"invalid character {bad!r} in sequence text")
    raise SequenceError("mixed sign and binary formats in sequence text")


@dataclass(frozen=True)
class AutocorrProfile:
    values: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def sidelobes(self) -> tuple[int, ...]:
        return self.values[1:]

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "c_k"])
        for k, c in enumerate(self.values):
            w.writerow([k, c])
        return buf.getvalue()


def autocorrelation(seq) -> AutocorrProfile:
    a = as_seq(seq).entries
    n = len(a)
    return AutocorrProfile(tuple(sum(a[j] * a[j + k] for j in range(n - k))
                                 for k in range(n)))


def peak_sidelobe(seq) -> int:
    side = autocorrelation(seq).sidelobes
    return max((abs(c) for c in side), default=0)


def is_barker(seq) -> bool:
    return all(abs(c) <= 1 for c in autocorrelation(seq).sidelobes)


def parity_identity_check(seq, k: int) -> bool:
    """Product of a_j a_{j+k} over j=1..n-k against (-1)^((n-k-c_k)/2)."""
    s = as_seq(seq)
    n, a = s.n, s.entries
    if not 0 <= k <= n - 1:
        raise SequenceError(f"lag {k} outside 0..{n - 1}")
    prod = 1
    for j in range(n - k):
        prod *= a[j] * a[j + k]
    c_k = sum(a[j] * a[j + k] for j in range(n - k))
    diff = n - k - c_k
    if diff % 2:
        return False
    return prod == (-1) ** (diff // 2)


def mod4_fold_check(seq) -> bool:
    s = as_seq(seq)
    n = s.n
    if n < 2:
        raise SequenceError("mod-4 fold needs n >= 2")
    c = autocorrelation(s).values
    return all((c[k] + c[n - k] - n) % 4 == 0 for k in range(1, n))


def _odd_m(seq, what: str) -> tuple[LittlewoodSeq, int]:
    s = as_seq(seq)
    if s.n % 2 == 0:
        raise SequenceError(f"{what} is only defined for odd n (got n={s.n})")
    return s, (s.n - 1) // 2


@dataclass
class CheckReport:
    """Outcome of an identity check; ``failures`` holds readable 1-based details."""
    name: str
    passed: bool
    details: dict
    failures: list[str]

    def __bool__(self) -> bool:
        return self.passed


def barker_odd_structure(seq) -> CheckReport:
    s, m = _odd_m(seq, "odd-length Barker structure")
    if not is_barker(s):
        raise SequenceError("sequence is not Barker")
    c = autocorrelation(s).values
    failures = []
    for j in range(1, m + 1):
        if c[2 * j - 1] % 4:
            failures.append(f"c_{2 * j - 1} = {c[2 * j - 1]} not divisible by 4")
        if c[2 * j] != (-1) ** m:
            failures.append(f"c_{2 * j} = {c[2 * j]} != (-1)^{m}")
    return CheckReport(
        "barker_odd_structure", not failures,
        {"m": m,
         "c_odd": {2 * j - 1: c[2 * j - 1] for j in range(1, m + 1)},
         "c_even": {2 * j: c[2 * j] for j in range(1, m + 1)}},
        failures)


def skew_check(seq) -> bool:
    s, m = _odd_m(seq, "skew relation")
    a, n = s.entries, s.n
    # a_{k+1} a_{n-k} with 1-based indices -> a[k] a[n-1-k]
    return all(a[k] * a[n - 1 - k] == (-1) ** (m + k) for k in range(n))


def eq3_check(seq) -> bool:
    s, m = _odd_m(seq, "alternating partial-sum identity")
    a = s.entries
    for k in range(m):
        total = sum(a[i - 1] * a[2 * k + 1 - i] * (-1) ** (i + 1)
                    for i in range(1, k + 1))
        if 2 * total != 1 + (-1) ** (k + 1):
            return False
    return True


def eq4_check(seq) -> bool:
    s, m = _odd_m(seq, "adjacent-product identity")
    for k in range(1, m):
        if s.a(k) * s.a(k + 1) != s.a(2 * k) * s.a(2 * k + 1):
            return False
    return True


def orbit(seq) -> list[LittlewoodSeq]:
    """The (at most 8) images under negation, reversal and alternating negation."""
    s = as_seq(seq)
    out = []
    for base in (s, s.alternated()):
        for t in (base, base.reversed()):
            out.append(t)
            out.append(t.negated())
    return out


def canonicalize(seq) -> LittlewoodSeq:
    # tuple order already puts -1 before +1
    return min(orbit(seq), key=lambda t: t.entries)


def merit_factor(seq) -> Fraction | float:
    """n^2 / (2 * sum c_k^2) as an exact fraction; ``inf`` when every sidelobe is 0."""
    s = as_seq(seq)
    if s.n < 2:
        raise SequenceError("merit factor needs n >= 2")
    energy = sum(c * c for c in autocorrelation(s).sidelobes)
    if energy == 0:
        return float("inf")
    return Fraction(s.n * s.n, 2 * energy)


def identity_suite(seq) -> dict[str, str]:
    """Run every applicable identity and return name -> 'pass' | 'fail' | 'n/a'.

    Odd-length identities are evaluated on non-Barker input too; callers
    decide how to label them.
    """
    s = as_seq(seq)
    n = s.n
    res = {}
    res["parity_identity"] = "pass" if all(parity_identity_check(s, k) for k in range(n)) else "fail"
    res["mod4_fold"] = ("pass" if mod4_fold_check(s) else "fail") if n >= 2 else "n/a"
    if n % 2:
        res["skew"] = "pass" if skew_check(s) else "fail"
        res["eq3"] = "pass" if eq3_check(s) else "fail"
        res["eq4"] = "pass" if eq4_check(s) else "fail"
        if is_barker(s):
            res["odd_structure"] = "pass" if barker_odd_structure(s) else "fail"
        else:
            res["odd_structure"] = "n/a"
    else:
        for name in ("skew", "eq3", "eq4", "odd_structure"):
            res[name] = "n/a"
    return res

