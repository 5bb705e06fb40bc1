"""Prefix-run lemmas on concrete sequences, and nonexistence certificates.

A certificate for odd ``n > 13`` holds one record per odd prefix-run length
``p`` in ``[3, n]``. Writing ``n = u*p + r`` each record lands in exactly one
case and carries a witness that can be re-checked with integer arithmetic:

* CASE1-CASE3: a run of consecutive indices ``front`` and its mirror
  ``back = n + 1 - front``. Both lie in ``[1, n-p-1]`` and each sits inside
  one p-block, so block constancy makes each run constant, while the skew
  relation ``a_{k+1} a_{n-k} = (-1)^(m+k)`` flips the sign between adjacent
  mirror entries. The two facts cannot both hold.
* CASE4, CASE5: a quadratic in ``p`` that must be <= 0 for a Barker
  sequence to exist, recorded with its (positive) value.
* RESIDUAL: parameter ranges that force ``n <= 13``; never valid for n > 13.

Records are held column-wise in numpy arrays so the whole range
n <= 10001 (about 12.5 million records) builds and verifies in seconds.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .newton import power_sums_monic, residues_mod
from .polycore import from_sequence
from .seqcore import CheckReport, LittlewoodSeq, SequenceError, as_seq, is_barker

EVEN_P_REJECT, CASE1, CASE2, CASE3, CASE4, CASE5, RESIDUAL = range(7)
CASE_NAMES = ("EVEN_P_REJECT", "CASE1", "CASE2", "CASE3", "CASE4", "CASE5", "RESIDUAL")
CASE_CODES = {name: code for code, name in enumerate(CASE_NAMES)}

SCHEMA = "barker-nonexistence/1"
EVEN_P_EXCLUSION = ("even p is impossible: a_k a_{k+1} = a_{2k} a_{2k+1} with k = p/2 "
                    "gives 1 = a_p a_{p+1} = -1")
CONCLUSION = "no Barker sequence of length n exists"
CASE4_NOTE = "P(1) >= p-4 >= 3 forces Q(1) >= 9, so m is even and Q(1) = 4m+1 = 2n-1"
RESIDUAL_BOUND = 13

_NONE, _TRIPLE, _REPAIRED = 0, 1, 2
_SOURCE_NAMES = {_TRIPLE: "triple", _REPAIRED: "repaired"}
_SOURCE_CODES = {"triple": _TRIPLE, "repaired": _REPAIRED}


class CertificateError(ValueError):
    """Out-of-scope input or a structurally malformed certificate document."""


# --------------------------------------------------------------------------
# lemma replays on concrete sequences

def prefix_run(seq) -> int:
    a = as_seq(seq).entries
    p = 0
    while p < len(a) and a[p] == a[0]:
        p += 1
    return p


def _normalized(s: LittlewoodSeq) -> LittlewoodSeq:
    return s if s.entries[0] == 1 else s.negated()


def star_swap_normalize(seq) -> tuple[LittlewoodSeq, bool]:
    """Orient the sequence (a_1 = +1) so that its prefix run is at least 3.

    The reversal of the sequence corresponds to the reciprocal polynomial.
    """
    s = _normalized(as_seq(seq))
    if s.n % 2 == 0:
        raise SequenceError("star swap is defined for odd n")
    if prefix_run(s) >= 3:
        return s, False
    t = _normalized(s.reversed())
    if prefix_run(t) >= 3:
        return t, True
    raise SequenceError(f"neither {s} nor its reversal has a prefix run >= 3")


def _lemma_input(seq) -> tuple[LittlewoodSeq, int, int, bool]:
    s = as_seq(seq)
    if s.n % 2 == 0:
        raise SequenceError("lemma replays need odd n")
    if not is_barker(s):
        raise SequenceError("lemma replays need a Barker sequence")
    s, swapped = star_swap_normalize(s)
    return s, (s.n - 1) // 2, prefix_run(s), swapped


def lemma3_block_check(seq) -> CheckReport:
    """Entries in each block u'p+1..u'p+p, cut off at n-p-1, are all equal."""
    s, m, p, swapped = _lemma_input(seq)
    bound = s.n - p - 1
    violation = None
    for i in range(1, bound):
        same_block = (i - 1) // p == i // p
        if same_block and s.a(i) != s.a(i + 1):
            violation = (i, i + 1)
            break
    failures = [] if violation is None else [f"a_{violation[0]} != a_{violation[1]} inside one block"]
    return CheckReport("lemma3_blocks", violation is None,
                       {"p": p, "bound": bound, "swapped": swapped, "violation": violation},
                       failures)


def lemma12_residue_replay(seq) -> CheckReport:
    """s_mu = -1 (mod p) for mu = 1..2m-1-p, plus the exact even-index steps.

    Each inductive step from an even mu to mu+1 is tagged 'case1' or 'case2'
    (mu = vp - 1). Every step checks s_{mu+p+1} = s_mu = -1 exactly; case1
    steps also check a_{mu+p+1} a_{mu+p+2} = a_h a_{h+1} = 1 with
    h = (mu+p+1)/2.
    """
    s, m, p, swapped = _lemma_input(seq)
    top = 2 * m - 1 - p
    failures: list[str] = []
    steps = []
    residues: list[int] = []
    if top >= 1:
        sp = power_sums_monic(from_sequence(s), max(top, 2 * m - 2))
        residues = residues_mod(list(sp.values[:top]), p)
        for mu, res in enumerate(residues, start=1):
            if res != p - 1:
                failures.append(f"s_{mu} = {sp[mu]} is not -1 mod {p}")
        for mu in range(2, top, 2):
            step = {"mu": mu, "case": "case2" if (mu + 1) % p == 0 else "case1",
                    "s_mu": sp[mu], "s_mu_p_1": sp[mu + p + 1]}
            if sp[mu] != -1 or sp[mu + p + 1] != -1:
                failures.append(f"s_{mu} = {sp[mu]}, s_{mu + p + 1} = {sp[mu + p + 1]}, expected -1")
            if step["case"] == "case1":
                h = (mu + p + 1) // 2
                lhs = s.a(mu + p + 1) * s.a(mu + p + 2)
                rhs = s.a(h) * s.a(h + 1)
                step["adjacent_products"] = (lhs, rhs)
                if not lhs == rhs == 1:
                    failures.append(f"a_{mu + p + 1} a_{mu + p + 2} = {lhs}, a_{h} a_{h + 1} = {rhs}")
            steps.append(step)
    return CheckReport("lemma12_residues", not failures,
                       {"p": p, "range_top": top, "swapped": swapped,
                        "residues": residues, "steps": steps},
                       failures)


# --------------------------------------------------------------------------
# certificate construction (column form)

_COLUMNS = ("p", "u", "r", "case", "start", "flen", "back", "skew", "bound",
            "fblock", "bblock", "front_value", "source", "ineq", "q1", "upper",
            "lower", "resid")


def _check_scope(n: int) -> None:
    if n % 2 == 0:
        raise CertificateError(f"n={n} is even; even-length Barker sequences are not covered")
    if n <= 13:
        raise CertificateError(f"n={n} is out of certificate scope (needs odd n > 13)")


def _sign(e: np.ndarray) -> np.ndarray:
    """(-1)**e for integer arrays."""
    return 1 - 2 * (e & 1)


def _run_ok(n: int, p: np.ndarray, start: np.ndarray, length: int) -> np.ndarray:
    """Front run start..start+length-1 and its mirror both inside [1, n-p-1] and one block each."""
    bound = n - p - 1
    last = start + length - 1
    back_lo = n + 1 - last
    back_hi = n + 1 - start
    return ((start >= 1) & (last <= bound) & (back_lo >= 1) & (back_hi <= bound)
            & ((start - 1) // p == (last - 1) // p)
            & ((back_lo - 1) // p == (back_hi - 1) // p))


def _build_columns(n: int, p: np.ndarray) -> dict[str, np.ndarray]:
    p = np.asarray(p, dtype=np.int64)
    k = len(p)
    m = (n - 1) // 2
    cols = _empty_columns(k)
    cols["p"][:] = p
    np.divmod(n, p, out=(cols["u"], cols["r"]))
    u, r = cols["u"], cols["r"]
    case = np.where(
        u >= 3, np.where(p == 3, CASE2, CASE1),
        np.where(u == 2,
                 np.where((p >= 5) & (r >= 4), CASE3, np.where(p >= 7, CASE4, RESIDUAL)),
                 np.where(p >= 7, CASE5, RESIDUAL)))
    cols["case"][:] = case

    ix = np.flatnonzero(case <= CASE3)
    pp, cc = p[ix], case[ix]
    start = np.where(cc == CASE2, pp + 4, pp + 2)
    flen = np.full(len(ix), 3)
    source = np.full(len(ix), _TRIPLE)
    # the natural triple can straddle a block edge; then use the first aligned pair from p+2 on
    todo = np.flatnonzero(~_run_ok(n, pp, start, 3))
    flen[todo] = 2
    source[todo] = _REPAIRED
    cand = pp[todo] + 2
    while len(todo):
        if (cand > n).any():
            raise AssertionError(f"no block-aligned witness pair for n={n}")
        hit = _run_ok(n, pp[todo], cand, 2)
        start[todo[hit]] = cand[hit]
        todo, cand = todo[~hit], cand[~hit] + 1

    cols["start"][ix] = start
    cols["flen"][ix] = flen
    cols["source"][ix] = source
    cols["back"][ix] = n + 1 - start
    cols["skew"][ix] = _sign(m + start - 1)
    cols["bound"][ix] = n - pp - 1
    cols["fblock"][ix] = (start - 1) // pp
    cols["bblock"][ix] = (n - start) // pp
    cols["front_value"][ix] = np.where(cc == CASE3, -1, 0)

    i4 = np.flatnonzero(case == CASE4)
    p4 = p[i4]
    cols["ineq"][i4] = p4 * p4 - 4 * p4 - 5
    cols["upper"][i4] = 4 * p4 + 5
    cols["lower"][i4] = p4 * p4
    i5 = np.flatnonzero(case == CASE5)
    p5 = p[i5]
    cols["ineq"][i5] = p5 * p5 - 6 * p5 + 4
    cols["upper"][i5] = 4 * p5 - 3
    cols["lower"][i5] = (p5 - 1) ** 2
    cols["q1"][i4] = 2 * n - 1
    cols["q1"][i5] = 2 * n - 1
    cols["resid"][case == RESIDUAL] = RESIDUAL_BOUND
    cols["shape_ok"] = np.ones(k, dtype=bool)
    return cols


def _empty_columns(k: int) -> dict[str, np.ndarray]:
    # one backing table; each column is a row view, "table" compares in one shot
    table = np.zeros((len(_COLUMNS), k), dtype=np.int64)
    cols = {name: table[i] for i, name in enumerate(_COLUMNS)}
    cols["table"] = table
    return cols


@dataclass
class CaseRecord:
    n: int
    p: int
    u: int
    r: int
    case: str
    witness: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.p, "u": self.u, "r": self.r, "case": self.case,
                "witness": self.witness}

    def validate(self) -> bool:
        """Re-check this record's arithmetic on its own."""
        try:
            cols = _columns_from_records(self.n, [self.to_dict()])
        except CertificateError:
            return False
        if not _record_checks(self.n, cols).all():
            return False
        ref = _build_columns(self.n, cols["p"])
        return bool(np.array_equal(cols["table"], ref["table"]))


@dataclass
class NonexistenceCertificate:
    n: int
    cols: dict[str, np.ndarray] = field(repr=False)
    even_p_exclusion: str = EVEN_P_EXCLUSION
    conclusion: str = CONCLUSION

    def __len__(self) -> int:
        return len(self.cols["p"])

    @property
    def records(self) -> list[CaseRecord]:
        return [_record_at(self.n, self.cols, i) for i in range(len(self))]

    def case_counts(self) -> dict[str, int]:
        counts = np.bincount(self.cols["case"], minlength=len(CASE_NAMES))
        return {CASE_NAMES[c]: int(k) for c, k in enumerate(counts) if k}

    def to_dict(self) -> dict[str, Any]:
        return {"schema": SCHEMA, "n": self.n, "even_p_exclusion": self.even_p_exclusion,
                "records": [rec.to_dict() for rec in self.records],
                "conclusion": self.conclusion}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: Any) -> NonexistenceCertificate:
        if not isinstance(doc, dict):
            raise CertificateError("certificate must be a JSON object")
        keys = {"schema", "n", "even_p_exclusion", "records", "conclusion"}
        if set(doc) != keys:
            raise CertificateError(f"certificate keys {sorted(doc)} != {sorted(keys)}")
        if doc["schema"] != SCHEMA:
            raise CertificateError(f"unknown schema {doc['schema']!r}")
        n = _int(doc["n"], "n")
        if not isinstance(doc["records"], list):
            raise CertificateError("records must be a list")
        for key in ("even_p_exclusion", "conclusion"):
            if not isinstance(doc[key], str):
                raise CertificateError(f"{key} must be a string")
        return cls(n, _columns_from_records(n, doc["records"]),
                   doc["even_p_exclusion"], doc["conclusion"])

    @classmethod
    def from_json(cls, text: str) -> NonexistenceCertificate:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"not valid JSON: {exc}") from None
        return cls.from_dict(doc)


def _record_at(n: int, cols: dict[str, np.ndarray], i: int) -> CaseRecord:
    case = int(cols["case"][i])
    w: dict[str, Any]
    if case in (CASE1, CASE2, CASE3):
        L, start = int(cols["flen"][i]), int(cols["start"][i])
        back, skew = int(cols["back"][i]), int(cols["skew"][i])
        w = {"front": [start + t for t in range(L)],
             "back": [back - t for t in range(L)],
             "bound": int(cols["bound"][i]),
             "blocks": [int(cols["fblock"][i]), int(cols["bblock"][i])],
             "skew_signs": [skew * (-1) ** t for t in range(L)],
             "source": _SOURCE_NAMES.get(int(cols["source"][i]), "?")}
        if case == CASE3:
            w["front_value"] = int(cols["front_value"][i])
    elif case == CASE4:
        w = {"inequality": int(cols["ineq"][i]), "q_at_one": int(cols["q1"][i]),
             "upper": int(cols["upper"][i]), "p_squared": int(cols["lower"][i]),
             "note": CASE4_NOTE}
    elif case == CASE5:
        w = {"inequality": int(cols["ineq"][i]), "q_at_one": int(cols["q1"][i]),
             "upper": int(cols["upper"][i]), "p_minus_1_squared": int(cols["lower"][i])}
    else:
        w = {"bound": int(cols["resid"][i])}
    return CaseRecord(n, int(cols["p"][i]), int(cols["u"][i]), int(cols["r"][i]),
                      CASE_NAMES[case], w)


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise CertificateError(f"{what} must be an integer, got {x!r}")
    return x


def _int_list(x: Any, what: str) -> list[int]:
    if not isinstance(x, list) or not 2 <= len(x) <= 3:
        raise CertificateError(f"{what} must be a list of 2 or 3 integers")
    return [_int(v, what) for v in x]


_WITNESS_KEYS = {
    CASE1: {"front", "back", "bound", "blocks", "skew_signs", "source"},
    CASE2: {"front", "back", "bound", "blocks", "skew_signs", "source"},
    CASE3: {"front", "back", "bound", "blocks", "skew_signs", "source", "front_value"},
    CASE4: {"inequality", "q_at_one", "upper", "p_squared", "note"},
    CASE5: {"inequality", "q_at_one", "upper", "p_minus_1_squared"},
    RESIDUAL: {"bound"},
}


def _columns_from_records(n: int, records: list[Any]) -> dict[str, np.ndarray]:
    """Parse JSON records into columns.

    Key sets and types are enforced here (CertificateError). Whether the
    front run is consecutive, the back run is its mirror and the skew signs
    alternate goes into ``shape_ok``; the arithmetic lives in
    ``_record_checks``.
    """
    k = len(records)
    cols = _empty_columns(k)
    shape_ok = np.ones(k, dtype=bool)
    for i, rec in enumerate(records):
        if not isinstance(rec, dict) or set(rec) != {"p", "u", "r", "case", "witness"}:
            raise CertificateError(f"record {i} must have keys p, u, r, case, witness")
        for key in ("p", "u", "r"):
            cols[key][i] = _int(rec[key], f"record {i} {key}")
        if rec["case"] not in CASE_CODES or rec["case"] == "EVEN_P_REJECT":
            raise CertificateError(f"record {i}: unknown case tag {rec['case']!r}")
        case = CASE_CODES[rec["case"]]
        cols["case"][i] = case
        w = rec["witness"]
        if not isinstance(w, dict) or set(w) != _WITNESS_KEYS[case]:
            raise CertificateError(f"record {i}: witness keys do not match {rec['case']}")
        if case in (CASE1, CASE2, CASE3):
            front = _int_list(w["front"], "front")
            back = _int_list(w["back"], "back")
            skew = _int_list(w["skew_signs"], "skew_signs")
            blocks = w["blocks"]
            if not isinstance(blocks, list) or len(blocks) != 2:
                raise CertificateError(f"record {i}: blocks must be a pair")
            L = len(front)
            shape_ok[i] = (
                len(back) == len(skew) == L
                and all(front[t] == front[0] + t for t in range(L))
                and all(back[t] == n + 1 - front[t] for t in range(L))
                and all(skew[t] == skew[0] * (-1) ** t for t in range(L)))
            cols["flen"][i] = L
            cols["start"][i] = front[0]
            cols["back"][i] = back[0]
            cols["skew"][i] = skew[0]
            cols["bound"][i] = _int(w["bound"], "bound")
            cols["fblock"][i] = _int(blocks[0], "blocks")
            cols["bblock"][i] = _int(blocks[1], "blocks")
            cols["source"][i] = _SOURCE_CODES.get(w["source"], -1)
            if case == CASE3:
                cols["front_value"][i] = _int(w["front_value"], "front_value")
        elif case in (CASE4, CASE5):
            cols["ineq"][i] = _int(w["inequality"], "inequality")
            cols["q1"][i] = _int(w["q_at_one"], "q_at_one")
            cols["upper"][i] = _int(w["upper"], "upper")
            low_key = "p_squared" if case == CASE4 else "p_minus_1_squared"
            cols["lower"][i] = _int(w[low_key], low_key)
            if case == CASE4 and w["note"] != CASE4_NOTE:
                shape_ok[i] = False
        else:
            cols["resid"][i] = _int(w["bound"], "bound")
    cols["shape_ok"] = shape_ok
    return cols


# --------------------------------------------------------------------------
# public construction and verification

def case_classify(n: int, p: int) -> CaseRecord:
    _check_scope(n)
    if p % 2 == 0:
        raise CertificateError("even p is excluded at certificate level, not classified")
    if not 3 <= p <= n:
        raise CertificateError(f"p={p} outside 3..{n}")
    return _record_at(n, _build_columns(n, np.array([p])), 0)


def nonexistence_certificate(n: int) -> NonexistenceCertificate:
    _check_scope(n)
    return NonexistenceCertificate(n, _build_columns(n, np.arange(3, n + 1, 2)))


def _record_checks(n: int, c: dict[str, np.ndarray]) -> np.ndarray:
    """Per-record soundness, recomputed from n and p plus the stored witness."""
    p, u, r, case = c["p"], c["u"], c["r"], c["case"]
    m = (n - 1) // 2
    ok = (p >= 3) & (p <= n) & ((p & 1) == 1) & c["shape_ok"]
    ok &= (u * p + r == n) & (r >= 0) & (r < p)

    # membership: exactly one of the six case conditions holds, and it is the stored one
    conds = (
        (u >= 3) & (p >= 5),
        (u >= 3) & (p == 3) & (n >= 13),
        (u == 2) & (p >= 5) & (r >= 4),
        (u == 2) & (p >= 7) & (r <= 3),
        (u == 1) & (p >= 7),
        ((u == 2) & (p <= 5) & (r <= 3)) | ((u == 1) & (p <= 5)),
    )
    hits = np.zeros(len(p), dtype=np.int64)
    for code, cond in enumerate(conds, start=CASE1):
        hits += cond
        ok &= ~cond | (case == code)
    ok &= hits == 1

    ix = np.flatnonzero((case >= CASE1) & (case <= CASE3))
    pp, cc = p[ix], case[ix]
    L, start, back = c["flen"][ix], c["start"][ix], c["back"][ix]
    bound = n - pp - 1
    last = start + L - 1
    back_lo = back - L + 1
    w = (L >= 2) & (L <= 3) & (c["bound"][ix] == bound)
    w &= (start >= 1) & (last <= bound) & (back_lo >= 1) & (back <= bound)
    w &= back == n + 1 - start
    fb, bb = c["fblock"][ix], c["bblock"][ix]
    w &= ((start - 1) // pp == fb) & ((last - 1) // pp == fb)
    w &= ((back_lo - 1) // pp == bb) & ((back - 1) // pp == bb)
    # skew relation at k = start-1; shape_ok already forced the alternation
    w &= c["skew"][ix] == _sign(m + start - 1)
    triple = (L == 3) & (start == np.where(cc == CASE2, pp + 4, pp + 2))
    w &= np.where(triple, c["source"][ix] == _TRIPLE, c["source"][ix] == _REPAIRED)
    # CASE3 runs sit in the block opened by a_{p+1} = -1
    w &= np.where(cc == CASE3, (fb == 1) & (c["front_value"][ix] == -1),
                  c["front_value"][ix] == 0)
    ok[ix] &= w

    q1 = 2 * n - 1
    i4 = np.flatnonzero(case == CASE4)
    p4, u4 = p[i4], u[i4]
    ineq, upper, lower = c["ineq"][i4], c["upper"][i4], c["lower"][i4]
    ok[i4] &= ((ineq == p4 * p4 - 4 * p4 - 5) & (ineq > 0) & (lower == p4 * p4)
               & (upper == 2 * u4 * p4 + 5) & (c["q1"][i4] == q1)
               & (q1 <= upper) & (lower > upper))
    i5 = np.flatnonzero(case == CASE5)
    p5, r5 = p[i5], r[i5]
    ineq, upper, lower = c["ineq"][i5], c["upper"][i5], c["lower"][i5]
    ok[i5] &= ((ineq == p5 * p5 - 6 * p5 + 4) & (ineq > 0) & (lower == (p5 - 1) ** 2)
               & (upper == 4 * p5 - 3) & (2 * (p5 + r5) - 1 <= upper)
               & (c["q1"][i5] == q1) & (q1 <= upper) & (lower > upper))
    # residual parameters force n = u*p + r <= 13: such a record is flagged, never accepted
    ok[case == RESIDUAL] = False
    return ok


def verify_certificate(cert: NonexistenceCertificate | dict | str) -> bool:
    """Independent re-check: coverage of odd p, case membership, witness arithmetic.

    The document must also equal the canonical certificate for its n field
    by field, so any single altered value is rejected. Raises
    CertificateError only for structurally malformed documents.
    """
    if isinstance(cert, str):
        cert = NonexistenceCertificate.from_json(cert)
    elif isinstance(cert, dict):
        cert = NonexistenceCertificate.from_dict(cert)
    n = cert.n
    if n % 2 == 0 or n <= 13:
        return False
    if cert.even_p_exclusion != EVEN_P_EXCLUSION or cert.conclusion != CONCLUSION:
        return False
    c = cert.cols
    if not np.array_equal(c["p"], np.arange(3, n + 1, 2)):
        return False
    if not _record_checks(n, c).all():
        return False
    ref = _build_columns(n, c["p"])
    return bool(np.array_equal(c["table"], ref["table"]))


def _one(n: int) -> tuple[int, bool, dict[str, int]]:
    cert = nonexistence_certificate(n)
    return n, verify_certificate(cert), cert.case_counts()


def certificate_range(n_lo: int, n_hi: int, workers: int = 1) -> list[tuple[int, bool, dict[str, int]]]:
    """Build and verify certificates for every odd n in [n_lo, n_hi], ordered by n."""
    ns = [n for n in range(max(n_lo, 15), n_hi + 1) if n % 2]
    if workers <= 1:
        return [_one(n) for n in ns]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        out = list(pool.map(_one, ns, chunksize=64))
    return sorted(out)
