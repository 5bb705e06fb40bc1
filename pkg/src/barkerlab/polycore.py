"""Exact integer polynomials and the P, P*, Q constructions built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .seqcore import CheckReport, SequenceError, as_seq, autocorrelation, skew_check


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coeffs[i]`` is the coefficient of ``z**i``.

    Trailing zeros are stripped on construction. The zero polynomial has
    ``coeffs == ()`` and ``degree == -1``.
    """
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def descending(self) -> list[int]:
        """Coefficients from the leading term down to the constant."""
        return list(self.coeffs[::-1])

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        return multiply(self, other)

    __rmul__ = __mul__

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and i) else str(mag)
            if i == 1:
                body += "z"
            elif i > 1:
                body += f"z^{i}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
            raise ValueError("polynomial JSON must be an array of decimal strings")
        return cls(tuple(int(x) for x in data))


def from_sequence(seq) -> IntPolynomial:
    """a_1 z^{n-1} + a_2 z^{n-2} + ... + a_n."""
    return IntPolynomial(as_seq(seq).entries[::-1])


def multiply(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if p.is_zero() or q.is_zero():
        return IntPolynomial()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, x in enumerate(p.coeffs):
        if x:
            for j, y in enumerate(q.coeffs):
                out[i + j] += x * y
    return IntPolynomial(tuple(out))


def reciprocal(p: IntPolynomial, d: int) -> IntPolynomial:
    """z^d p(1/z): reverse the coefficients inside the window 0..d."""
    if p.degree > d:
        raise ValueError(f"degree {p.degree} exceeds reciprocal window {d}")
    return IntPolynomial(tuple(p.coeff(d - i) for i in range(d + 1)))


def negate_variable(p: IntPolynomial) -> IntPolynomial:
    """p(-z)."""
    return IntPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)))


def eval_at_one(p: IntPolynomial) -> int:
    return sum(p.coeffs)


def _odd(seq):
    s = as_seq(seq)
    if s.n % 2 == 0:
        raise SequenceError(f"Q is built for odd n only (got n={s.n})")
    return s, (s.n - 1) // 2


def build_Q(seq) -> IntPolynomial:
    """P(z) * P*(z) for an odd-length sequence; degree 4m, middle coefficient n."""
    s, m = _odd(seq)
    p = from_sequence(s)
    return multiply(p, reciprocal(p, 2 * m))


def q_structure_check(seq) -> CheckReport:
    """Evenness of Q, b_{2j} = (-1)^m, and the P* = (-1)^m P(-z) identity.

    ``b_j`` is the coefficient of ``z^{2m+j}`` (equivalently of ``z^{2m-j}``).
    The report names the first offending j when the structure fails.
    """
    s, m = _odd(seq)
    if not skew_check(s):
        raise SequenceError("q_structure_check requires a sequence satisfying the skew relation")
    p = from_sequence(s)
    q = build_Q(s)
    sign = (-1) ** m
    b = {j: q.coeff(2 * m + j) for j in range(1, 2 * m + 1)}
    failures = []
    first_bad = None
    for j in range(1, 2 * m + 1):
        if q.coeff(2 * m - j) != b[j]:
            failures.append(f"Q not palindromic at j={j}")
        want = 0 if j % 2 else sign
        if b[j] != want:
            failures.append(f"b_{j} = {b[j]}, expected {want}")
        if failures and first_bad is None:
            first_bad = j
    star = reciprocal(p, 2 * m)
    star_ok = star == negate_variable(p) * sign
    if not star_ok:
        failures.append("P* != (-1)^m P(-z)")
    q_alt = multiply(p, negate_variable(p)) * sign
    q_ok = q_alt == q
    if not q_ok:
        failures.append("Q != (-1)^m P(z) P(-z)")
    return CheckReport(
        "q_structure", not failures,
        {"m": m, "b": b, "first_offending_j": first_bad,
         "star_identity": star_ok, "q_identity": q_ok},
        failures)


def q_matches_profile(seq) -> bool:
    """Q's coefficients are the autocorrelation profile mirrored about z^{2m}."""
    s, m = _odd(seq)
    q = build_Q(s)
    c = autocorrelation(s).values
    return all(q.coeff(2 * m + k) == c[k] and q.coeff(2 * m - k) == c[k]
               for k in range(s.n)) and q.degree == 4 * m
