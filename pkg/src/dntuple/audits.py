"""Exact audits of the classical gap and growth facts behind the bounds.

Every check here runs on concrete verified tuples and decides with integer
or rational arithmetic only. The audits cannot prove anything; they exist
to catch defects in our own arithmetic (a genuine verified quadruple that
fails a proven inequality means the artifact is wrong, not the theorem).

Check names (lemma2, lemma3, lemma5, corollary4) follow the conventional
numbering for these statements and match the CLI's --checks vocabulary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .exact import pow_le, square_root_if_square
from .tuples import DTuple, InputError

# gap thresholds, kept rational so no verdict touches a float
_C_OVER_A = Fraction(388, 100)
_D_OVER_C = Fraction(489, 100)


class PreconditionNotMetError(ValueError):
    """The instance is outside a check's hypothesis (not a violation)."""


class WitnessNotFoundError(RuntimeError):
    """Exhausted the e-scan without a witness.

    Inconclusive rather than contradictory: the witness is only guaranteed
    to exist somewhere in Z, and the scan covers a finite window.
    """

    def __init__(self, triple: DTuple, search_bound: int):
        self.triple = triple
        self.search_bound = search_bound
        super().__init__(
            f"no witness e in [-{search_bound}, {search_bound}] for "
            f"{triple.elements} with n={triple.n}"
        )


@dataclass(frozen=True)
class LemmaThreeWitness:
    """Integers (e, x, y, z) tying a triple a<b<c together.

    With n the tuple's shift and r the root of a*b + n, a valid witness
    satisfies, exactly:

        a*e + n^2 = x^2,  b*e + n^2 = y^2,  c*e + n^2 = z^2
        n^2*c = n^2*(a+b) + n*e + 2*(a*b*e + r*(sign_x*x)*(sign_y*y))

    x, y, z are the nonnegative roots; the sign bits record which signed
    combination makes the second identity close.
    """

    e: int
    x: int
    y: int
    z: int
    sign_x: int
    sign_y: int

    def satisfies(self, triple: DTuple) -> bool:
        """Re-derive all four equations from scratch against the triple."""
        n = triple.n
        a, b, c = triple.elements
        n2 = n * n
        if self.x * self.x != a * self.e + n2:
            return False
        if self.y * self.y != b * self.e + n2:
            return False
        if self.z * self.z != c * self.e + n2:
            return False
        r = triple.witness_for(a, b).r
        rxy = r * (self.sign_x * self.x) * (self.sign_y * self.y)
        return n2 * c == n2 * (a + b) + n * self.e + 2 * (a * b * self.e + rxy)


@dataclass(frozen=True)
class GapAuditRecord:
    """Exact ratios and verdicts for one quadruple slice a<b<c<d."""

    quad: DTuple
    lemma5_c_ratio: Fraction | None = None  # c/a, tested against 3.88
    lemma5_d_ratio: Fraction | None = None  # d/c, tested against 4.89
    corollary_margin: Fraction | None = None  # d*n^2 / (b*c), tested against 1
    verdicts: Mapping[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


class Lemma2Verdict(enum.Enum):
    NOT_APPLICABLE = "not_applicable"
    PASS = "pass"
    FAIL = "fail"


def _triple_context(triple: DTuple) -> tuple[int, int, int, int, int, int, int]:
    if triple.size != 3:
        raise InputError(f"witness search takes exactly three elements, got {triple.size}")
    a, b, c = triple.elements
    r = triple.witness_for(a, b).r
    s = triple.witness_for(a, c).r
    t = triple.witness_for(b, c).r
    return a, b, c, r, s, t, triple.n


def _witness_at(
    e: int, a: int, b: int, c: int, r: int, n: int
) -> LemmaThreeWitness | None:
    # all three shifted products must be perfect squares before the
    # identity is worth checking
    n2 = n * n
    va = a * e + n2
    if va < 0:
        return None
    x = square_root_if_square(va)
    if x is None:
        return None
    y = square_root_if_square(b * e + n2)
    if y is None:
        return None
    z = square_root_if_square(c * e + n2)
    if z is None:
        return None
    target = n2 * c
    base = n2 * (a + b) + n * e + 2 * a * b * e
    for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        if base + 2 * r * (sx * x) * (sy * y) == target:
            return LemmaThreeWitness(e=e, x=x, y=y, z=z, sign_x=sx, sign_y=sy)
    return None


def find_witness_e(triple: DTuple, search_bound: int | None = None) -> LemmaThreeWitness:
    """Find integers (e, x, y, z) witnessing the triple identity.

    Tries the closed-form candidate e0 = n*(a+b+c) + 2*a*b*c - 2*r*s*t
    first. The candidate is a hint, never trusted: it only wins if the
    substitution checks pass exactly. Otherwise falls back to scanning
    e over [-search_bound, search_bound] in ascending order (restricted
    to e with c*e + n^2 >= 0, below which no witness can exist).

    search_bound defaults to 10*c*|n|. Raises WitnessNotFoundError when
    the scan exhausts; the error reports the window, since a miss only
    means "not found here".
    """
    a, b, c, r, s, t, n = _triple_context(triple)
    if search_bound is None:
        search_bound = 10 * c * abs(n)
    elif search_bound < 1:
        raise InputError(f"search_bound must be positive, got {search_bound}")

    e0 = n * (a + b + c) + 2 * a * b * c - 2 * r * s * t
    found = _witness_at(e0, a, b, c, r, n)
    if found is not None:
        return found

    floor = -(n * n // c)  # c*e + n^2 < 0 below this
    for e in range(max(-search_bound, floor), search_bound + 1):
        if e == e0:
            continue
        found = _witness_at(e, a, b, c, r, n)
        if found is not None:
            return found
    raise WitnessNotFoundError(triple, search_bound)


def _gap_elements(quad: DTuple) -> tuple[int, int, int, int]:
    # shared hypothesis gate for the two gap checks: |n| >= 2 and n^2
    # strictly below the whole quadruple
    if quad.size != 4:
        raise InputError(f"gap audits take exactly four elements, got {quad.size}")
    n = quad.n
    if abs(n) < 2:
        raise PreconditionNotMetError(f"need |n| >= 2, got n={n}")
    a, b, c, d = quad.elements
    if a <= n * n:
        raise PreconditionNotMetError(f"need n^2 < a, got a={a} with n^2={n * n}")
    return a, b, c, d


def audit_gap_lemma5(quad: DTuple) -> GapAuditRecord:
    """Check the gap bounds c > 3.88*a and d > 4.89*c on a quadruple.

    Applies when |n| >= 2 and n^2 < a; outside that hypothesis raises
    PreconditionNotMetError. Ratios are exact rationals and the verdicts
    are strict rational comparisons.
    """
    a, b, c, d = _gap_elements(quad)
    c_ratio = Fraction(c, a)
    d_ratio = Fraction(d, c)
    return GapAuditRecord(
        quad=quad,
        lemma5_c_ratio=c_ratio,
        lemma5_d_ratio=d_ratio,
        verdicts={"lemma5_c": c_ratio > _C_OVER_A, "lemma5_d": d_ratio > _D_OVER_C},
    )


def audit_gap_corollary(quad: DTuple) -> GapAuditRecord:
    """Check d*n^2 > b*c on a quadruple, under the same hypothesis gate."""
    a, b, c, d = _gap_elements(quad)
    n = quad.n
    margin = Fraction(d * n * n, b * c)
    return GapAuditRecord(
        quad=quad,
        corollary_margin=margin,
        verdicts={"corollary4": d * n * n > b * c},
    )


def lemma2_verdict(b: int, c: int, d: int, n: int) -> Lemma2Verdict:
    """Decide the growth implication: if c > (b*|n|)^11 then d <= c^131.

    NOT_APPLICABLE when the hypothesis does not fire, which is the
    expected outcome at desk scale; the conclusion is compared through
    bit-length fast paths so astronomically large d stay cheap.
    """
    if c <= (b * abs(n)) ** 11:
        return Lemma2Verdict.NOT_APPLICABLE
    return Lemma2Verdict.PASS if pow_le(d, c, 131) else Lemma2Verdict.FAIL


def audit_lemma2(quad: DTuple) -> Lemma2Verdict:
    if quad.size != 4:
        raise InputError(f"gap audits take exactly four elements, got {quad.size}")
    _, b, c, d = quad.elements
    return lemma2_verdict(b, c, d, quad.n)
