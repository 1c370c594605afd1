# Verified D(n) tuples: a set of distinct positive integers such that the
# product of any two members plus n is a perfect square. A verified tuple
# carries the square root witness r for every pair, so downstream audits
# never have to trust, only to recompute.

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import ceil_sqrt, integer_sqrt, is_perfect_square, pow_compare, square_root_if_square


class InputError(ValueError):
    """Malformed input, as opposed to a genuine verification failure."""


class EmptyInputError(InputError):
    pass


class DuplicateElementError(InputError):
    pass


class NonPositiveElementError(InputError):
    pass


class ZeroNError(InputError):
    pass


class InvalidRangeError(InputError):
    pass


@dataclass(frozen=True)
class PairWitness:
    """a*b + n = r*r with a < b and r >= 0."""

    a: int
    b: int
    r: int


@dataclass(frozen=True)
class VerificationFailure:
    """First pair (in lexicographic order) whose product plus n is not a square."""

    n: int
    elements: tuple[int, ...]
    pair: tuple[int, int]

    def __str__(self) -> str:
        a, b = self.pair
        return f"{a}*{b}+{self.n} = {a * b + self.n} is not a perfect square"


@dataclass(frozen=True)
class DTuple:
    """A fully witnessed D(n) tuple, elements strictly increasing.

    Construct through verify(); the constructor itself does not check.
    """

    n: int
    elements: tuple[int, ...]
    witnesses: tuple[PairWitness, ...]  # sorted by (a, b)

    @property
    def size(self) -> int:
        return len(self.elements)

    def witness_for(self, a: int, b: int) -> PairWitness:
        if a > b:
            a, b = b, a
        for w in self.witnesses:
            if w.a == a and w.b == b:
                return w
        raise KeyError((a, b))


@dataclass(frozen=True)
class RangeClassification:
    """Element counts of one tuple split by the standard ranges.

    small        [1, n^2]
    intermediate (n^2, |n|^3)
    large        [|n|^3, infinity)

    and the epsilon split of everything above n^2:

    eps_intermediate (n^2, |n|^(2+eps)]
    eps_large        (|n|^(2+eps), infinity)

    For |n| = 1 the written ranges collide (the intermediate band is
    empty and 1 falls in both end ranges); the small slot wins and
    degenerate_ranges is set. That is a property of the ranges, not an
    input error.
    """

    n: int
    epsilon: Fraction
    small_count: int
    intermediate_count: int
    large_count: int
    eps_intermediate_count: int
    eps_large_count: int
    degenerate_ranges: bool


def _check_inputs(elements, n) -> tuple[int, ...]:
    if n == 0:
        raise ZeroNError("n must be nonzero")
    els = tuple(sorted(elements))
    if not els:
        raise EmptyInputError("need at least one element")
    for x in els:
        if x < 1:
            raise NonPositiveElementError(f"element {x} is not a positive integer")
    for x, y in zip(els, els[1:]):
        if x == y:
            raise DuplicateElementError(f"element {x} repeats")
    return els


def verify(elements, n: int) -> DTuple | VerificationFailure:
    """Check the defining property pair by pair and collect witnesses.

    Returns a witnessed DTuple, or a VerificationFailure naming the first
    offending pair in lexicographic order. Malformed input (empty, has a
    duplicate, a non-positive element, or n = 0) raises InputError.
    """
    els = _check_inputs(elements, n)
    wits = []
    for a, b in itertools.combinations(els, 2):
        r = square_root_if_square(a * b + n)
        if r is None:
            return VerificationFailure(n=n, elements=els, pair=(a, b))
        wits.append(PairWitness(a, b, r))
    return DTuple(n=n, elements=els, witnesses=tuple(wits))


def extend(t: DTuple, lo: int, hi: int) -> list[int]:
    """All d in [lo, hi], not already a member, with x*d + n square for every member x.

    Exact and exhaustive over the window. The scan iterates square root
    values for the smallest member (the cheapest progression) and square
    tests the rest.
    """
    if lo > hi:
        raise InvalidRangeError(f"empty range [{lo}, {hi}]")
    lo = max(lo, 1)
    n = t.n
    base = t.elements[0]
    members = set(t.elements)
    rest = t.elements[:0:-1]  # larger members first, they reject fastest
    out = []
    for d in candidates_in_window(base, n, lo, hi):
        if d in members:
            continue
        if all(is_perfect_square(x * d + n) for x in rest):
            out.append(d)
    return out


def candidates_in_window(a: int, n: int, lo: int, hi: int) -> list[int]:
    """All d in [lo, hi] with a*d + n a perfect square, ascending.

    Walks t over ceil(sqrt(max(0, a*lo+n))) .. floor(sqrt(a*hi+n)) and keeps
    d = (t*t - n) / a when it divides. Shared by extend() and the search
    module's public candidates_for().
    """
    if lo > hi:
        raise InvalidRangeError(f"empty range [{lo}, {hi}]")
    hi_val = a * hi + n
    if hi_val < 0:
        return []
    t = ceil_sqrt(max(0, a * lo + n))
    t_hi = integer_sqrt(hi_val)
    out = []
    while t <= t_hi:
        num = t * t - n
        if num % a == 0:
            d = num // a
            if lo <= d <= hi:
                out.append(d)
        t += 1
    return out


def classify(t: DTuple, epsilon: Fraction) -> RangeClassification:
    """Count members in each range band, all boundaries decided exactly.

    The epsilon boundary x <= |n|^(2+eps) with eps = p/q is evaluated as
    x^q <= |n|^(2q+p) in integers, no rounding anywhere.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    n = t.n
    n_abs = abs(n)
    n_sq = n * n
    n_cube = n_abs ** 3
    p = epsilon.numerator
    q = epsilon.denominator
    small = inter = large = eps_inter = eps_large = 0
    for x in t.elements:
        if x <= n_sq:
            small += 1
        elif x >= n_cube:
            large += 1
        else:
            inter += 1
        if x > n_sq:
            # x <= n_abs^(2 + p/q)  iff  x^q <= n_abs^(2q + p)
            if pow_compare(x, q, n_abs, 2 * q + p) <= 0:
                eps_inter += 1
            else:
                eps_large += 1
    return RangeClassification(
        n=n,
        epsilon=epsilon,
        small_count=small,
        intermediate_count=inter,
        large_count=large,
        eps_intermediate_count=eps_inter,
        eps_large_count=eps_large,
        degenerate_ranges=(n_abs == 1),
    )
