"""Logarithm of the identity series of surjections.

The identity series is the unit plus the sum over n of the identity
surjection of each arity.  Its formal logarithm under the surjection
product has an exact closed form: the coefficient of a surjection f of
arity n with d descents is

    (-1)^d / (n * binomial(n-1, d)).

Three independent routes to that element are provided: the alternating
power series of log(1 + x), the closed form above, and the alternating
sum over descent-subset sums.  They must agree exactly; the test suite
checks this.  Applying the element to iterated-integral words yields the
log of the flow map, the reason this module exists.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

from ._config import check_grade
from .surjections import (
    SurjElement,
    Surjection,
    descent_sum_within,
    diamond,
    enumerate_grade,
)


def _check_order(n: int) -> None:
    if n < 1:
        raise ValueError("max grade must be >= 1")
    check_grade(n)


def identity_series(max_grade: int) -> SurjElement:
    """Unit plus the identity surjection of every arity up to max_grade."""
    _check_order(max_grade)
    return SurjElement(
        [(Surjection(), 1)]
        + [(Surjection.identity(n), 1) for n in range(1, max_grade + 1)]
    )


def log_identity_series(max_grade: int) -> SurjElement:
    """Formal log of the identity series by the alternating power series.

    log(1 + x) = sum over k >= 1 of (-1)^(k-1)/k x^k with x the sum of the
    positive-arity identities, truncated beyond max_grade.
    """
    _check_order(max_grade)
    x = SurjElement(
        [(Surjection.identity(n), 1) for n in range(1, max_grade + 1)]
    )
    out = SurjElement.zero()
    power = SurjElement.unit()
    for k in range(1, max_grade + 1):
        power = diamond(power, x, max_grade=max_grade)
        out = out + power * Fraction((-1) ** (k - 1), k)
    return out


def log_identity_closed_form(max_grade: int) -> SurjElement:
    """The same element from the descent-count coefficient law directly."""
    _check_order(max_grade)
    data = {}
    for n in range(1, max_grade + 1):
        for f in enumerate_grade(n):
            d = f.descent_count()
            data[f] = Fraction((-1) ** d, n * comb(n - 1, d))
    return SurjElement._raw(data)


def log_identity_subset_form(max_grade: int) -> SurjElement:
    """Third route: alternating sum of descent-subset sums.

    For each arity n, sum over subsets I of {1, ..., n-1} of
    (-1)^|I| / (|I| + 1) times the sum of surjections with descents in I.
    Exponential in n; intended as a cross-check, not a compute path.
    """
    _check_order(max_grade)
    out = SurjElement.zero()
    for n in range(1, max_grade + 1):
        for I in _subsets(range(1, n)):
            coeff = Fraction((-1) ** len(I), len(I) + 1)
            out = out + descent_sum_within(n, I) * coeff
    return out


def _subsets(items: Iterable[int]):
    items = list(items)
    for mask in range(1 << len(items)):
        yield [x for i, x in enumerate(items) if mask >> i & 1]


def subset_alternating_sum(n: int, positions: Iterable[int]) -> Fraction:
    """Sum of (-1)^|J| / (|J|+1) over supersets J of the given set in [n-1].

    Equals (-1)^|I| / (n * binomial(n-1, |I|)); the identity that collapses
    the subset form into the closed form.  Exact rational arithmetic.
    """
    base = set(positions)
    rest = [i for i in range(1, n) if i not in base]
    total = Fraction(0)
    for extra in _subsets(rest):
        size = len(base) + len(extra)
        total += Fraction((-1) ** size, size + 1)
    return total


def exp_element(e: SurjElement, max_grade: int) -> SurjElement:
    """Truncated exponential: sum of diamond powers over factorials.

    The input must have no grade-0 part, so the sum terminates at the
    max_grade-th power.
    """
    _check_order(max_grade)
    if Surjection() in e:
        raise ValueError("exp needs an element with no grade-0 term")
    e = e.truncate_grade(max_grade)
    out = SurjElement.unit()
    power = SurjElement.unit()
    fact = 1
    for k in range(1, max_grade + 1):
        power = diamond(power, e, max_grade=max_grade)
        fact *= k
        out = out + power * Fraction(1, fact)
    return out


def strichartz_restriction(max_grade: int) -> SurjElement:
    """Bijection part of the log element.

    Restricting to permutations recovers the classical flow-logarithm
    coefficients of chronological calculus: (-1)^d / (n * binomial(n-1, d))
    with d the number of strict descents of the permutation.
    """
    _check_order(max_grade)
    full = log_identity_closed_form(max_grade)
    return SurjElement(
        (f, c) for f, c in full if f.is_bijection()
    )
