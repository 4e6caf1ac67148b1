"""Logarithm of the flow map of a driver system, in template form.

The log of the iterated-integral series of a system driven by letters
1..N (plus, optionally, their quadratic-variation letters N+1..2N) is a
sum over surjections f of arity n:

    coeff(f) * V_{i_1} ... V_{i_n} I(partition of f)

where the partition lists the fibers of f in target order (the order of
integration), the coefficient is (-1)^d / (n * binomial(n-1, d)) with d
the descent count, and the V's are abstract noncommuting generators, one
per position.  Terms are emitted as templates over symbolic positions;
instantiation with concrete driver letters and the standing assumptions
(continuity, vanishing cross-brackets, named quadratic variations) is
separate, so the exponential blowup over all letter words is opt-in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from ._config import check_grade
from .surjections import Surjection, enumerate_grade
from .words import (
    BracketWord,
    Expansion,
    frac_from_json,
    frac_str,
    frac_to_json,
)

POSITION_SYMBOLS = "ijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class DriverAlphabet:
    """Driver letters 1..n_primary and the standing vanishing assumptions.

    continuous: brackets of three or more factors vanish.
    cross_brackets_zero: brackets of two distinct primary drivers vanish.
    paired_qv: letter i + n_primary names the bracket of driver i with
        itself, so exact self-bracket blocks fold to a single letter and
        quadratic-variation letters count as two bracket factors.
    """

    n_primary: int
    continuous: bool = True
    cross_brackets_zero: bool = True
    paired_qv: bool = True

    def __post_init__(self):
        if self.n_primary < 1:
            raise ValueError("need at least one primary driver")

    @property
    def n_letters(self) -> int:
        """Total letter count: 2N with named quadratic variations, else N."""
        return 2 * self.n_primary if self.paired_qv else self.n_primary

    def is_primary(self, letter: int) -> bool:
        return 1 <= letter <= self.n_primary

    def qv_letter(self, letter: int) -> int:
        """The letter naming the quadratic variation of a primary driver."""
        if not self.is_primary(letter):
            raise ValueError(f"{letter} is not a primary driver")
        return letter + self.n_primary

    def bracket_depth(self, letter: int) -> int:
        """Number of semimartingale factors the letter stands for."""
        if letter < 1 or letter > self.n_letters:
            raise ValueError(f"letter {letter} outside alphabet of {self.n_letters}")
        return 2 if self.paired_qv and letter > self.n_primary else 1


@dataclass(frozen=True)
class LogTerm:
    """One template term: order, fiber partition, exact coefficient."""

    order: int
    partition: tuple[tuple[int, ...], ...]
    coeff: Fraction

    @classmethod
    def from_surjection(cls, f: Surjection) -> "LogTerm":
        n = len(f)
        d = f.descent_count()
        return cls(
            order=n,
            partition=f.fibers(),
            coeff=Fraction((-1) ** d, n * comb(n - 1, d)),
        )

    def surjection(self) -> Surjection:
        """Recover f: position p maps to the index of its block."""
        values = [0] * self.order
        for idx, block_positions in enumerate(self.partition, start=1):
            for p in block_positions:
                values[p - 1] = idx
        return Surjection(values)

    def instantiate(self, letters: Sequence[int]) -> tuple[BracketWord, Fraction]:
        """Fill the template with concrete driver letters, one per position."""
        if len(letters) != self.order:
            raise ValueError(
                f"need {self.order} letters, got {len(letters)}"
            )
        blocks = (
            tuple(sorted(letters[p - 1] for p in positions))
            for positions in self.partition
        )
        return BracketWord(blocks), self.coeff

    def pretty(self) -> str:
        """Theorem-style rendering, e.g. '-1/6 V_i V_j V_k I_{j[ik]}'."""
        syms = [POSITION_SYMBOLS[p % len(POSITION_SYMBOLS)] for p in range(self.order)]
        vs = " ".join(f"V_{s}" for s in syms)
        parts = []
        for positions in self.partition:
            body = "".join(syms[p - 1] for p in positions)
            parts.append(body if len(positions) == 1 else f"[{body}]")
        coeff = "" if self.coeff == 1 else frac_str(self.coeff) + " "
        if self.coeff == -1:
            coeff = "-"
        return f"{coeff}{vs} I_{{{''.join(parts)}}}"

    def to_json_dict(self) -> dict:
        return {
            "n": self.order,
            "partition": [list(b) for b in self.partition],
            "coeff": frac_to_json(self.coeff),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LogTerm":
        return cls(
            order=int(obj["n"]),
            partition=tuple(tuple(int(p) for p in b) for b in obj["partition"]),
            coeff=frac_from_json(obj["coeff"]),
        )


def log_flow_terms(alphabet: DriverAlphabet, order: int) -> list[LogTerm]:
    """All template terms of the flow-map logarithm up to the given order.

    In continuous mode only surjections with fibers of at most two
    positions survive (larger fibers are iterated brackets of three or
    more continuous factors); with jumps every surjection contributes.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    check_grade(order)
    max_fiber = 2 if alphabet.continuous else 0
    out = []
    for n in range(1, order + 1):
        for f in enumerate_grade(n, max_fiber=max_fiber):
            out.append(LogTerm.from_surjection(f))
    return out


def apply_vanishing_rules(e: Expansion, alphabet: DriverAlphabet) -> Expansion:
    """Normalize a concrete-letter expansion under the standing assumptions.

    Per block: a bracket of two distinct primary drivers is zero when
    cross-brackets vanish; a bracket of three or more factors (counting a
    quadratic-variation letter as two) is zero for continuous drivers; an
    exact self-bracket {i, i} of a primary driver folds to its
    quadratic-variation letter when those are named.
    """
    out: dict[BracketWord, Fraction] = {}
    for w, c in e:
        blocks = []
        dead = False
        for b in w:
            if alphabet.cross_brackets_zero:
                primaries = {x for x in b if alphabet.is_primary(x)}
                if len(primaries) >= 2:
                    dead = True
                    break
            if alphabet.continuous:
                depth = sum(alphabet.bracket_depth(x) for x in b)
                if depth >= 3:
                    dead = True
                    break
            if (
                alphabet.paired_qv
                and len(b) == 2
                and b[0] == b[1]
                and alphabet.is_primary(b[0])
            ):
                b = (alphabet.qv_letter(b[0]),)
            blocks.append(b)
        if dead:
            continue
        key = BracketWord(blocks)
        acc = out.get(key, 0) + c
        if acc:
            out[key] = acc
        else:
            del out[key]
    return Expansion._raw(out)


def log_flow_expansion(
    alphabet: DriverAlphabet, order: int, letters: Sequence[int] | None = None
) -> Expansion:
    """Fully instantiated log expansion over concrete driver letters.

    letters defaults to the primary drivers; every template of order n is
    summed over all n-tuples from that pool, then normalized by the
    vanishing rules.  Because only the word side is kept, terms whose
    coefficient operators would need to commute cancel here: this is the
    exact log for commuting coefficient fields (each field against its own
    driver), e.g. the scalar case.  Keep the templates when the fields do
    not commute.  Exponential in the order; meant for small cases.
    """
    pool = tuple(letters) if letters is not None else tuple(
        range(1, alphabet.n_primary + 1)
    )
    data: dict[BracketWord, Fraction] = {}
    for term in log_flow_terms(alphabet, order):
        for combo in _tuples(pool, term.order):
            w, c = term.instantiate(combo)
            acc = data.get(w, 0) + c
            if acc:
                data[w] = acc
            else:
                del data[w]
    return apply_vanishing_rules(Expansion._raw(data), alphabet)


def _tuples(pool: tuple, n: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for rest in _tuples(pool, n - 1):
        for x in pool:
            yield rest + (x,)


def terms_to_json(terms: Iterable[LogTerm]) -> str:
    return json.dumps({"terms": [t.to_json_dict() for t in terms]})


def terms_from_json(text: str) -> list[LogTerm]:
    return [LogTerm.from_json_dict(t) for t in json.loads(text)["terms"]]
