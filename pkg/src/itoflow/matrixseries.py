"""Entry-wise iterated-integral expansions for linear matrix flows.

The flow of dX = X_- dM, X_0 = Id, is the series over n of the n-fold
left-point integral of M against itself.  Entry (i, j) of the n-fold
term is the sum over index chains i = i_0, i_1, ..., i_n = j of the word
of matrix-entry letters M^{i_0 i_1} ... M^{i_(n-1) i_n}.  Entry letters
are packed into single integers row-major so the scalar bracket-word
machinery applies unchanged: letter(i, j) = (i - 1) * dim + j.

The logarithm applies the surjection log element grade by grade to each
entry word; the exponential multiplies matrices whose entry products are
quasi-shuffle products.  exp(log) equals the flow series exactly, grade
by grade, in rational arithmetic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable

from ._config import check_weight
from .logseries import log_identity_closed_form
from .quasishuffle import qsh
from .surjections import apply_element
from .words import BracketWord, Expansion

LETTER_ENCODING = "row-major: letter(i, j) = (i - 1) * dim + j, 1-based"


def entry_letter(i: int, j: int, dim: int) -> int:
    """Pack matrix position (i, j) into a single positive letter."""
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise ValueError(f"entry ({i},{j}) outside a {dim}x{dim} matrix")
    return (i - 1) * dim + j


def letter_entry(letter: int, dim: int) -> tuple[int, int]:
    """Inverse of entry_letter."""
    if not 1 <= letter <= dim * dim:
        raise ValueError(f"letter {letter} outside a {dim}x{dim} matrix")
    return (letter - 1) // dim + 1, (letter - 1) % dim + 1


class MatrixExpansion:
    """Square grid of bracket-word expansions with exact coefficients."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Iterable[Iterable[Expansion]]):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        grid = tuple(tuple(row) for row in entries)
        if len(grid) != dim or any(len(row) != dim for row in grid):
            raise ValueError(f"entries must form a {dim}x{dim} grid")
        for row in grid:
            for e in row:
                if not isinstance(e, Expansion):
                    raise TypeError("entries must be Expansions")
        self.dim = dim
        self.entries = grid

    @classmethod
    def identity(cls, dim: int) -> "MatrixExpansion":
        return cls(
            dim,
            [
                [
                    Expansion.unit() if i == j else Expansion.zero()
                    for j in range(dim)
                ]
                for i in range(dim)
            ],
        )

    @classmethod
    def zero(cls, dim: int) -> "MatrixExpansion":
        return cls(dim, [[Expansion.zero()] * dim for _ in range(dim)])

    def __getitem__(self, ij: tuple[int, int]) -> Expansion:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixExpansion):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __add__(self, other: "MatrixExpansion") -> "MatrixExpansion":
        self._check(other)
        return MatrixExpansion(
            self.dim,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "MatrixExpansion") -> "MatrixExpansion":
        self._check(other)
        return MatrixExpansion(
            self.dim,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __mul__(self, scalar) -> "MatrixExpansion":
        return self.map_entries(lambda e: e * scalar)

    __rmul__ = __mul__

    def _check(self, other: "MatrixExpansion") -> None:
        if not isinstance(other, MatrixExpansion) or other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def matmul(self, other: "MatrixExpansion", max_weight: int | None = None) -> "MatrixExpansion":
        """Matrix product with quasi-shuffle products of entries.

        max_weight truncates every product term above that weight, keeping
        truncated-series arithmetic from exploding past the working order.
        """
        self._check(other)
        d = self.dim
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = Expansion.zero()
                for k in range(d):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + qsh(a, b, max_weight=max_weight)
                row.append(acc)
            rows.append(row)
        return MatrixExpansion(d, rows)

    def map_entries(self, fn: Callable[[Expansion], Expansion]) -> "MatrixExpansion":
        return MatrixExpansion(
            self.dim, [[fn(e) for e in row] for row in self.entries]
        )

    def truncate_weight(self, max_weight: int) -> "MatrixExpansion":
        return self.map_entries(lambda e: e.truncate_weight(max_weight))

    def restrict_weight(self, weight: int) -> "MatrixExpansion":
        return self.map_entries(lambda e: e.restrict_weight(weight))

    def max_weight(self) -> int:
        return max(e.max_weight() for row in self.entries for e in row)

    def has_constant_part(self) -> bool:
        return any(
            BracketWord() in e for row in self.entries for e in row
        )

    def pretty(self) -> str:
        lines = []
        for i in range(self.dim):
            for j in range(self.dim):
                lines.append(f"({i + 1},{j + 1}): {self.entries[i][j].pretty()}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"MatrixExpansion(dim={self.dim})"

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "letter_encoding": LETTER_ENCODING,
            "entries": [
                [e.to_json_dict() for e in row] for row in self.entries
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MatrixExpansion":
        return cls(
            int(obj["dim"]),
            [
                [Expansion.from_json_dict(e) for e in row]
                for row in obj["entries"]
            ],
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "MatrixExpansion":
        return cls.from_json_dict(json.loads(text))


def integrate_against(me: MatrixExpansion) -> MatrixExpansion:
    """Left-point integral of a matrix expansion against dM.

    Entry (i, j) of the result sums entry (i, k) of the input with the
    letter of M^{k j} appended as a new final singleton block.
    """
    d = me.dim
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            acc: dict[BracketWord, Fraction] = {}
            for k in range(d):
                letter = entry_letter(k + 1, j + 1, d)
                for w, c in me.entries[i][k]:
                    key = BracketWord._wrap(tuple(w) + ((letter,),))
                    tot = acc.get(key, 0) + c
                    if tot:
                        acc[key] = tot
                    else:
                        del acc[key]
            row.append(Expansion._raw(acc))
        rows.append(row)
    return MatrixExpansion(d, rows)


def matrix_ito_taylor(dim: int, order: int) -> MatrixExpansion:
    """Flow series to the given order: identity plus iterated integrals of M."""
    if order < 0:
        raise ValueError("order must be >= 0")
    check_weight(order)
    total = MatrixExpansion.identity(dim)
    layer = MatrixExpansion.identity(dim)
    for _ in range(order):
        layer = integrate_against(layer)
        total = total + layer
    return total


def matrix_log(dim: int, order: int) -> MatrixExpansion:
    """Logarithm of the flow series, entry-wise, to the given order.

    The surjection log element of each grade n acts on every length-n
    entry word of the flow series; fibers of two or more positions become
    bracket blocks of entry letters.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    check_weight(order)
    log_el = log_identity_closed_form(order)
    taylor = matrix_ito_taylor(dim, order)

    def act(e: Expansion) -> Expansion:
        out = Expansion.zero()
        for w, c in e:
            if len(w) == 0:
                continue  # the identity part has no log contribution
            out = out + apply_element(log_el, w, weight_graded=True) * c
        return out

    return taylor.map_entries(act)


def matrix_exp(me: MatrixExpansion, order: int) -> MatrixExpansion:
    """Truncated exponential via quasi-shuffle matrix powers.

    The input must have no constant (weight-0) part, so the series stops
    at the order-th power.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    check_weight(order)
    if me.has_constant_part():
        raise ValueError("exp needs an expansion with no weight-0 part")
    me = me.truncate_weight(order)
    total = MatrixExpansion.identity(me.dim)
    power = MatrixExpansion.identity(me.dim)
    fact = 1
    for k in range(1, order + 1):
        power = power.matmul(me, max_weight=order)
        fact *= k
        total = total + power * Fraction(1, fact)
    return total
