"""The graded algebra of surjections acting on bracket words.

A surjection is stored as its value sequence (f(1), ..., f(n)) covering
1..k, k = max value; the empty sequence is the unit.  The product of f and
g sums every h of arity n+m whose first n values pack to f and last m
values pack to g; it is associative, unital and noncommutative, and its
action on words (merge blocks along fibers) turns products of iterated
integrals into quasi-shuffle products.

Descent positions (value not strictly increasing) drive all coefficient
formulas downstream: sums of surjections with prescribed descent sets are
provided exactly and as subset-closed sums, related by inclusion-exclusion.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from ._config import check_grade
from .kernels import (
    descent_count as _descent_count,
    descent_set as _descent_set,
    diamond_words,
    is_surjection,
    pack_word,
    surjections as _enumerate,
    apply_to_blocks,
)
from .words import (
    BracketWord,
    Expansion,
    WordLike,
    as_word,
    frac_from_json,
    frac_to_json,
)


class Surjection(tuple):
    """Value sequence of a surjective map [n] -> [k]; empty is the unit."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()) -> "Surjection":
        vals = tuple(int(v) for v in values)
        if not is_surjection(vals):
            raise ValueError(f"{vals} is not onto 1..max")
        return super().__new__(cls, vals)

    @classmethod
    def _wrap(cls, values) -> "Surjection":
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n: int) -> "Surjection":
        return cls._wrap(range(1, n + 1))

    @property
    def grade(self) -> int:
        """Arity n (the number of positions)."""
        return len(self)

    @property
    def onto(self) -> int:
        """The target size k."""
        return max(self) if self else 0

    def descent_set(self) -> tuple[int, ...]:
        """Positions i < n (1-based) where value i >= value i+1."""
        return _descent_set(self)

    def descent_count(self) -> int:
        return _descent_count(self)

    def is_bijection(self) -> bool:
        return self.onto == len(self)

    def fibers(self) -> tuple[tuple[int, ...], ...]:
        """Preimages of 1..k, each a sorted tuple of 1-based positions."""
        out = [[] for _ in range(self.onto)]
        for pos, val in enumerate(self, start=1):
            out[val - 1].append(pos)
        return tuple(tuple(fb) for fb in out)

    def __str__(self) -> str:
        if not self:
            return "()"
        if self.onto <= 9:
            return "".join(str(v) for v in self)
        return "(" + ",".join(str(v) for v in self) + ")"

    def __repr__(self) -> str:
        return f"Surjection({str(self)!r})"


def parse_surjection(text: str) -> Surjection:
    """Inverse of str: digit string '212' or comma list '(2,1,2)'; '()' is unit."""
    text = text.strip()
    if text in ("", "()"):
        return Surjection()
    if text.startswith("(") and text.endswith(")"):
        return Surjection(int(p) for p in text[1:-1].split(","))
    if not text.isdigit():
        raise ValueError(f"cannot parse surjection from {text!r}")
    return Surjection(int(ch) for ch in text)


def pack(values: Sequence[int]) -> Surjection:
    """Rank-normalize any positive-integer word onto 1..k, e.g. 35731 -> 23421."""
    return Surjection._wrap(pack_word(tuple(values)))


def surjection_sort_key(f) -> tuple:
    """Grade first, then lexicographic on value sequences."""
    return (len(f), tuple(f))


def enumerate_surjections(n: int, k: int) -> list[Surjection]:
    """All surjections [n] onto [k] in lexicographic order."""
    if n == 0 and k == 0:
        return [Surjection()]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return [Surjection._wrap(f) for f in _enumerate(n, k)]


def enumerate_surjections_bounded(n: int, k: int, max_fiber: int = 2) -> list[Surjection]:
    """Surjections [n] onto [k] with every preimage of size <= max_fiber.

    max_fiber=2 is the index set that survives for continuous drivers.
    """
    if n == 0 and k == 0:
        return [Surjection()]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if max_fiber < 1:
        raise ValueError("max_fiber must be >= 1")
    return [Surjection._wrap(f) for f in _enumerate(n, k, max_fiber)]


def enumerate_grade(n: int, max_fiber: int = 0) -> list[Surjection]:
    """All surjections of arity n, any target size, in (k, lex) order."""
    if n == 0:
        return [Surjection()]
    out = []
    lo = (n + max_fiber - 1) // max_fiber if max_fiber else 1
    for k in range(lo, n + 1):
        out.extend(Surjection._wrap(f) for f in _enumerate(n, k, max_fiber))
    return out


SurjLike = Union[Surjection, Sequence[int]]


def as_surjection(f: SurjLike) -> Surjection:
    return f if isinstance(f, Surjection) else Surjection(f)


class SurjElement:
    """Finite rational linear combination of surjections, graded by arity."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Surjection, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for f, c in items:
                f = as_surjection(f)
                c = Fraction(c)
                if not c:
                    continue
                acc = data.get(f, 0) + c
                if acc:
                    data[f] = acc
                else:
                    data.pop(f, None)
        self._terms = data

    @classmethod
    def zero(cls) -> "SurjElement":
        return cls()

    @classmethod
    def unit(cls) -> "SurjElement":
        return cls([(Surjection(), 1)])

    @classmethod
    def of(cls, f: SurjLike, coeff=1) -> "SurjElement":
        return cls([(as_surjection(f), coeff)])

    @classmethod
    def _raw(cls, data: dict) -> "SurjElement":
        e = cls.__new__(cls)
        e._terms = data
        return e

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Surjection, Fraction]]:
        for f in sorted(self._terms, key=surjection_sort_key):
            yield f, self._terms[f]

    def __getitem__(self, f: SurjLike) -> Fraction:
        return self._terms.get(as_surjection(f), Fraction(0))

    def __contains__(self, f: SurjLike) -> bool:
        return as_surjection(f) in self._terms

    def support(self) -> list[Surjection]:
        return sorted(self._terms, key=surjection_sort_key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurjElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "SurjElement") -> "SurjElement":
        if not isinstance(other, SurjElement):
            return NotImplemented
        out = dict(self._terms)
        for f, c in other._terms.items():
            acc = out.get(f, 0) + c
            if acc:
                out[f] = acc
            else:
                out.pop(f, None)
        return SurjElement._raw(out)

    def __sub__(self, other: "SurjElement") -> "SurjElement":
        if not isinstance(other, SurjElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "SurjElement":
        return SurjElement._raw({f: -c for f, c in self._terms.items()})

    def __mul__(self, scalar) -> "SurjElement":
        if isinstance(scalar, SurjElement):
            raise TypeError("use diamond for products of surjection elements")
        if not isinstance(scalar, (int, Fraction)):
            raise TypeError(
                f"coefficients are exact rationals; got {type(scalar).__name__} "
                "(wrap in fractions.Fraction)"
            )
        c = Fraction(scalar)
        if not c:
            return SurjElement()
        return SurjElement._raw({f: b * c for f, b in self._terms.items()})

    __rmul__ = __mul__

    def grades(self) -> list[int]:
        return sorted({len(f) for f in self._terms})

    def grade_part(self, n: int) -> "SurjElement":
        return SurjElement._raw(
            {f: c for f, c in self._terms.items() if len(f) == n}
        )

    def truncate_grade(self, max_grade: int) -> "SurjElement":
        return SurjElement._raw(
            {f: c for f, c in self._terms.items() if len(f) <= max_grade}
        )

    def is_homogeneous(self) -> bool:
        return len({len(f) for f in self._terms}) <= 1

    def pretty(self) -> str:
        from .words import frac_str

        if not self._terms:
            return "0"
        parts = []
        for i, (f, c) in enumerate(self):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"({f})" if f else "()"
            coeff = "" if mag == 1 else frac_str(mag) + " "
            if i == 0:
                parts.append(("-" if c < 0 else "") + coeff + body)
            else:
                parts.append(f"{sign} {coeff}{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SurjElement({self.pretty()})"

    def to_json_dict(self) -> dict:
        grades = self.grades()
        grade = grades[0] if len(grades) == 1 else None
        return {
            "grade": grade,
            "terms": [
                {"f": list(f), "coeff": frac_to_json(c)} for f, c in self
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SurjElement":
        return cls(
            (Surjection(t["f"]), frac_from_json(t["coeff"]))
            for t in obj["terms"]
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SurjElement":
        return cls.from_json_dict(json.loads(text))


ElementLike = Union[SurjElement, Surjection, Sequence[int]]


def _as_element(x: ElementLike) -> SurjElement:
    if isinstance(x, SurjElement):
        return x
    return SurjElement.of(as_surjection(x))


def diamond(a: ElementLike, b: ElementLike, max_grade: int | None = None) -> SurjElement:
    """Product on surjections, extended bilinearly.

    For surjections f, g the product is the multiplicity-free sum of all h
    with pack(h restricted to the first block) = f and pack(rest) = g.
    max_grade drops higher grades during the computation, which keeps
    truncated series work bounded.
    """
    ea, eb = _as_element(a), _as_element(b)
    data: dict[Surjection, Fraction] = {}
    for f, cf in ea._terms.items():
        for g, cg in eb._terms.items():
            n = len(f) + len(g)
            if max_grade is not None and n > max_grade:
                continue
            check_grade(n)
            c = cf * cg
            for h in diamond_words(tuple(f), tuple(g)):
                key = Surjection._wrap(h)
                acc = data.get(key, 0) + c
                if acc:
                    data[key] = acc
                else:
                    del data[key]
    return SurjElement._raw(data)


def diamond_reference(f: SurjLike, g: SurjLike) -> SurjElement:
    """Brute-force oracle for diamond: filter every surjection of arity n+m."""
    f, g = as_surjection(f), as_surjection(g)
    n, m = len(f), len(g)
    out = []
    for h in enumerate_grade(n + m):
        if pack(h[:n]) == f and pack(h[n:]) == g:
            out.append((h, 1))
    return SurjElement(out)


# -- descent statistics -------------------------------------------------------


def descent_sum_exact(n: int, positions: Iterable[int]) -> SurjElement:
    """Sum of all arity-n surjections whose descent set equals the given one."""
    target = tuple(sorted(set(positions)))
    _check_positions(n, target)
    return SurjElement(
        (f, 1) for f in enumerate_grade(n) if f.descent_set() == target
    )


def descent_sum_within(n: int, positions: Iterable[int]) -> SurjElement:
    """Sum of all arity-n surjections whose descents all lie in the given set."""
    allowed = frozenset(positions)
    _check_positions(n, tuple(allowed))
    return SurjElement(
        (f, 1)
        for f in enumerate_grade(n)
        if all(i in allowed for i in f.descent_set())
    )


def _check_positions(n: int, positions: tuple[int, ...]) -> None:
    for i in positions:
        if not 1 <= i <= n - 1:
            raise ValueError(f"descent position {i} outside 1..{n - 1}")


# -- compositions and the quasi-symmetric embedding ---------------------------


class Composition(tuple):
    """Finite sequence of positive parts."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Composition":
        vals = tuple(int(p) for p in parts)
        if any(p < 1 for p in vals):
            raise ValueError("composition parts must be positive")
        return super().__new__(cls, vals)

    @property
    def total(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"


def compositions_of(n: int) -> list[Composition]:
    """All compositions of n, in length-then-lex order."""
    out = [[]] if n == 0 else []
    stack = [(n, [])]
    while stack:
        rest, parts = stack.pop()
        if rest == 0:
            out.append(parts)
            continue
        for p in range(rest, 0, -1):
            stack.append((rest - p, parts + [p]))
    return sorted((Composition(p) for p in out), key=lambda c: (len(c), c))


def embed_composition(c: Composition | Sequence[int]) -> SurjElement:
    """Image of a product of single-part generators inside the algebra.

    A composition (n1, ..., nk) maps to the sum of all arity-(n1+...+nk)
    surjections whose descents lie within the cut points
    {n1, n1+n2, ..., n1+...+n(k-1)}.  This is an injective algebra map:
    concatenation of compositions goes to the diamond product.
    """
    c = Composition(c)
    if not c:
        return SurjElement.unit()
    cuts = []
    acc = 0
    for p in c[:-1]:
        acc += p
        cuts.append(acc)
    return descent_sum_within(c.total, cuts)


# -- action on bracket words --------------------------------------------------


def apply_surjection(f: SurjLike, w: WordLike) -> BracketWord:
    """Merge the blocks of w along the fibers of f.

    Block i of the result is the multiset union of the blocks of w at the
    positions f maps to i; f must have one value per block of w.  On words
    with singleton blocks this is the action defining the product rule for
    iterated integrals.
    """
    f, w = as_surjection(f), as_word(w)
    if len(f) != len(w):
        raise ValueError(f"arity {len(f)} does not match word length {len(w)}")
    return BracketWord._wrap(apply_to_blocks(tuple(f), tuple(w)))


def apply_element(e: SurjElement, w: WordLike, weight_graded: bool = False) -> Expansion:
    """Linear extension of apply_surjection in the surjection slot.

    With weight_graded=True the arity-n part of e acts on each word of
    length n and other grades contribute nothing, so one inhomogeneous
    element can act on an inhomogeneous expansion grade by grade.
    """
    w = as_word(w)
    data: dict[BracketWord, Fraction] = {}
    for f, c in e._terms.items():
        if len(f) != len(w):
            if weight_graded:
                continue
            raise ValueError(
                f"arity {len(f)} does not match word length {len(w)}"
            )
        key = BracketWord._wrap(apply_to_blocks(tuple(f), tuple(w)))
        acc = data.get(key, 0) + c
        if acc:
            data[key] = acc
        else:
            del data[key]
    return Expansion._raw(data)
