"""Bracket words and their exact rational linear combinations.

A bracket word is a finite sequence of blocks.  Each block is a nonempty
multiset of positive integer driver letters and stands for the iterated
quadratic-covariation bracket of those drivers; the sequence stands for
nested left-point integration, innermost first.  The empty word is the unit.

Blocks are canonicalized as sorted tuples (the bracket is commutative and
associative), so plain tuple equality and hashing are canonical equality.
Deterministic output order is length-lexicographic: fewer blocks first, then
blockwise lexicographic comparison.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Block = tuple  # sorted tuple of positive ints


def block(*letters: int) -> Block:
    """Canonical block from letters, keeping multiplicity: block(3,1,3) == (1,3,3)."""
    if not letters:
        raise ValueError("a block needs at least one letter")
    for x in letters:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ValueError(f"letters are positive integers, got {x!r}")
    return tuple(sorted(letters))


def block_product(a: Block, b: Block) -> Block:
    """Bracket product of blocks: the multiset union of their letters."""
    return tuple(sorted(tuple(a) + tuple(b)))


class BracketWord(tuple):
    """Immutable word of canonical blocks; behaves as a tuple of tuples."""

    __slots__ = ()

    def __new__(cls, blocks: Iterable[Iterable[int]] = ()) -> "BracketWord":
        canon = []
        for b in blocks:
            if isinstance(b, int):
                raise TypeError(
                    f"blocks must be iterables of letters, got bare int {b!r}; "
                    "use BracketWord.from_letters for singleton-block words"
                )
            canon.append(block(*b))
        return super().__new__(cls, canon)

    @classmethod
    def from_letters(cls, *letters: int) -> "BracketWord":
        """Word of singleton blocks, one per letter: from_letters(2,1) = (2)(1)."""
        return cls((x,) for x in letters)

    @classmethod
    def _wrap(cls, blocks) -> "BracketWord":
        """Adopt already-canonical blocks without re-validating (hot paths)."""
        return tuple.__new__(cls, blocks)

    @property
    def weight(self) -> int:
        """Total letter count over all blocks, with multiplicity."""
        return sum(len(b) for b in self)

    @property
    def length(self) -> int:
        """Number of blocks."""
        return len(self)

    def __add__(self, other: "BracketWord") -> "BracketWord":
        """Concatenation."""
        return BracketWord(tuple(self) + tuple(other))

    def __mul__(self, other):  # block repetition is never meaningful here
        return NotImplemented

    def __repr__(self) -> str:
        return f"BracketWord({word_literal(self)!r})"


UNIT_WORD = BracketWord()

WordLike = Union[BracketWord, Iterable[Iterable[int]]]


def as_word(w: WordLike) -> BracketWord:
    return w if isinstance(w, BracketWord) else BracketWord(w)


def word_sort_key(w) -> tuple:
    """Deterministic ordering key: block count first, then blockwise lex."""
    return (len(w), tuple(w))


# -- text forms ---------------------------------------------------------------
#
# Literal grammar (CLI input form): blocks joined by ".", bracket blocks as
# "[a,b,...]", letters as positive decimal integers; "e" is the unit word.
# Compact display form, usable when every letter is a single digit: blocks
# juxtaposed, singleton as the digit, bracket block as "[13]".  The parser
# accepts both, so every rendering round-trips.


def word_literal(w: WordLike) -> str:
    """Dotted literal: (2)([1,3]) -> '2.[1,3]'; unit -> 'e'."""
    w = as_word(w)
    if not w:
        return "e"
    parts = []
    for b in as_word(w):
        if len(b) == 1:
            parts.append(str(b[0]))
        else:
            parts.append("[" + ",".join(str(x) for x in b) + "]")
    return ".".join(parts)


def word_compact(w: WordLike) -> str:
    """Digit-juxtaposed form: (2)([1,3]) -> '2[13]'; falls back to the literal."""
    w = as_word(w)
    if not w:
        return "e"
    if any(x > 9 for b in w for x in b):
        return word_literal(w)
    parts = []
    for b in w:
        if len(b) == 1:
            parts.append(str(b[0]))
        else:
            parts.append("[" + "".join(str(x) for x in b) + "]")
    return "".join(parts)


def pretty_word(w: WordLike) -> str:
    """Iterated-integral notation: (2)([1,3]) -> 'I_{2[13]}'; unit -> '1'."""
    w = as_word(w)
    if not w:
        return "1"
    return "I_{" + word_compact(w) + "}"


class WordParseError(ValueError):
    """Word literal rejected; carries the 0-based offending position."""

    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


def parse_word(text: str) -> BracketWord:
    """Parse either literal form.

    Dotted: '2.[1,3]' or '[1,3].2.2'.  Compact (single-digit letters only):
    '2[13]', '112'.  The unit word is written 'e'; an empty string is an
    error so that silently blank CLI arguments do not pass as units.
    """
    text = text.strip()
    if not text:
        raise WordParseError(text, 0, "empty word literal (write 'e' for the unit)")
    if text == "e":
        return UNIT_WORD
    if "." in text or "," in text:
        return _parse_dotted(text)
    return _parse_compact(text)


def _parse_dotted(text: str) -> BracketWord:
    blocks = []
    pos = 0
    chunks = text.split(".")
    for chunk in chunks:
        if not chunk:
            raise WordParseError(text, pos, "empty block")
        if chunk.startswith("["):
            if not chunk.endswith("]"):
                raise WordParseError(text, pos + len(chunk) - 1, "unclosed '['")
            inner = chunk[1:-1]
            letters = []
            off = pos + 1
            for item in inner.split(","):
                item_s = item.strip()
                if not item_s.isdigit() or int(item_s) < 1:
                    raise WordParseError(text, off, f"bad letter {item!r}")
                letters.append(int(item_s))
                off += len(item) + 1
            blocks.append(letters)
        else:
            if not chunk.isdigit() or int(chunk) < 1:
                raise WordParseError(text, pos, f"bad letter {chunk!r}")
            blocks.append([int(chunk)])
        pos += len(chunk) + 1
    return BracketWord(blocks)


def _parse_compact(text: str) -> BracketWord:
    blocks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "[":
            j = text.find("]", i)
            if j < 0:
                raise WordParseError(text, i, "unclosed '['")
            inner = text[i + 1 : j]
            if not inner.isdigit():
                raise WordParseError(text, i + 1, f"bad bracket content {inner!r}")
            letters = [int(ch) for ch in inner]
            if any(x < 1 for x in letters):
                raise WordParseError(text, i + 1, "letter 0 is not allowed")
            blocks.append(letters)
            i = j + 1
        elif c.isdigit():
            if c == "0":
                raise WordParseError(text, i, "letter 0 is not allowed")
            blocks.append([int(c)])
            i += 1
        else:
            raise WordParseError(text, i, f"unexpected character {c!r}")
    return BracketWord(blocks)


# -- exact coefficients -------------------------------------------------------


def frac_to_json(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def frac_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return Fraction(obj)


def frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Expansion:
    """Finite formal sum of bracket words with exact rational coefficients.

    Zero coefficients are never stored; equality is exact coefficient-map
    equality.  Addition, subtraction and scalar multiplication live here;
    the quasi-shuffle product of expansions lives in itoflow.quasishuffle.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[BracketWord, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                w = as_word(w)
                c = Fraction(c)
                if not c:
                    continue
                acc = data.get(w, 0) + c
                if acc:
                    data[w] = acc
                else:
                    data.pop(w, None)
        self._terms = data

    # construction helpers
    @classmethod
    def zero(cls) -> "Expansion":
        return cls()

    @classmethod
    def unit(cls) -> "Expansion":
        """The empty word with coefficient 1."""
        return cls([(UNIT_WORD, 1)])

    @classmethod
    def of_word(cls, w: WordLike, coeff=1) -> "Expansion":
        return cls([(as_word(w), coeff)])

    # container protocol
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[BracketWord, Fraction]]:
        for w in sorted(self._terms, key=word_sort_key):
            yield w, self._terms[w]

    def __getitem__(self, w: WordLike) -> Fraction:
        return self._terms.get(as_word(w), Fraction(0))

    def __contains__(self, w: WordLike) -> bool:
        return as_word(w) in self._terms

    def words(self) -> list[BracketWord]:
        return sorted(self._terms, key=word_sort_key)

    # arithmetic
    def __eq__(self, other) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Expansion") -> "Expansion":
        if not isinstance(other, Expansion):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            acc = out.get(w, 0) + c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
        return Expansion._raw(out)

    def __sub__(self, other: "Expansion") -> "Expansion":
        if not isinstance(other, Expansion):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Expansion":
        return Expansion._raw({w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar) -> "Expansion":
        if isinstance(scalar, Expansion):
            raise TypeError(
                "use itoflow.quasishuffle.qsh for products of expansions"
            )
        if not isinstance(scalar, (int, Fraction)):
            raise TypeError(
                f"coefficients are exact rationals; got {type(scalar).__name__} "
                "(wrap in fractions.Fraction)"
            )
        c = Fraction(scalar)
        if not c:
            return Expansion()
        return Expansion._raw({w: b * c for w, b in self._terms.items()})

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, data: dict) -> "Expansion":
        e = cls.__new__(cls)
        e._terms = data
        return e

    # structure
    def max_weight(self) -> int:
        return max((w.weight for w in self._terms), default=0)

    def restrict_weight(self, weight: int) -> "Expansion":
        """Homogeneous part of the given weight."""
        return Expansion._raw(
            {w: c for w, c in self._terms.items() if w.weight == weight}
        )

    def truncate_weight(self, max_weight: int) -> "Expansion":
        """Drop every term of weight above max_weight."""
        return Expansion._raw(
            {w: c for w, c in self._terms.items() if w.weight <= max_weight}
        )

    def map_words(self, fn) -> "Expansion":
        """Linear extension of a word -> Expansion (or word -> word) map."""
        data: dict[BracketWord, Fraction] = {}
        for w, c in self._terms.items():
            img = fn(w)
            pairs = img._terms.items() if isinstance(img, Expansion) else [(as_word(img), 1)]
            for w2, c2 in pairs:
                acc = data.get(w2, 0) + c * c2
                if acc:
                    data[w2] = acc
                else:
                    data.pop(w2, None)
        return Expansion._raw(data)

    # rendering
    def pretty(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (w, c) in enumerate(self):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = pretty_word(w) if len(w) else "1"
            coeff = "" if mag == 1 and len(w) else frac_str(mag) + " "
            if i == 0:
                parts.append(("-" if c < 0 else "") + coeff + body)
            else:
                parts.append(f"{sign} {coeff}{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Expansion({self.pretty()})"

    # serialization
    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"word": [list(b) for b in w], "coeff": frac_to_json(c)}
                for w, c in self
            ]
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Expansion":
        return cls(
            (BracketWord(t["word"]), frac_from_json(t["coeff"]))
            for t in obj["terms"]
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Expansion":
        return cls.from_json_dict(json.loads(text))
