"""Quasi-shuffle products of bracket words.

The product qsh(u, v) encodes the pathwise product of two iterated Ito
integrals: interleave the blocks of u and v in all order-preserving ways,
optionally merging one block of u with one block of v via the bracket
(multiset union).  Dropping every merged term recovers the classical
shuffle product of Riemann/Stratonovich calculus.

For nonempty words the product splits into three half-products keyed by
what the final block is:

    half_up(u, v)    terms ending with the last block of u
    half_down(u, v)  terms ending with the last block of v
    bullet(u, v)     terms ending with the merged last blocks

and qsh = half_up + half_down + bullet.  The empty word is the unit of
qsh; the half-products are left undefined on it.
"""

from __future__ import annotations

from ._config import check_weight
from .kernels import diamond_words, qsh_words, apply_to_blocks
from .words import BracketWord, Expansion, WordLike, as_word, block_product


def _pairs(a, b):
    """Bilinear iteration: yield (u, v, coeff) over term pairs."""
    ea = a if isinstance(a, Expansion) else Expansion.of_word(as_word(a))
    eb = b if isinstance(b, Expansion) else Expansion.of_word(as_word(b))
    for u, cu in ea:
        for v, cv in eb:
            yield u, v, cu * cv


def qsh(*operands, max_weight: int | None = None) -> Expansion:
    """Quasi-shuffle product of words or expansions, extended bilinearly.

    With more than two operands the product is folded left to right, which
    is safe because qsh is associative.  Every term of a product of words
    has the summed weight of its factors, so max_weight prunes whole term
    pairs before any work: the tool for truncated-series arithmetic.
    """
    if not operands:
        return Expansion.unit()
    acc = operands[0]
    if not isinstance(acc, Expansion):
        acc = Expansion.of_word(as_word(acc))
    for rhs in operands[1:]:
        data = {}
        for u, v, c in _pairs(acc, rhs):
            weight = u.weight + v.weight
            if max_weight is not None and weight > max_weight:
                continue
            check_weight(weight)
            for w, mult in qsh_words(tuple(u), tuple(v)).items():
                key = BracketWord._wrap(w)
                tot = data.get(key, 0) + c * mult
                if tot:
                    data[key] = tot
                else:
                    del data[key]
        acc = Expansion._raw(data)
    return acc


def _require_nonempty(u: BracketWord, v: BracketWord) -> None:
    if not u or not v:
        raise ValueError("half-products are defined on nonempty words only")


def _half_up_pair(u: BracketWord, v: BracketWord):
    last = u[-1]
    for w, mult in qsh_words(tuple(u[:-1]), tuple(v)).items():
        yield BracketWord._wrap(w + (last,)), mult


def _bullet_pair(u: BracketWord, v: BracketWord):
    merged = block_product(u[-1], v[-1])
    for w, mult in qsh_words(tuple(u[:-1]), tuple(v[:-1])).items():
        yield BracketWord._wrap(w + (merged,)), mult


def _bilinear(pair_op, a, b) -> Expansion:
    data = {}
    for u, v, c in _pairs(a, b):
        _require_nonempty(u, v)
        check_weight(u.weight + v.weight)
        for w, mult in pair_op(u, v):
            tot = data.get(w, 0) + c * mult
            if tot:
                data[w] = tot
            elif w in data:
                del data[w]
    return Expansion._raw(data)


def half_up(u, v) -> Expansion:
    """Terms of qsh(u, v) whose final block is the last block of u.

    Extends bilinearly when either operand is an Expansion; every word in
    either operand must be nonempty.
    """
    return _bilinear(_half_up_pair, u, v)


def half_down(u, v) -> Expansion:
    """Terms of qsh(u, v) whose final block is the last block of v."""
    return _bilinear(lambda a, b: _half_up_pair(b, a), u, v)


def bullet(u, v) -> Expansion:
    """Terms of qsh(u, v) ending with the merge of both last blocks."""
    return _bilinear(_bullet_pair, u, v)


def qsh_via_surjections(u: WordLike, v: WordLike) -> Expansion:
    """qsh computed from its surjection-sum form, as an independent route.

    Sum, over surjections f from the n+m block positions onto 1..r that are
    strictly increasing on the first n and on the last m positions, of the
    word obtained by merging the concatenated blocks along the fibers of f.
    Those f are exactly the terms of the product of the two identity
    surjections, so the enumeration is shared with the surjection algebra.
    """
    u, v = as_word(u), as_word(v)
    check_weight(u.weight + v.weight)
    n, m = len(u), len(v)
    cat = tuple(u) + tuple(v)
    ident_n = tuple(range(1, n + 1))
    ident_m = tuple(range(1, m + 1))
    out = {}
    for f in diamond_words(ident_n, ident_m):
        w = BracketWord(apply_to_blocks(f, cat))
        out[w] = out.get(w, 0) + 1
    return Expansion(out.items())


def shuffle_projection(e: Expansion) -> Expansion:
    """Kill every term containing a block of two or more letters.

    Applied to a quasi-shuffle product of singleton-block words this leaves
    the classical shuffle product.
    """
    return Expansion(
        (w, c) for w, c in e if all(len(b) == 1 for b in w)
    )


def shuffle(u: WordLike, v: WordLike) -> Expansion:
    """Classical shuffle product (quasi-shuffle with merges dropped)."""
    return shuffle_projection(qsh(u, v))
