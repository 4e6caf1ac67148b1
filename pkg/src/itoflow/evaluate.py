"""Left-point evaluation of bracket-word expansions on discrete paths.

A block evaluates to the running sum of the product of its letters'
increments (the realized iterated bracket); a word evaluates by repeated
left-point integration: the running value so far, taken at the left end
of each cell, times the next block's increment, summed.  Both operations
are plain cumulative sums, so the quasi-shuffle identity

    value(u) * value(v) = value(qsh(u, v))

holds exactly on every path, with no discretization error; floating
point round-off is the only noise.

All core routines are shaped (..., cells): a batch axis in front
evaluates many Monte Carlo paths in one sweep.
"""

from __future__ import annotations

from typing import Mapping, Union

import numpy as np

from .words import BracketWord, Expansion, WordLike, as_word
from .paths import PathBundle, SamplePath


def _cumsum0(increments: np.ndarray) -> np.ndarray:
    """Path from increments: zero first, running sums after."""
    out = np.zeros(increments.shape[:-1] + (increments.shape[-1] + 1,))
    np.cumsum(increments, axis=-1, out=out[..., 1:])
    return out


class Evaluator:
    """Evaluates words and expansions against one set of increment arrays.

    increments maps each letter to an array of per-cell increments,
    shaped (cells,) for one path or (batch, cells) for many.  Word
    terminal values are cached; full word paths are rebuilt on demand so
    large batches never pin one array per word.
    """

    def __init__(self, increments: Mapping[int, np.ndarray]):
        self._inc = {int(k): np.asarray(v, dtype=np.float64) for k, v in increments.items()}
        if not self._inc:
            raise ValueError("need at least one driver")
        shapes = {v.shape for v in self._inc.values()}
        if len(shapes) != 1:
            raise ValueError("drivers must share one grid shape")
        self.shape = shapes.pop()
        self._terminal_cache: dict[BracketWord, np.ndarray] = {}

    @classmethod
    def from_bundle(cls, bundle: PathBundle) -> "Evaluator":
        return cls({l: bundle[l].increments() for l in bundle.letters()})

    @classmethod
    def from_paths(cls, paths: Mapping[int, SamplePath]) -> "Evaluator":
        grids = list(paths.values())
        for p in grids[1:]:
            if not grids[0].same_grid(p):
                raise ValueError("paths must share a grid")
        return cls({l: p.increments() for l, p in paths.items()})

    def block_increments(self, block) -> np.ndarray:
        """Per-cell increment of the realized bracket of the block."""
        out = None
        for letter in block:
            try:
                inc = self._inc[letter]
            except KeyError:
                raise KeyError(f"letter {letter} is not bound to a path") from None
            out = inc.copy() if out is None else out * inc
        return out

    def word_path(self, w: WordLike) -> np.ndarray:
        """Full running path of the word's iterated integral."""
        w = as_word(w)
        cells = self.shape[-1]
        path = np.ones(self.shape[:-1] + (cells + 1,))
        for b in w:
            left = path[..., :-1]
            path = _cumsum0(left * self.block_increments(b))
        return path

    def word_terminal(self, w: WordLike) -> np.ndarray:
        """Terminal value(s) of the word's iterated integral, cached."""
        w = as_word(w)
        hit = self._terminal_cache.get(w)
        if hit is None:
            hit = self.word_path(w)[..., -1]
            self._terminal_cache[w] = hit
        return hit

    def __call__(self, e: Union[Expansion, WordLike]) -> np.ndarray:
        """Terminal value of an expansion: rationals become floats here."""
        if not isinstance(e, Expansion):
            return self.word_terminal(e)
        out = np.zeros(self.shape[:-1])
        for w, c in e:
            out = out + float(c) * self.word_terminal(w)
        return out


Binding = Union[PathBundle, Mapping[int, SamplePath]]


def _evaluator(binding: Binding) -> Evaluator:
    if isinstance(binding, PathBundle):
        return Evaluator.from_bundle(binding)
    return Evaluator.from_paths(binding)


def evaluate(e: Union[Expansion, WordLike], binding: Binding) -> float:
    """Terminal value of an expansion or word on one path set."""
    out = _evaluator(binding)(e)
    return float(out)


def evaluate_path(w: WordLike, binding: Binding) -> np.ndarray:
    """Full running path of one word on one path set."""
    return _evaluator(binding).word_path(w)
