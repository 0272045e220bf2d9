"""Extracted words of finite orderly tuples, the extraction relation, and L^xi tuples.

Exponent range: each selected word ``w`` is substituted with ``p`` in
``0..k(n_w)`` where ``n_w`` is the last variable position of ``w``. Larger
``p`` repeat the image at ``k(n_w)``, and ``t_p`` caps every entry at its own
``k(n)``, so this range produces every distinct image exactly once.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import OmegaWordsError, OrderError
from .ordinal import as_ordinal
from .schreier import Status, feed, member, start
from .words import (
    DominationSeq,
    LocatedWord,
    OmegaWord,
    less,
    t_p,
    wconcat,
    wless,
    word_key,
    wt_p,
)

Tuple = tuple[LocatedWord, ...]


def is_orderly(words: Sequence[LocatedWord]) -> bool:
    return all(less(a, b) for a, b in zip(words, words[1:]))


def _require_variable_tuple(words: Sequence[LocatedWord]) -> tuple[LocatedWord, ...]:
    words = tuple(words)
    if not words:
        raise OmegaWordsError("extracted words need a nonempty tuple")
    if not is_orderly(words):
        raise OrderError("tuple is not orderly")
    for w in words:
        if not w.is_variable:
            raise OmegaWordsError(f"extraction needs variable building blocks; {w} is constant")
    return words


def constant_images(w: LocatedWord, k: DominationSeq) -> list[LocatedWord]:
    top = k(w.variable_positions[-1])
    return [t_p(w, p, k) for p in range(1, top + 1)]


def _extracted(words: tuple[LocatedWord, ...], k: DominationSeq, variable: bool) -> frozenset[LocatedWord]:
    # option lists hold (uses_variable, entries) per word
    options = []
    for w in words:
        opts = [(False, img.entries) for img in constant_images(w, k)]
        if variable:
            opts.insert(0, (True, w.entries))
        options.append(opts)
    out = set()
    for r in range(1, len(words) + 1):
        for idx in itertools.combinations(range(len(words)), r):
            for choice in itertools.product(*(options[i] for i in idx)):
                if variable and not any(flag for flag, _ in choice):
                    continue
                out.add(LocatedWord(tuple(itertools.chain.from_iterable(e for _, e in choice))))
    return frozenset(out)


def ev(words: Sequence[LocatedWord], k: DominationSeq) -> frozenset[LocatedWord]:
    """Extracted variable words: some selected exponent is 0."""
    return _extracted(_require_variable_tuple(words), k, variable=True)


def e(words: Sequence[LocatedWord], k: DominationSeq) -> frozenset[LocatedWord]:
    """Extracted constant words: every selected exponent is >= 1."""
    return _extracted(_require_variable_tuple(words), k, variable=False)


def is_extraction(u: Sequence[LocatedWord], w: Sequence[LocatedWord], k: DominationSeq) -> bool:
    u = tuple(u)
    if not is_orderly(u):
        return False
    pool = ev(w, k)
    return all(x in pool for x in u)


def projection(words: Sequence[LocatedWord]) -> tuple[int, ...]:
    return tuple(w.min_dom for w in words)


def in_L_xi(xi, words: Sequence[LocatedWord], variable: bool = True) -> bool:
    """Whether the tuple lies in ``L^xi`` (variable words) or its constant analogue."""
    xi = as_ordinal(xi)
    words = tuple(words)
    if not words:
        return xi.is_zero
    if not is_orderly(words):
        return False
    if any(w.is_variable != variable for w in words):
        return False
    return member(xi, projection(words))


def enumerate_L_xi_ev(xi, generators: Sequence[LocatedWord], k: DominationSeq, cap: int) -> list[Tuple]:
    """Orderly tuples over ``ev(generators)`` of length <= cap whose projection lies in ``A_xi``."""
    xi = as_ordinal(xi)
    if xi.is_zero:
        return [()]
    pool = sorted(ev(generators, k), key=word_key)
    out: list[Tuple] = []

    def extend(prefix: Tuple, state) -> None:
        floor = prefix[-1].max_dom if prefix else 0
        for w in pool:
            if w.min_dom <= floor:
                continue
            nxt = feed(state, w.min_dom)
            if nxt.status is Status.JUST_COMPLETED:
                out.append(prefix + (w,))
            elif len(prefix) + 1 < cap:
                extend(prefix + (w,), nxt)

    if cap >= 1:
        extend((), start(xi))
    return out


def reduced_sequences(
    m: int, generators: Sequence[OmegaWord], k: DominationSeq, variable: bool = True
) -> list[tuple[OmegaWord, ...]]:
    """Reduced m-sequences: consecutive blocks of a generator prefix, one exponent per generator.

    The exponent of the j-th generator (1-based) ranges over ``0..k(j)``.
    """
    gens = tuple(generators)
    if m < 1:
        raise OmegaWordsError("m must be >= 1")
    if len(gens) < m:
        raise OmegaWordsError(f"need at least {m} generators, got {len(gens)}")
    if not all(wless(a, b) for a, b in zip(gens, gens[1:])):
        raise OrderError("generators must be increasing")
    lo = 0 if variable else 1
    # images[j] lists (is_variable_choice, word) for generator j
    images = [
        [(p == 0, wt_p(g, p, k)) for p in range(lo, k(j) + 1)]
        for j, g in enumerate(gens, start=1)
    ]
    seen: set = set()
    out = []
    for length in range(m, len(gens) + 1):
        for cuts in itertools.combinations(range(1, length), m - 1):
            bounds = (0, *cuts, length)
            block_options = []
            for a, b in zip(bounds, bounds[1:]):
                opts = []
                for choice in itertools.product(*images[a:b]):
                    if variable and not any(flag for flag, _ in choice):
                        continue
                    word = choice[0][1]
                    for _, nxt in choice[1:]:
                        word = wconcat(word, nxt)
                    opts.append(word)
                block_options.append(opts)
            for seq in itertools.product(*block_options):
                if seq not in seen:
                    seen.add(seq)
                    out.append(seq)
    return out


# sequence plumbing

def initial_segment(w: Sequence, u: Sequence) -> bool:
    w, u = tuple(w), tuple(u)
    return len(w) <= len(u) and u[:len(w)] == w


def subtract(u: Sequence, w: Sequence) -> tuple:
    """``u`` with its initial segment ``w`` removed."""
    if not initial_segment(w, u):
        raise OmegaWordsError("second argument is not an initial segment of the first")
    return tuple(u)[len(tuple(w)):]


def drop_below(u: Sequence[LocatedWord], t: LocatedWord) -> Tuple:
    """The tail of ``u`` from its first word lying strictly above ``t``."""
    u = tuple(u)
    for i, w in enumerate(u):
        if less(t, w):
            return u[i:]
    return ()


def odot(t: Sequence[LocatedWord], s: Sequence[LocatedWord]) -> Tuple:
    t, s = tuple(t), tuple(s)
    if t and s and not less(t[-1], s[0]):
        raise OrderError("odot needs the last word of the first tuple below the second")
    return t + s
