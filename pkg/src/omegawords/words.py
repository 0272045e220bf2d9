"""Located words over the dominated alphabet, and unlocated omega-words.

Letters are integers: ``0`` is the variable, ``i >= 1`` is the i-th alphabet
letter. A located word is a finite nonempty map position -> letter whose
letter at position ``n`` never exceeds ``k(n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import BudgetExceeded, OmegaWordsError, OrderError

VARIABLE = 0


@dataclass(frozen=True)
class DominationSeq:
    """The per-position letter bound ``k(n)``.

    ``constant``: ``k(n) = c``; ``affine``: ``k(n) = a*n + b``; ``table``:
    ``k(n) = values[n-1]`` with the last value repeated forever.
    """

    kind: str = "constant"
    c: int = 1
    a: int = 1
    b: int = 0
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "constant":
            if self.c < 1:
                raise OmegaWordsError("constant domination must be >= 1")
        elif self.kind == "affine":
            if self.a < 0 or self.a + self.b < 1:
                raise OmegaWordsError("affine domination must be non-decreasing and >= 1")
        elif self.kind == "table":
            vals = self.values
            if not vals or min(vals) < 1:
                raise OmegaWordsError("table domination needs positive values")
            if any(x > y for x, y in zip(vals, vals[1:])):
                raise OmegaWordsError("domination sequence must be non-decreasing")
        else:
            raise OmegaWordsError(f"unknown domination kind {self.kind!r}")

    @classmethod
    def constant(cls, c: int) -> "DominationSeq":
        return cls("constant", c=c)

    @classmethod
    def affine(cls, a: int, b: int) -> "DominationSeq":
        return cls("affine", a=a, b=b)

    @classmethod
    def table(cls, values: Iterable[int]) -> "DominationSeq":
        return cls("table", values=tuple(values))

    def __call__(self, n: int) -> int:
        if n < 1:
            raise OmegaWordsError("positions start at 1")
        if self.kind == "constant":
            return self.c
        if self.kind == "affine":
            return self.a * n + self.b
        return self.values[min(n, len(self.values)) - 1]

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "c": self.c}
        if self.kind == "affine":
            return {"kind": "affine", "a": self.a, "b": self.b}
        return {"kind": "table", "values": list(self.values)}

    @classmethod
    def from_json(cls, data: Mapping) -> "DominationSeq":
        kind = data.get("kind")
        if kind == "constant":
            return cls.constant(int(data["c"]))
        if kind == "affine":
            return cls.affine(int(data["a"]), int(data.get("b", 0)))
        if kind == "table":
            return cls.table(int(v) for v in data["values"])
        raise OmegaWordsError(f"unknown domination kind {kind!r}")


@dataclass(frozen=True)
class LocatedWord:
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise OmegaWordsError("located words are nonempty")
        prev = 0
        for pos, letter in self.entries:
            if pos <= prev:
                raise OmegaWordsError("entries must have strictly increasing positive positions")
            if letter < 0:
                raise OmegaWordsError("letters are non-negative")
            prev = pos

    @classmethod
    def of(cls, mapping: Mapping[int, int] | Iterable[tuple[int, int]]) -> "LocatedWord":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(sorted((int(p), int(l)) for p, l in items)))

    @property
    def dom(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def min_dom(self) -> int:
        return self.entries[0][0]

    @property
    def max_dom(self) -> int:
        return self.entries[-1][0]

    @property
    def is_variable(self) -> bool:
        return any(letter == VARIABLE for _, letter in self.entries)

    @property
    def variable_positions(self) -> tuple[int, ...]:
        return tuple(p for p, letter in self.entries if letter == VARIABLE)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def validate(self, k: DominationSeq) -> "LocatedWord":
        for pos, letter in self.entries:
            if letter > k(pos):
                raise OmegaWordsError(f"letter {letter} at position {pos} exceeds k={k(pos)}")
        return self

    def to_json(self) -> dict:
        return {"entries": [list(e) for e in self.entries]}

    @classmethod
    def from_json(cls, data) -> "LocatedWord":
        if isinstance(data, Mapping):
            data = data["entries"]
        return cls.of((p, l) for p, l in data)

    def __str__(self) -> str:
        return "{" + ",".join(f"{p}:{'v' if l == 0 else l}" for p, l in self.entries) + "}"


def word_key(w: LocatedWord) -> tuple:
    """Deterministic ordering: by last position, then by the entry list."""
    return (w.max_dom, w.entries)


def t_p(w: LocatedWord, p: int, k: DominationSeq) -> LocatedWord:
    """Substitute the p-th letter for the variable, capped at ``k(n)`` per position."""
    if p < 0:
        raise OmegaWordsError("p must be non-negative")
    if p == 0 or not w.is_variable:
        return w
    return LocatedWord(tuple(
        (pos, min(p, k(pos)) if letter == VARIABLE else letter) for pos, letter in w.entries
    ))


def less(w: LocatedWord, u: LocatedWord) -> bool:
    return w.max_dom < u.min_dom


def concat(w: LocatedWord, u: LocatedWord) -> LocatedWord:
    if not less(w, u):
        raise OrderError(f"concatenation needs {w} < {u}")
    return LocatedWord(w.entries + u.entries)


def plus(w: LocatedWord, u: LocatedWord) -> LocatedWord:
    """Merge two words: on shared positions keep the variable if either has it, else the larger letter."""
    merged = dict(w.entries)
    for pos, letter in u.entries:
        if pos in merged:
            other = merged[pos]
            merged[pos] = VARIABLE if VARIABLE in (letter, other) else max(letter, other)
        else:
            merged[pos] = letter
    return LocatedWord(tuple(sorted(merged.items())))


@dataclass(frozen=True)
class OmegaWord:
    """A word whose domain is the initial segment ``1..len``."""

    letters: tuple[int, ...]

    def __post_init__(self):
        if not self.letters:
            raise OmegaWordsError("omega-words are nonempty")
        if any(l < 0 for l in self.letters):
            raise OmegaWordsError("letters are non-negative")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_variable(self) -> bool:
        return VARIABLE in self.letters

    def validate(self, k: DominationSeq) -> "OmegaWord":
        for i, letter in enumerate(self.letters, start=1):
            if letter > k(i):
                raise OmegaWordsError(f"letter {letter} at position {i} exceeds k={k(i)}")
        return self

    def to_json(self) -> list[int]:
        return list(self.letters)


def to_unlocated(w: LocatedWord) -> OmegaWord:
    """Fill the gaps of ``w`` below its last position with the first letter."""
    filled = [1] * w.max_dom
    for pos, letter in w.entries:
        filled[pos - 1] = letter
    return OmegaWord(tuple(filled))


def wless(w: OmegaWord, u: OmegaWord) -> bool:
    n = len(w)
    return n < len(u) and all(x == 1 for x in u.letters[:n])


def wconcat(w: OmegaWord, u: OmegaWord) -> OmegaWord:
    if not wless(w, u):
        raise OrderError("omega-word concatenation needs w < u")
    return OmegaWord(w.letters + u.letters[len(w):])


def wt_p(w: OmegaWord, p: int, k: DominationSeq) -> OmegaWord:
    if p == 0:
        return w
    return OmegaWord(tuple(
        min(p, k(i)) if letter == VARIABLE else letter for i, letter in enumerate(w.letters, start=1)
    ))


def universe_size(n_max: int, k: DominationSeq) -> int:
    """Number of nonempty words with domain inside ``[1..n_max]``."""
    total = 1
    for n in range(1, n_max + 1):
        total *= k(n) + 2
    return total - 1


def enumerate_located(
    n_max: int, k: DominationSeq, variable_only: bool = False, cap: int = 2_000_000
) -> list[LocatedWord]:
    """All words with domain inside ``[1..n_max]``, sorted by :func:`word_key`."""
    size = universe_size(n_max, k)
    if size > cap:
        raise BudgetExceeded(f"{size} words exceed the enumeration cap {cap}")
    choices = [[None, *range(0, k(n) + 1)] for n in range(1, n_max + 1)]
    out = []
    for combo in itertools.product(*choices):
        entries = tuple((n, l) for n, l in enumerate(combo, start=1) if l is not None)
        if not entries:
            continue
        w = LocatedWord(entries)
        if variable_only and not w.is_variable:
            continue
        out.append(w)
    out.sort(key=word_key)
    return out
