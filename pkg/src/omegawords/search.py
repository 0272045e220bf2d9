"""Finite searches for monochromatic extracted-word tuples, and the semigroup bridge.

Words inside the search loop are handled as raw entry tuples
``((pos, letter), ...)``; concatenation of orderly words is then plain tuple
addition and no validation runs in the hot path.

Candidate order: tuples are grouped by the last position ``M`` used, and
within one ``M`` they are ordered lexicographically by their entry tuples.
Searching ``M = 1, 2, ...`` in turn and stopping at the first hit returns the
least witness in that order, regardless of how the work was split.
"""

from __future__ import annotations

import bisect
import itertools
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .errors import BudgetExceeded, OmegaWordsError, OrderError
from .extraction import is_orderly
from .words import VARIABLE, DominationSeq, LocatedWord, concat, t_p

Entries = tuple[tuple[int, int], ...]


# semigroups and the bridge g

_CARRIERS = {"integers-add", "integers-max", "strings-concat", "integers-mod-add"}
_Y_RULES = {"power", "linear", "table", "label"}


@dataclass(frozen=True)
class SemigroupSpec:
    """A semigroup carrier together with the table ``y(l, n)``.

    y rules: ``power`` gives ``l * base**n``, ``linear`` gives ``l + c*n``,
    ``label`` gives the string ``"(l,n)"``, ``table`` looks up ``(l, n)``.
    """

    carrier: str = "integers-add"
    y_rule: str = "power"
    base: int = 2
    c: int = 1
    modulus: int = 0
    table: tuple[tuple[int, int, Any], ...] = ()

    def __post_init__(self):
        if self.carrier not in _CARRIERS:
            raise OmegaWordsError(f"unknown carrier {self.carrier!r}")
        if self.y_rule not in _Y_RULES:
            raise OmegaWordsError(f"unknown y rule {self.y_rule!r}")
        if self.carrier == "integers-mod-add" and self.modulus < 1:
            raise OmegaWordsError("integers-mod-add needs a positive modulus")
        if (self.carrier == "strings-concat") != (self.y_rule == "label"):
            if not (self.y_rule == "table" and self.carrier == "strings-concat"):
                raise OmegaWordsError("strings-concat pairs with label or table y values")

    @property
    def commutative(self) -> bool:
        return self.carrier != "strings-concat"

    def op(self, a, b):
        if self.carrier == "integers-add":
            return a + b
        if self.carrier == "integers-max":
            return max(a, b)
        if self.carrier == "integers-mod-add":
            return (a + b) % self.modulus
        return a + b

    def y(self, l: int, n: int):
        if self.y_rule == "power":
            v = l * self.base ** n
        elif self.y_rule == "linear":
            v = l + self.c * n
        elif self.y_rule == "label":
            return f"({l},{n})"
        else:
            v = self._table.get((l, n))
            if v is None:
                raise OmegaWordsError(f"y table has no entry for ({l},{n})")
            return v
        return v % self.modulus if self.carrier == "integers-mod-add" else v

    @property
    def _table(self) -> dict:
        return {(l, n): v for l, n, v in self.table}

    def fold(self, values):
        it = iter(values)
        try:
            acc = next(it)
        except StopIteration:
            raise OmegaWordsError("semigroups have no empty sum") from None
        for v in it:
            acc = self.op(acc, v)
        return acc

    @classmethod
    def from_json(cls, data: Mapping) -> "SemigroupSpec":
        carrier = data.get("carrier", "integers-add")
        modulus = 0
        if isinstance(carrier, Mapping):
            modulus = int(carrier.get("m", 0))
            carrier = carrier["kind"]
        elif carrier.startswith("integers-mod-add"):
            modulus = int(data.get("m", carrier.partition(":")[2] or 0))
            carrier = "integers-mod-add"
        y = data.get("y", {"rule": "label" if carrier == "strings-concat" else "power"})
        table = tuple((int(l), int(n), v) for l, n, v in y.get("values", ()))
        return cls(carrier, y["rule"], int(y.get("base", 2)), int(y.get("c", 1)), modulus, table)

    def to_json(self) -> dict:
        carrier = self.carrier if self.carrier != "integers-mod-add" else f"integers-mod-add:{self.modulus}"
        y: dict = {"rule": self.y_rule}
        if self.y_rule == "power":
            y["base"] = self.base
        elif self.y_rule == "linear":
            y["c"] = self.c
        elif self.y_rule == "table":
            y["values"] = [list(t) for t in self.table]
        return {"carrier": carrier, "y": y}


def _g_entries(entries: Entries, sg: SemigroupSpec):
    return sg.fold(sg.y(l, n) for n, l in entries)


def g_eval(w: LocatedWord, sg: SemigroupSpec):
    if w.is_variable:
        raise OmegaWordsError(f"g is defined on constant words; {w} has a variable")
    return _g_entries(w.entries, sg)


@dataclass(frozen=True)
class GroupedValue:
    value: Any
    blocks: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    tail: tuple[int, ...]


def g_grouped_noncommutative(w: LocatedWord, p: int, sg: SemigroupSpec, k: DominationSeq) -> GroupedValue:
    """``g(T_p(w))`` summed block by block: each block ``E_i`` is a run of
    constants followed by the variable run ``H_i``; trailing constants form the tail."""
    if not w.is_variable:
        raise OmegaWordsError("grouped evaluation needs a variable word")
    if w.entries[0][1] == VARIABLE or w.entries[-1][1] == VARIABLE:
        raise OmegaWordsError("first and last entries must be constant")
    if not 1 <= p <= k(w.min_dom):
        raise OmegaWordsError(f"p must lie in 1..{k(w.min_dom)}")
    blocks, E, H = [], [], []
    for pos, letter in w.entries:
        if letter != VARIABLE and H:
            blocks.append((tuple(E), tuple(H)))
            E, H = [], []
        E.append(pos)
        if letter == VARIABLE:
            H.append(pos)
    letters = w.as_dict()
    parts = []
    for E_i, H_i in blocks:
        hs = set(H_i)
        parts.append(sg.fold(sg.y(p if t in hs else letters[t], t) for t in E_i))
    parts.append(sg.fold(sg.y(letters[t], t) for t in E))
    return GroupedValue(sg.fold(parts), tuple(blocks), tuple(E))


def fs_set(xs: Sequence, sg: SemigroupSpec, lambda_cap: int | None = None) -> frozenset:
    """Sums over index subsets of size ``1..lambda_cap``, added in index order."""
    n = len(xs)
    top = n if lambda_cap is None else min(lambda_cap, n)
    return frozenset(
        sg.fold(xs[i] for i in idx)
        for size in range(1, top + 1)
        for idx in itertools.combinations(range(n), size)
    )


# colorings

@dataclass(frozen=True)
class _Algebra:
    entry: Callable[[int, int], Any]
    combine: Callable[[Any, Any], Any]
    color: Callable[[Any], int]


_BUILTINS = {"dom-size-parity", "min-dom-mod", "letter-sum-mod", "max-letter-mod", "constant"}


@dataclass(frozen=True)
class SemigroupColoring:
    kind: str = "mod"
    m: int = 2
    table: tuple[tuple[Any, int], ...] = ()

    def __call__(self, value) -> int:
        if self.kind == "mod":
            return value % self.m + 1
        if self.kind == "length-mod":
            return len(value) % self.m + 1
        for v, c in self.table:
            if v == value:
                return c
        raise OmegaWordsError(f"value {value!r} has no color")

    @classmethod
    def from_json(cls, data: Mapping) -> "SemigroupColoring":
        kind = data.get("kind", "mod")
        if kind not in ("mod", "length-mod", "table"):
            raise OmegaWordsError(f"unknown semigroup coloring {kind!r}")
        table = tuple((v, int(c)) for v, c in data.get("table", ()))
        return cls(kind, int(data.get("m", 2)), table)

    def to_json(self) -> dict:
        if self.kind == "table":
            return {"kind": "table", "table": [list(t) for t in self.table]}
        return {"kind": self.kind, "m": self.m}


@dataclass(frozen=True)
class Coloring:
    """A finite coloring of located words with colors ``1..r``.

    Builtins take a modulus where it makes sense (``min-dom-mod``,
    ``letter-sum-mod``, ``max-letter-mod``); ``constant`` paints everything 1.
    ``table`` maps explicit words; ``g`` colors constant words through a
    semigroup coloring of ``g(w)``.
    """

    kind: str
    name: str = ""
    modulus: int = 2
    table: tuple[tuple[Entries, int], ...] = ()
    semigroup: SemigroupSpec | None = None
    sg_coloring: SemigroupColoring | None = None

    def __post_init__(self):
        if self.kind == "builtin" and self.name not in _BUILTINS:
            raise OmegaWordsError(f"unknown builtin coloring {self.name!r}")
        if self.kind not in ("builtin", "table", "g"):
            raise OmegaWordsError(f"unknown coloring kind {self.kind!r}")
        if self.modulus < 1:
            raise OmegaWordsError("coloring modulus must be positive")

    @classmethod
    def builtin(cls, name: str, modulus: int = 2) -> "Coloring":
        return cls("builtin", name, modulus)

    @classmethod
    def from_table(cls, mapping: Mapping[LocatedWord, int]) -> "Coloring":
        return cls("table", table=tuple(sorted((w.entries, int(c)) for w, c in mapping.items())))

    @classmethod
    def via_g(cls, sg: SemigroupSpec, coloring: SemigroupColoring) -> "Coloring":
        return cls("g", semigroup=sg, sg_coloring=coloring)

    def algebra(self) -> "_Algebra":
        """A monoid summary of words under concatenation that determines the color.

        Builtins and integer ``g`` colorings compress to a residue or a single
        position; table colorings keep the whole word.
        """
        if self.kind == "table":
            lookup = dict(self.table)

            def color(entries):
                try:
                    return lookup[entries]
                except KeyError:
                    raise OmegaWordsError(f"table coloring misses {LocatedWord(entries)}") from None
            return _Algebra(lambda n, l: ((n, l),), lambda a, b: a + b, color)
        if self.kind == "g":
            sg, col = self.semigroup, self.sg_coloring
            if sg.carrier == "integers-add" and col.kind == "mod":
                m = col.m
                return _Algebra(lambda n, l: sg.y(l, n) % m, lambda a, b: (a + b) % m, lambda s: s + 1)
            if sg.carrier == "strings-concat" and col.kind == "length-mod":
                m = col.m
                return _Algebra(lambda n, l: len(sg.y(l, n)) % m, lambda a, b: (a + b) % m, lambda s: s + 1)
            return _Algebra(lambda n, l: sg.y(l, n), sg.op, col)
        m = self.modulus
        if self.name == "dom-size-parity":
            return _Algebra(lambda n, l: 1, lambda a, b: (a + b) % 2, lambda s: s + 1)
        if self.name == "min-dom-mod":
            return _Algebra(lambda n, l: n % m, lambda a, b: a, lambda s: s + 1)
        if self.name == "letter-sum-mod":
            return _Algebra(lambda n, l: l % m, lambda a, b: (a + b) % m, lambda s: s + 1)
        if self.name == "max-letter-mod":
            return _Algebra(lambda n, l: l, max, lambda s: s % m + 1)
        return _Algebra(lambda n, l: 0, lambda a, b: 0, lambda s: 1)

    def __call__(self, w: LocatedWord) -> int:
        if self.kind == "g" and w.is_variable:
            raise OmegaWordsError(f"g colorings apply to constant words; {w} has a variable")
        alg = self.algebra()
        acc = None
        for n, l in w.entries:
            x = alg.entry(n, l)
            acc = x if acc is None else alg.combine(acc, x)
        return alg.color(acc)

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        """``name`` or ``name:modulus`` for builtins, otherwise a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        name, _, mod = text.partition(":")
        return cls.builtin(name, int(mod) if mod else 2)

    @classmethod
    def from_json(cls, data) -> "Coloring":
        if isinstance(data, str):
            return cls.parse(data)
        kind = data.get("kind", "builtin")
        if kind == "builtin":
            return cls.builtin(data["name"], int(data.get("modulus", 2)))
        if kind == "table":
            return cls.from_table({LocatedWord.from_json(w): c for w, c in data["table"]})
        if kind == "g":
            return cls.via_g(SemigroupSpec.from_json(data["semigroup"]),
                             SemigroupColoring.from_json(data["coloring"]))
        raise OmegaWordsError(f"unknown coloring kind {kind!r}")

    def to_json(self) -> dict:
        if self.kind == "builtin":
            return {"kind": "builtin", "name": self.name, "modulus": self.modulus}
        if self.kind == "table":
            return {"kind": "table", "table": [[{"entries": [list(e) for e in w]}, c] for w, c in self.table]}
        return {"kind": "g", "semigroup": self.semigroup.to_json(), "coloring": self.sg_coloring.to_json()}


# search

@dataclass(frozen=True)
class Witness:
    words: tuple[LocatedWord, ...]
    i0: int
    j0: int
    bound: int
    candidates: int
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self, timing: bool = False) -> dict:
        stats: dict = {"candidates": self.candidates, "bound": self.bound}
        if timing:
            stats["elapsed"] = round(self.elapsed, 3)
        return {
            "found": True,
            "words": [w.to_json() for w in self.words],
            "i0": self.i0,
            "j0": self.j0,
            "stats": stats,
        }


@dataclass(frozen=True)
class NotFound:
    """Exhaustion of the bounded search space, not a refutation."""

    bound: int
    candidates: int
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self, timing: bool = False) -> dict:
        stats: dict = {"candidates": self.candidates, "bound": self.bound}
        if timing:
            stats["elapsed"] = round(self.elapsed, 3)
        return {"found": False, "N": self.bound, "stats": stats}


_EMPTY_STATE = (frozenset(), frozenset())


class _Engine:
    """Search state for one run.

    A word's profile is its summary under the variable coloring together with
    both summaries of each constant image ``T_p(w)``, ``p = 1..k(last
    variable position)``. The color of every extracted word of a tuple is a
    function of the profiles, so the search runs over classes
    ``(profile, min dom, max dom)`` built by a per-position sweep, and only
    the final answer is turned back into concrete words.
    """

    def __init__(self, m, kk, col_var, col_const, normalize, max_states):
        self.m, self.kk, self.normalize, self.max_states = m, kk, normalize, max_states
        self.V = col_var.algebra()
        self.C = col_const.algebra()
        self.P = max(kk[1:])
        self.caps = [()] + [tuple(min(p, kk[n]) for p in range(1, self.P + 1)) for n in range(1, len(kk))]
        self.start = (None, ((None, None),) * self.P, 0, False)
        self._steps: dict = {}
        self._reach_memo: dict = {}
        self._lexmin: dict = {}
        self.reach: dict[int, set] = {}
        # colors -> profile -> list of (min dom, max dom)
        self.pool: dict[tuple[int, int], dict] = {}
        self.fresh: dict[tuple[int, int], dict] = {}
        self.pool_list: dict = {}
        self.fresh_list: dict = {}

    # single words

    def step(self, state, n, l):
        key = (state, n, l)
        hit = self._steps.get(key)
        if hit is not None:
            return hit
        V, C = self.V, self.C
        sv, imgs, K, _ = state

        def join(alg, acc, x):
            return x if acc is None else alg.combine(acc, x)

        out_v = join(V, sv, V.entry(n, l))
        if l == VARIABLE:
            out_imgs = tuple(
                (join(V, a, V.entry(n, q)), join(C, b, C.entry(n, q)))
                for (a, b), q in zip(imgs, self.caps[n])
            )
            K = self.kk[n]
        else:
            ve, ce = V.entry(n, l), C.entry(n, l)
            out_imgs = tuple((join(V, a, ve), join(C, b, ce)) for a, b in imgs)
        out = (out_v, out_imgs, K, l == VARIABLE)
        self._steps[key] = out
        return out

    def profile(self, state):
        sv, imgs, K, last_var = state
        if K == 0 or (self.normalize and last_var):
            return None
        return sv, imgs[:K]

    def colors(self, prof):
        sv, imgs = prof
        js = {self.C.color(b) for _, b in imgs}
        return (self.V.color(sv), js.pop()) if len(js) == 1 else None

    def first_letters(self, n):
        return range(1, self.kk[n] + 1) if self.normalize else range(self.kk[n] + 1)

    def advance(self, M):
        """Sweep position ``M``: collect the good classes ending at ``M``."""
        letters = range(self.kk[M] + 1)
        fresh: dict = {}
        total = 0
        for a in range(1, M + 1):
            if a == M:
                sources, lets, kept = (self.start,), self.first_letters(M), set()
            else:
                sources, lets, kept = self.reach[a], letters, self.reach[a]
            new = set()
            for st in sources:
                for l in lets:
                    nxt = self.step(st, M, l)
                    new.add(nxt)
                    prof = self.profile(nxt)
                    if prof is None:
                        continue
                    col = self.colors(prof)
                    if col is not None:
                        fresh.setdefault(col, {}).setdefault(prof, set()).add(a)
            self.reach[a] = kept | new
            total += len(self.reach[a])
        if total > self.max_states:
            raise BudgetExceeded(f"more than {self.max_states} word states at bound {M}")
        self.fresh = {
            col: {prof: [(a, M) for a in sorted(starts)] for prof, starts in profs.items()}
            for col, profs in fresh.items()
        }
        self.fresh_list = _ordered(self.fresh)

    def commit(self):
        for col, profs in self.fresh.items():
            dest = self.pool.setdefault(col, {})
            for prof, spans in profs.items():
                dest.setdefault(prof, []).extend(spans)
        self.pool_list = _ordered(self.pool)

    # tuples of profiles

    def extend(self, st, prof, i, j):
        """Prefix summaries after appending a word, or None if a new extracted word breaks the colors."""
        V, C = self.V, self.C
        ev_prev, e_prev = st
        sv, imgs = prof
        new_v, new_c = {sv}, set(imgs)
        for x in ev_prev:
            y = V.combine(x, sv)
            if V.color(y) != i:
                return None
            new_v.add(y)
            for a, _ in imgs:
                y = V.combine(x, a)
                if V.color(y) != i:
                    return None
                new_v.add(y)
        for xv, xc in e_prev:
            y = V.combine(xv, sv)
            if V.color(y) != i:
                return None
            new_v.add(y)
            for a, b in imgs:
                yc = C.combine(xc, b)
                if C.color(yc) != j:
                    return None
                new_c.add((V.combine(xv, a), yc))
        return ev_prev | new_v, e_prev | new_c

    def feasible(self, depth, st, floor, col, memo, counter):
        """Whether ``depth`` chosen words (summaries ``st``, last position ``floor``) complete to a witness."""
        key = (depth, st, floor)
        if key in memo:
            return memo[key]
        i, j = col
        ok = False
        if depth == self.m - 1:
            for prof, spans in self.fresh_list.get(col, ()):
                if spans[-1][0] > floor:
                    counter[0] += 1
                    if self.extend(st, prof, i, j) is not None:
                        ok = True
                        break
        else:
            for prof, spans in self.pool_list.get(col, ()):
                b = min((b for a, b in spans if a > floor), default=None)
                if b is None:
                    continue
                counter[0] += 1
                nxt = self.extend(st, prof, i, j)
                if nxt is not None and self.feasible(depth + 1, nxt, b, col, memo, counter):
                    ok = True
                    break
        memo[key] = ok
        return ok

    def firsts(self):
        """Candidate first profiles, each with the earliest end position it can use."""
        if self.m == 1:
            return [(col, prof, spans[0][1]) for col, lst in sorted(self.fresh_list.items()) for prof, spans in lst]
        return [
            (col, prof, min(b for _, b in spans))
            for col, lst in sorted(self.pool_list.items()) for prof, spans in lst
        ]

    def check_first(self, item):
        col, prof, b = item
        counter = [1]
        if self.m == 1:
            return True, 1
        st = self.extend(_EMPTY_STATE, prof, *col)
        return self.feasible(1, st, b, col, {}, counter), counter[0]

    # concrete words

    def reachable(self, n, state, b):
        """Profiles of completions that decide positions ``n+1..b`` with ``b`` present."""
        key = (n, state, b)
        hit = self._reach_memo.get(key)
        if hit is not None:
            return hit
        letters = range(self.kk[n + 1] + 1)
        if n + 1 == b:
            out = frozenset(p for p in (self.profile(self.step(state, b, l)) for l in letters) if p is not None)
        else:
            out = set(self.reachable(n + 1, state, b))
            for l in letters:
                out |= self.reachable(n + 1, self.step(state, n + 1, l), b)
            out = frozenset(out)
        self._reach_memo[key] = out
        return out

    def lexmin(self, prof, a, b) -> Entries:
        """Entry-lexicographically least word of the class ``(prof, a, b)``."""
        key = (prof, a, b)
        if key in self._lexmin:
            return self._lexmin[key]

        def fits(n, st):
            return self.profile(st) == prof if n == b else prof in self.reachable(n, st, b)

        entries, st = None, None
        for l in self.first_letters(a):
            cand = self.step(self.start, a, l)
            if fits(a, cand):
                entries, st = [(a, l)], cand
                break
        for n in range(a + 1, b + 1):
            options = list(range(self.kk[n] + 1)) + ([None] if n < b else [])
            for l in options:
                cand = st if l is None else self.step(st, n, l)
                if fits(n, cand):
                    st = cand
                    if l is not None:
                        entries.append((n, l))
                    break
        out = tuple(entries)
        self._lexmin[key] = out
        return out

    def extract(self) -> tuple[tuple[Entries, ...], tuple[int, int]]:
        """Least witness ending at the current bound; call only after a feasible first was seen."""
        st, floor, col = _EMPTY_STATE, 0, None
        memo: dict = {}
        words = []
        for depth in range(self.m):
            last = depth == self.m - 1
            source = self.fresh_list if last else self.pool_list
            classes = sorted(
                (a, b, repr(prof), prof, c)
                for c, lst in source.items() if col is None or c == col
                for prof, spans in lst
                for a, b in spans if a > floor
            )
            best = None
            for a, b, _, prof, c in classes:
                if best is not None and a > best[0][0][0]:
                    break
                nxt = self.extend(st, prof, *c)
                if nxt is None:
                    continue
                if not last and not self.feasible(depth + 1, nxt, b, c, memo, [0]):
                    continue
                w = self.lexmin(prof, a, b)
                if best is None or w < best[0]:
                    best = (w, nxt, b, c)
            w, st, floor, col = best
            words.append(w)
        return tuple(words), col


def _ordered(table: dict) -> dict:
    return {col: sorted(profs.items(), key=lambda t: repr(t[0])) for col, profs in table.items()}


_WORKER: _Engine | None = None


def _run_chunk(items):
    return [_WORKER.check_first(item) for item in items]


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _check_all(eng: _Engine, items: list, workers: int) -> list[tuple[bool, int]]:
    global _WORKER
    _WORKER = eng
    if workers <= 1 or len(items) <= 1:
        return _run_chunk(items)
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        parts = pool.map(_run_chunk, _chunks(items, workers * 4))
        return [r for part in parts for r in part]


def find_homogeneous(
    m: int,
    N: int,
    k: DominationSeq,
    col_var: Coloring,
    col_const: Coloring,
    workers: int = 1,
    normalize: bool = False,
    max_states: int = 2_000_000,
) -> Witness | NotFound:
    """Least orderly ``m``-tuple of variable words inside ``[1..N]`` with
    ``ev`` monochromatic under ``col_var`` and ``e`` under ``col_const``.

    With ``normalize`` only words with constant first and last entries are
    used, as the semigroup bridge requires. ``candidates`` counts profile
    extensions tried while deciding feasibility; it does not depend on
    ``workers``.
    """
    if m < 1 or N < 1:
        raise OmegaWordsError("m and N must be positive")
    if col_var.kind == "g":
        raise OmegaWordsError("g colorings apply to constant words, not to the variable side")
    t0 = time.perf_counter()
    kk = [0] + [k(n) for n in range(1, N + 1)]
    eng = _Engine(m, kk, col_var, col_const, normalize, max_states)
    candidates = 0
    for M in range(1, N + 1):
        eng.advance(M)
        results = _check_all(eng, eng.firsts(), workers)
        candidates += sum(count for _, count in results)
        if any(ok for ok, _ in results):
            words, (i0, j0) = eng.extract()
            return Witness(tuple(LocatedWord(w) for w in words), i0, j0, M, candidates,
                           time.perf_counter() - t0)
        eng.commit()
    return NotFound(N, candidates, time.perf_counter() - t0)


# independent verification

def _naive_extracted(words: Sequence[LocatedWord], k: DominationSeq) -> tuple[set, set]:
    """Variable and constant extracted words by plain nested loops over subsets and exponents."""
    variable, constant = set(), set()
    n = len(words)
    for mask in range(1, 2 ** n):
        chosen = [words[i] for i in range(n) if mask >> i & 1]
        top = max(k(pos) for w in chosen for pos in w.dom)
        for ps in itertools.product(range(top + 1), repeat=len(chosen)):
            letters = {}
            for w, p in zip(chosen, ps):
                for pos, l in w.entries:
                    if l == VARIABLE and p > 0:
                        l = min(p, k(pos))
                    letters[pos] = l
            word = tuple(sorted(letters.items()))
            (variable if 0 in ps else constant).add(word)
    return variable, constant


def verify_homogeneous(words: Sequence[LocatedWord], k: DominationSeq,
                       col_var: Coloring, col_const: Coloring) -> bool:
    words = tuple(words)
    assert words, "a witness has at least one word"
    if not is_orderly(words) or not all(w.is_variable for w in words):
        return False
    variable, constant = _naive_extracted(words, k)
    assert variable and constant, "extracted sets of a nonempty tuple are nonempty"
    cv = {col_var(LocatedWord(w)) for w in variable}
    cc = {col_const(LocatedWord(w)) for w in constant}
    return len(cv) == 1 and len(cc) == 1


def vdw_bridge_check(words: Sequence[LocatedWord], k: DominationSeq, sg: SemigroupSpec,
                     coloring: SemigroupColoring, lambda_cap: int | None = None) -> bool:
    """Whether every FS-sum of ``x_n = beta_n + sum_{t in H_n} y(f(n), t)`` has one color, for every ``f``."""
    if not sg.commutative:
        raise OmegaWordsError("the bridge needs a commutative semigroup")
    words = tuple(words)
    if not is_orderly(words):
        raise OrderError("witness words must be orderly")
    pieces = []
    for w in words:
        if not w.is_variable or w.entries[0][1] == VARIABLE or w.entries[-1][1] == VARIABLE:
            raise OmegaWordsError(f"{w} needs constant first and last entries and a variable")
        H = w.variable_positions
        beta = sg.fold(sg.y(l, pos) for pos, l in w.entries if l != VARIABLE)
        pieces.append((beta, H, range(1, k(w.min_dom) + 1)))
    colors = set()
    for f in itertools.product(*(choices for _, _, choices in pieces)):
        xs = [sg.fold([beta, *(sg.y(fn, t) for t in H)]) for (beta, H, _), fn in zip(pieces, f)]
        colors.update(coloring(v) for v in fs_set(xs, sg, lambda_cap))
        if len(colors) > 1:
            return False
    return True


def normalize_by_replacement(words: Sequence[LocatedWord], k: DominationSeq) -> list[LocatedWord]:
    """``u_n = T_1(w_{3n-1}) ⋆ w_{3n} ⋆ T_1(w_{3n+1})`` (1-based) for every complete triple."""
    words = list(words)
    out = []
    n = 1
    while 3 * n + 1 <= len(words):
        a, b, c = words[3 * n - 2], words[3 * n - 1], words[3 * n]
        out.append(concat(concat(t_p(a, 1, k), b), t_p(c, 1, k)))
        n += 1
    return out
