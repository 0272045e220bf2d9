"""Families of finite orderly tuples of variable words, and their strong CB index.

Families are small symbolic ASTs. Every node knows, for a tuple ``w`` it
contains, the height ``rank(w)``: the largest stage ``delta`` with ``w`` still
in the ``delta``-th derivative. Derivatives and the index are read from it,
so transfinite stages never materialise an infinite family.

Why the derivative is decidable: ``w`` survives one derivative iff its
rejected one-step extensions contain no infinite orderly sequence. Only
finitely many located words live below any position bound (position ``n``
carries at most ``k(n) + 1`` symbols), so an infinite orderly sequence exists
inside a set of words iff the set has members with arbitrarily large
``min dom``. For the Schreier families a tuple's one-step extensions depend
only on the new word's ``min dom``, and the residual automaton decides them:
a tuple whose projection is still open (``Continue``) accepts every later
word, while a completed tuple accepts none. The resulting height is the
residual ordinal of the automaton state.

The ambient sequence defaults to ``e_n = {n: variable}``, whose extracted
variable words are all variable words; a :class:`FamilyContext` with
explicit generators restricts the universe to ``ev(generators)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceeded, OmegaWordsError, OrderError
from .extraction import ev, is_orderly, projection
from .ordinal import ONE, ZERO, Ordinal, as_ordinal, format_ordinal, sub_left
from .schreier import canonical_decomposition, feed_all
from .words import DominationSeq, LocatedWord, enumerate_located, word_key

Tuple = tuple[LocatedWord, ...]


@dataclass(frozen=True)
class FamilyContext:
    k: DominationSeq = field(default_factory=lambda: DominationSeq.constant(1))
    generators: Tuple | None = None

    @cached_property
    def pool(self) -> frozenset[LocatedWord] | None:
        return None if self.generators is None else ev(self.generators, self.k)

    def admits(self, words: Sequence[LocatedWord]) -> bool:
        if not is_orderly(words):
            return False
        for w in words:
            if not w.is_variable:
                return False
            if self.pool is not None and w not in self.pool:
                return False
        return True


DEFAULT_CONTEXT = FamilyContext()


class FamilySpec:
    """Base class for family AST nodes."""

    def rank(self, words: Sequence[LocatedWord], ctx: FamilyContext = DEFAULT_CONTEXT) -> Ordinal | None:
        raise NotImplementedError

    def contains(self, words: Sequence[LocatedWord], ctx: FamilyContext = DEFAULT_CONTEXT) -> bool:
        return self.rank(tuple(words), ctx) is not None


@dataclass(frozen=True)
class ExplicitFinite(FamilySpec):
    members: frozenset[Tuple] = frozenset()

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        # over an infinite universe every member of a finite family is removed by one derivative
        return ZERO if tuple(words) in self.members else None


@dataclass(frozen=True)
class LenAtMost(FamilySpec):
    m: int

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        words = tuple(words)
        if len(words) > self.m or not ctx.admits(words):
            return None
        return Ordinal.of(self.m - len(words))


@dataclass(frozen=True)
class SchreierHered(FamilySpec):
    """Extracted subtuples of ``L^xi`` tuples: projection is a prefix of an ``A_xi`` member."""

    xi: Ordinal

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        words = tuple(words)
        if not words:
            return self.xi
        if self.xi.is_zero or not ctx.admits(words):
            return None
        try:
            st = feed_all(self.xi, projection(words))
        except OrderError:
            return None
        return st.residual_ordinal()


@dataclass(frozen=True)
class AllTuples(FamilySpec):
    """Every orderly tuple of the universe; hereditary but not pointwise closed."""

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        raise OmegaWordsError("the family of all tuples is not pointwise closed; it has no index")

    def contains(self, words, ctx=DEFAULT_CONTEXT):
        return ctx.admits(tuple(words))


@dataclass(frozen=True)
class Union(FamilySpec):
    parts: tuple[FamilySpec, ...]

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        # exact when every part's extension sets are finite or cofinite, which holds for all leaf kinds here
        ranks = [r for r in (p.rank(words, ctx) for p in self.parts) if r is not None]
        return max(ranks) if ranks else None

    def contains(self, words, ctx=DEFAULT_CONTEXT):
        return any(p.contains(words, ctx) for p in self.parts)


@dataclass(frozen=True)
class Intersect(FamilySpec):
    parts: tuple[FamilySpec, ...]

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        ranks = [p.rank(words, ctx) for p in self.parts]
        if not ranks or any(r is None for r in ranks):
            return None
        return min(ranks)

    def contains(self, words, ctx=DEFAULT_CONTEXT):
        return bool(self.parts) and all(p.contains(words, ctx) for p in self.parts)


@dataclass(frozen=True)
class Derived(FamilySpec):
    """The ``depth``-th derivative of ``base``."""

    base: FamilySpec
    depth: Ordinal

    def rank(self, words, ctx=DEFAULT_CONTEXT):
        r = self.base.rank(words, ctx)
        if r is None or r < self.depth:
            return None
        return sub_left(r, self.depth)


EMPTY = ExplicitFinite(frozenset())
ROOT_ONLY = ExplicitFinite(frozenset({()}))


def is_empty(F: FamilySpec, ctx: FamilyContext = DEFAULT_CONTEXT) -> bool:
    """Trees are empty iff they miss the empty tuple."""
    return not F.contains((), ctx)


# explicit closures

def _tuples_over(pool: Iterable[LocatedWord], max_len: int | None = None) -> list[Tuple]:
    """All orderly tuples (including the empty one) over a finite pool."""
    words = sorted(pool, key=word_key)
    out: list[Tuple] = [()]

    def extend(prefix: Tuple):
        floor = prefix[-1].max_dom if prefix else 0
        for w in words:
            if w.min_dom > floor:
                nxt = prefix + (w,)
                out.append(nxt)
                if max_len is None or len(nxt) < max_len:
                    extend(nxt)

    extend(())
    return out


def ev_subtuples(u: Sequence[LocatedWord], k: DominationSeq) -> list[Tuple]:
    """``EV^{<∞}(u)``: orderly tuples over ``ev(u)``, with the empty tuple."""
    u = tuple(u)
    if not u:
        return [()]
    return _tuples_over(ev(u, k))


def _explicit(F: FamilySpec) -> ExplicitFinite:
    if not isinstance(F, ExplicitFinite):
        raise OmegaWordsError("this operation needs an explicit finite family")
    return F


def star_closure(F: FamilySpec) -> ExplicitFinite:
    members = set()
    for u in _explicit(F).members:
        members.update(u[:i] for i in range(len(u) + 1))
    return ExplicitFinite(frozenset(members))


def hered_closure(F: FamilySpec, k: DominationSeq) -> ExplicitFinite:
    members = set()
    for u in _explicit(F).members:
        members.update(ev_subtuples(u, k))
    return ExplicitFinite(frozenset(members))


def is_tree(F: FamilySpec) -> bool:
    return star_closure(F) == _explicit(F)


def is_hereditary(F: FamilySpec, k: DominationSeq) -> bool:
    if isinstance(F, ExplicitFinite):
        return hered_closure(F, k) == F
    if isinstance(F, (Union, Intersect)):
        return all(is_hereditary(p, k) for p in F.parts)
    if isinstance(F, Derived):
        return is_hereditary(F.base, k)
    return True


def materialize(F: FamilySpec, ctx: FamilyContext, bound: int, cap: int = 200_000) -> ExplicitFinite:
    """Members of ``F`` whose words have domains inside ``[1..bound]``."""
    if isinstance(F, ExplicitFinite):
        return ExplicitFinite(frozenset(
            w for w in F.members if all(x.max_dom <= bound for x in w)
        ))
    pool = [w for w in enumerate_located(bound, ctx.k, variable_only=True, cap=cap)
            if ctx.pool is None or w in ctx.pool]
    members = set()
    count = 0
    for t in _tuples_over(pool):
        count += 1
        if count > cap:
            raise BudgetExceeded(f"more than {cap} tuples in the bounded universe")
        if F.contains(t, ctx):
            members.add(t)
    return ExplicitFinite(frozenset(members))


def f_h(F: FamilySpec, ctx: FamilyContext = DEFAULT_CONTEXT, bound: int = 4) -> ExplicitFinite:
    """Largest hereditary subfamily, computed on the bounded universe for symbolic input."""
    explicit = materialize(F, ctx, bound)
    members = explicit.members
    kept = set()
    for w in members:
        if all(t in members for t in ev_subtuples(w, ctx.k)):
            kept.add(w)
    return ExplicitFinite(frozenset(kept))


# derivative and index

def derivative(F: FamilySpec, ctx: FamilyContext = DEFAULT_CONTEXT) -> FamilySpec:
    if not is_hereditary(F, ctx.k):
        raise OmegaWordsError("derivative needs a hereditary family")
    if isinstance(F, AllTuples):
        return F
    if isinstance(F, ExplicitFinite):
        return EMPTY
    if isinstance(F, LenAtMost):
        return LenAtMost(F.m - 1) if F.m >= 1 else EMPTY
    base, depth = (F.base, F.depth.succ()) if isinstance(F, Derived) else (F, ONE)
    root = base.rank((), ctx)
    if root is None or depth > root:
        return EMPTY
    if depth == root and isinstance(base, SchreierHered):
        # heights strictly drop along Schreier branches, so only the root is left
        return ROOT_ONLY
    return Derived(base, depth)


def strong_cb_index(F: FamilySpec, ctx: FamilyContext = DEFAULT_CONTEXT, budget=None) -> Ordinal:
    """Least stage at which the iterated derivatives of ``F`` become empty."""
    if not is_hereditary(F, ctx.k):
        raise OmegaWordsError("the strong index is defined for hereditary families")
    check = pointwise_closed_check(F, ctx=ctx)
    if not check.closed:
        raise OmegaWordsError("the strong index needs a pointwise closed family")
    root = F.rank((), ctx)
    index = ZERO if root is None else root.succ()
    if budget is not None and index > as_ordinal(budget):
        raise BudgetExceeded(f"index {index} exceeds the ordinal budget {as_ordinal(budget)}")
    return index


def canonical_rep_L_xi(xi, words: Sequence[LocatedWord]) -> tuple[list[Tuple], Tuple]:
    """Blocks in ``L^xi`` followed by a remainder in ``(L^xi)* \\ L^xi``."""
    words = tuple(words)
    if not is_orderly(words):
        raise OrderError("canonical representation needs an orderly tuple")
    blocks, rest = canonical_decomposition(xi, projection(words))
    out, i = [], 0
    for b in blocks:
        out.append(words[i:i + len(b)])
        i += len(b)
    return out, words[i:]


@dataclass(frozen=True)
class ClosedCheck:
    closed: bool
    structural: bool
    chain: tuple[Tuple, ...] = ()

    def to_json(self) -> dict:
        return {
            "verdict": "closed" if self.closed else "witness-chain",
            "basis": "structural" if self.structural else "probe",
            "chain": [[w.to_json() for w in t] for t in self.chain],
        }


def _probe_chain(F: FamilySpec, ctx: FamilyContext, depth: int) -> tuple[Tuple, ...]:
    """Greedy strictly increasing chain inside ``F`` built from the earliest admissible words."""
    if ctx.pool is not None:
        pool = sorted(ctx.pool, key=word_key)
    else:
        pool = [LocatedWord(((n, 0),)) for n in range(1, 4 * depth + 2)]
    chain: list[Tuple] = [()] if F.contains((), ctx) else []
    current: Tuple = ()
    while chain and len(current) < depth:
        floor = current[-1].max_dom if current else 0
        for w in pool:
            if w.min_dom > floor and F.contains(current + (w,), ctx):
                current = current + (w,)
                chain.append(current)
                break
        else:
            break
    return tuple(chain)


def pointwise_closed_check(F: FamilySpec, depth: int = 8, ctx: FamilyContext = DEFAULT_CONTEXT) -> ClosedCheck:
    """Structural verdict where a chain-length bound is known, otherwise a bounded probe."""
    if isinstance(F, (ExplicitFinite, LenAtMost, SchreierHered)):
        return ClosedCheck(True, True)
    if isinstance(F, Derived):
        base = pointwise_closed_check(F.base, depth, ctx)
        return ClosedCheck(True, True) if base.closed and base.structural else base
    if isinstance(F, Union):
        checks = [pointwise_closed_check(p, depth, ctx) for p in F.parts]
        for c in checks:
            if not c.closed:
                return c
        return ClosedCheck(True, all(c.structural for c in checks))
    if isinstance(F, Intersect):
        checks = [pointwise_closed_check(p, depth, ctx) for p in F.parts]
        if any(c.closed and c.structural for c in checks):
            return ClosedCheck(True, True)
    chain = _probe_chain(F, ctx, depth)
    if len(chain) > depth:
        return ClosedCheck(False, False, chain)
    return ClosedCheck(True, False, chain)


# JSON AST

def family_from_json(data) -> FamilySpec:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or len(data) != 1:
        raise OmegaWordsError("a family spec is a single-key object")
    (tag, body), = data.items()
    if tag == "ExplicitFinite":
        return ExplicitFinite(frozenset(
            tuple(LocatedWord.from_json(w) for w in t) for t in body
        ))
    if tag == "LenAtMost":
        return LenAtMost(int(body))
    if tag == "SchreierHered":
        return SchreierHered(as_ordinal(str(body)))
    if tag == "AllTuples":
        return AllTuples()
    if tag == "Union":
        return Union(tuple(family_from_json(p) for p in body))
    if tag == "Intersect":
        return Intersect(tuple(family_from_json(p) for p in body))
    if tag == "Derived":
        return Derived(family_from_json(body["base"]), as_ordinal(str(body["depth"])))
    raise OmegaWordsError(f"unknown family node {tag!r}")


def family_to_json(F: FamilySpec):
    if isinstance(F, ExplicitFinite):
        tuples = sorted(F.members, key=lambda t: (len(t), [word_key(w) for w in t]))
        return {"ExplicitFinite": [[w.to_json() for w in t] for t in tuples]}
    if isinstance(F, LenAtMost):
        return {"LenAtMost": F.m}
    if isinstance(F, SchreierHered):
        return {"SchreierHered": format_ordinal(F.xi)}
    if isinstance(F, AllTuples):
        return {"AllTuples": None}
    if isinstance(F, Union):
        return {"Union": [family_to_json(p) for p in F.parts]}
    if isinstance(F, Intersect):
        return {"Intersect": [family_to_json(p) for p in F.parts]}
    if isinstance(F, Derived):
        return {"Derived": {"base": family_to_json(F.base), "depth": format_ordinal(F.depth)}}
    raise OmegaWordsError(f"cannot serialise {F!r}")
