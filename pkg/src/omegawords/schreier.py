"""Schreier families ``A_xi`` of finite subsets of the positive integers.

Membership for limit ordinals is relative to the fixed fundamental sequences
of :func:`omegawords.ordinal.fundamental_successor_seq`. Change that
convention and the limit-indexed families change with it.

Two independent routes are provided:

* :func:`member` / :func:`canonical_decomposition` parse a finite increasing
  sequence directly against the recursive definition;
* :func:`start` / :func:`feed` run an incremental automaton whose state is a
  stack of pending obligations "complete ``count`` consecutive members of
  ``A_gamma``". Feeding the first element of a residual family expands the
  top obligation, which realises the residual law
  ``A_xi(n) = A_{xi_n} ∩ [{n+1, ...}]^{<ω}`` without closed-form ``xi_n``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import OmegaWordsError, OrderError
from .ordinal import ONE, ZERO, Ordinal, add, as_ordinal, fundamental_successor_seq, mul_nat


def _check_increasing(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    if any(not isinstance(x, int) or x < 1 for x in seq):
        raise OmegaWordsError("elements must be positive integers")
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise OrderError(f"sequence is not strictly increasing: {list(seq)}")
    return seq


def _expand(gamma: Ordinal, n: int) -> list[tuple[Ordinal, int]]:
    """Obligations that replace ``A_gamma`` (gamma >= 2) once its first element ``n`` is known.

    Returned in the order they must be completed.
    """
    if gamma.is_successor:
        return [(ONE, 1), (gamma.predecessor(), 1)]
    if len(gamma.terms) == 1 and gamma.terms[0][1] == 1:
        exp = gamma.terms[0][0]
        if exp.is_successor:
            return [(Ordinal.omega_power(exp.predecessor()), n)]
        return [(Ordinal.omega_power(fundamental_successor_seq(exp, n)), 1)]
    # limit with several CNF pieces: lowest-order pieces come first
    return [(Ordinal.omega_power(exp), coef) for exp, coef in reversed(gamma.terms)]


# batch route

def _lead(xi: Ordinal, seq: tuple[int, ...], i: int) -> int | None:
    """End index ``j`` with ``seq[i:j]`` in ``A_xi``, or None if no such prefix exists.

    Thinness makes the prefix unique, so each case only needs one parse.
    """
    if xi.is_zero:
        return i
    if i >= len(seq):
        return None
    if xi == ONE:
        return i + 1
    if xi.is_successor:
        return _lead(xi.predecessor(), seq, i + 1)
    if len(xi.terms) == 1 and xi.terms[0][1] == 1:
        exp = xi.terms[0][0]
        n = seq[i]
        if exp.is_successor:
            block = Ordinal.omega_power(exp.predecessor())
            j = i
            for _ in range(n):
                j = _lead(block, seq, j)
                if j is None:
                    return None
            return j
        return _lead(Ordinal.omega_power(fundamental_successor_seq(exp, n)), seq, i)
    j = i
    for exp, coef in reversed(xi.terms):
        block = Ordinal.omega_power(exp)
        for _ in range(coef):
            j = _lead(block, seq, j)
            if j is None:
                return None
    return j


def member(xi, s: Sequence[int]) -> bool:
    xi = as_ordinal(xi)
    s = _check_increasing(sorted(s))
    if xi.is_zero:
        return not s
    return bool(s) and _lead(xi, s, 0) == len(s)


def canonical_decomposition(xi, seq: Sequence[int]) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Split ``seq`` into consecutive ``A_xi`` members followed by a proper-prefix remainder."""
    xi = as_ordinal(xi)
    if xi.is_zero:
        raise OmegaWordsError("A_0 = {∅} admits no decomposition of a nonempty sequence")
    seq = _check_increasing(seq)
    blocks, i = [], 0
    while i < len(seq):
        j = _lead(xi, seq, i)
        if j is None:
            break
        blocks.append(seq[i:j])
        i = j
    return blocks, seq[i:]


def thinness_audit(xi, bound: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All pairs ``(s, t)`` of members of ``A_xi`` within ``[1..bound]`` with ``s`` a proper prefix of ``t``."""
    xi = as_ordinal(xi)
    universe = range(1, bound + 1)
    members = {
        s
        for size in range(bound + 1)
        for s in itertools.combinations(universe, size)
        if member(xi, s)
    }
    violations = []
    for t in sorted(members, key=lambda x: (len(x), x)):
        for cut in range(len(t)):
            if t[:cut] in members:
                violations.append((t[:cut], t))
    return violations


# incremental route

class Status(enum.Enum):
    CONTINUE = "continue"
    JUST_COMPLETED = "just_completed"
    DEAD = "dead"


@dataclass(frozen=True)
class SchreierState:
    """Pending obligations, top of stack last. Empty stack means a member was just completed."""

    xi: Ordinal
    obligations: tuple[tuple[Ordinal, int], ...]
    last: int | None = None
    status: Status = Status.CONTINUE

    def residual_ordinal(self) -> Ordinal:
        """Order type of the residual family: later obligations are added first."""
        total = ZERO
        for gamma, count in self.obligations:
            total = add(total, mul_nat(gamma, count))
        return total


def start(xi) -> SchreierState:
    xi = as_ordinal(xi)
    if xi.is_zero:
        raise OmegaWordsError("A_0 contains only the empty set; nothing can be fed")
    return SchreierState(xi, ((xi, 1),))


def feed(st: SchreierState, n: int) -> SchreierState:
    if st.status is Status.DEAD:
        return st
    if st.status is Status.JUST_COMPLETED:
        raise OrderError("state already completed a member; A_xi is thin, restart instead")
    if not isinstance(n, int) or n < 1:
        raise OmegaWordsError("fed elements must be positive integers")
    if st.last is not None and n <= st.last:
        raise OrderError(f"fed {n} after {st.last}; input must be strictly increasing")
    stack = list(st.obligations)
    while True:
        gamma, count = stack.pop()
        if count > 1:
            stack.append((gamma, count - 1))
        if gamma == ONE:
            break
        stack.extend(reversed(_expand(gamma, n)))
    status = Status.CONTINUE if stack else Status.JUST_COMPLETED
    return SchreierState(st.xi, tuple(stack), n, status)


def feed_all(xi, seq: Sequence[int]) -> SchreierState:
    st = start(xi)
    for n in seq:
        st = feed(st, n)
    return st
