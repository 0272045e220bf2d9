import itertools
import random

import pytest

from omegawords.errors import OmegaWordsError, OrderError
from omegawords.ordinal import parse
from omegawords.schreier import (
    Status,
    canonical_decomposition,
    feed,
    feed_all,
    member,
    start,
    thinness_audit,
)
from oracles import naive_member

XIS = ["1", "2", "3", "w", "w+1", "w*2", "w^2"]


def test_membership_examples():
    assert member(parse("w"), {3, 5, 7})
    assert not member(parse("w"), {3, 5})
    assert member(2, {4, 9})
    assert not member(2, {4})
    assert member(0, set())
    assert not member(1, set())
    # w+1: one leading point, then an A_w member
    assert member(parse("w+1"), {1, 2, 3})
    assert not member(parse("w+1"), {1, 2})
    # w*2: two consecutive A_w blocks
    assert member(parse("w*2"), {1, 2, 3})
    assert member(parse("w*2"), {2, 3, 4, 5, 6, 7})
    # w^2 at n: n consecutive A_w blocks
    assert member(parse("w^2"), {1})
    assert member(parse("w^2"), {2, 3, 4, 5, 6, 7})
    assert not member(parse("w^2"), {2, 3, 4, 5, 6})


def test_limit_exponent_uses_fixed_sequence():
    # w^w at n is A_{w^(n+1)}; at n=1 that is A_{w^2}, where {1} is already a member
    assert member(parse("w^w"), {1})
    assert not member(parse("w^w"), {1, 2})
    # at n=2, A_{w^3}: two A_{w^2} blocks, the first of which is {2,3} then {4..7}
    assert not member(parse("w^w"), {2, 3, 4, 5, 6, 7})


@pytest.mark.parametrize("xi", XIS + ["w^w", "w^2+w", "w^(w+1)"])
def test_member_matches_naive_oracle(xi):
    x = parse(xi)
    for size in range(0, 8):
        for s in itertools.combinations(range(1, 9), size):
            assert member(x, s) == naive_member(x, s), s


def test_feed_requires_increasing_input():
    st = feed(start(parse("w")), 3)
    with pytest.raises(OrderError):
        feed(st, 3)
    with pytest.raises(OmegaWordsError):
        start(0)


def test_feed_after_completion_raises():
    st = feed_all(1, [4])
    assert st.status is Status.JUST_COMPLETED
    with pytest.raises(OrderError):
        feed(st, 5)


@pytest.mark.parametrize("xi", XIS)
def test_automaton_matches_member_on_prefixes(xi):
    x = parse(xi)
    for size in range(1, 7):
        for s in itertools.combinations(range(1, 10), size):
            try:
                st = feed_all(x, s)
            except OrderError:
                continue
            assert (st.status is Status.JUST_COMPLETED) == member(x, s)


def test_residual_ordinal_drops_on_every_feed():
    x = parse("w^2+w")
    st = start(x)
    assert st.residual_ordinal() == x
    # {2,3} closes the A_w piece, then A_{w^2} from 4 closes at 63
    for n in range(2, 100):
        before = st.residual_ordinal()
        st = feed(st, n)
        assert st.residual_ordinal() < before
        if st.status is Status.JUST_COMPLETED:
            break
    assert st.status is Status.JUST_COMPLETED and st.last == 63


def test_decomposition_example():
    blocks, rest = canonical_decomposition(parse("w"), [2, 3, 5, 6, 7, 8, 9, 10])
    assert blocks == [(2, 3), (5, 6, 7, 8, 9)]
    assert rest == (10,)
    with pytest.raises(OmegaWordsError):
        canonical_decomposition(0, [1])


@pytest.mark.parametrize("xi", XIS)
def test_decomposition_blocks_are_members(xi):
    rng = random.Random(xi)
    x = parse(xi)
    for _ in range(50):
        seq = sorted(rng.sample(range(1, 30), rng.randint(1, 12)))
        blocks, rest = canonical_decomposition(x, seq)
        assert [n for b in blocks for n in b] + list(rest) == seq
        assert all(member(x, b) for b in blocks)
        assert not rest or feed_all(x, rest).status is Status.CONTINUE


@pytest.mark.parametrize("xi", ["2", "w", "w+1"])
def test_thinness_audit_small(xi):
    assert thinness_audit(parse(xi), 9) == []


def test_prefix_closure_is_hereditary():
    """Every subset of a member is a prefix of some member: feeding it never overruns."""
    for xi in XIS:
        x = parse(xi)
        for size in range(1, 11):
            for s in itertools.combinations(range(1, 11), size):
                if not member(x, s):
                    continue
                for r in range(1, size):
                    for sub in itertools.combinations(s, r):
                        assert feed_all(x, sub).status in (Status.CONTINUE, Status.JUST_COMPLETED)
