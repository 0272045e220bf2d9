"""End-to-end acceptance checks, one test per numbered criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists a
PASS/FAIL line for each criterion.
"""

import itertools
import json
import random
import time

import pytest

from omegawords.errors import OrderError
from omegawords.extraction import e, ev
from omegawords.families import LenAtMost, SchreierHered, strong_cb_index
from omegawords.ordinal import Ordinal, parse
from omegawords.schreier import Status, canonical_decomposition, feed, feed_all, member, start, thinness_audit
from omegawords.search import (
    Coloring,
    SemigroupColoring,
    SemigroupSpec,
    Witness,
    find_homogeneous,
    g_eval,
    g_grouped_noncommutative,
    vdw_bridge_check,
    verify_homogeneous,
)
from omegawords.words import (
    DominationSeq,
    LocatedWord,
    concat,
    enumerate_located,
    less,
    plus,
    t_p,
    to_unlocated,
    wt_p,
)
from oracles import naive_extracted, naive_member

XIS = ["1", "2", "3", "w", "w+1", "w*2", "w^2"]
K1, K2, KN = DominationSeq.constant(1), DominationSeq.constant(2), DominationSeq.affine(1, 0)
K_VDW = DominationSeq.table([1, 2, 3])
SG = SemigroupSpec("integers-add", "power", base=4)
MOD3 = SemigroupColoring("mod", 3)


def hindman(workers=1):
    return find_homogeneous(3, 20, K1, Coloring.builtin("dom-size-parity"),
                            Coloring.builtin("min-dom-mod", 2), workers=workers)


def bridge(workers=1):
    return find_homogeneous(2, 16, K_VDW, Coloring.builtin("constant"), Coloring.via_g(SG, MOD3),
                            workers=workers, normalize=True)


@pytest.mark.criterion(1, "Schreier families are thin on [1..12]")
def test_criterion_1_thinness():
    t0 = time.perf_counter()
    for xi in XIS:
        assert thinness_audit(parse(xi), 12) == [], xi
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(2, "incremental automaton agrees with batch membership")
def test_criterion_2_residual_automaton():
    mismatches = []
    for xi in XIS:
        x = parse(xi)
        for n in range(0, 7):
            rest = range(n + 1, 13)
            for size in range(1, len(rest) + 1):
                for s in itertools.combinations(rest, size):
                    st, done = start(x), False
                    for i, value in enumerate(s):
                        before = st.residual_ordinal()
                        try:
                            st = feed(st, value)
                        except OrderError:
                            done = True
                            # past a completed member nothing longer is a member
                            if member(x, s[:i + 1]):
                                mismatches.append((xi, s[:i + 1]))
                            break
                        if st.residual_ordinal() >= before:
                            mismatches.append((xi, s[:i + 1], "residual"))
                        if (st.status is Status.JUST_COMPLETED) != member(x, s[:i + 1]):
                            mismatches.append((xi, s[:i + 1]))
                    if not done and (st.status is Status.JUST_COMPLETED) != member(x, s):
                        mismatches.append((xi, s))
    assert mismatches == []


@pytest.mark.criterion(3, "canonical representation exists and is unique")
def test_criterion_3_canonical_representation():
    failures = []
    for xi in XIS:
        x = parse(xi)
        rng = random.Random(f"canon-{xi}")
        for _ in range(200):
            seq = tuple(sorted(rng.sample(range(1, 41), rng.randint(1, 20))))
            blocks, rest = canonical_decomposition(x, seq)
            if tuple(n for b in blocks for n in b) + tuple(rest) != seq:
                failures.append((xi, seq, "cover"))
                continue
            i = 0
            for b in blocks:
                valid = [j for j in range(i + 1, len(seq) + 1) if naive_member(x, seq[i:j])]
                if valid != [i + len(b)]:
                    failures.append((xi, seq, i, valid))
                i += len(b)
            if any(naive_member(x, seq[i:j]) for j in range(i + 1, len(seq) + 1)):
                failures.append((xi, seq, "remainder"))
            if rest and feed_all(x, rest).status is not Status.CONTINUE:
                failures.append((xi, seq, "remainder prefix"))
    assert failures == []


@pytest.mark.criterion(4, "strong Cantor-Bendixson index is xi+1 and m+1")
def test_criterion_4_cb_index():
    for xi in XIS:
        assert strong_cb_index(SchreierHered(parse(xi))) == parse(xi).succ(), xi
    for m in range(4):
        assert strong_cb_index(LenAtMost(m)) == Ordinal.of(m + 1)


def _random_word(rng, k, lo, hi, constant=False):
    dom = sorted(rng.sample(range(lo, hi + 1), rng.randint(1, min(5, hi - lo + 1))))
    letters = {n: rng.randint(1 if constant else 0, k(n)) for n in dom}
    return LocatedWord.of(letters)


def _pairs(rng, k, count, constant=False):
    for _ in range(count):
        cut = rng.randint(1, 10)
        yield _random_word(rng, k, 1, cut, constant), _random_word(rng, k, cut + 1, 20, constant)


def _identities(w, u, k, violations):
    for p in range(0, 4):
        if t_p(concat(w, u), p, k) != concat(t_p(w, p, k), t_p(u, p, k)):
            violations.append(("T_p", w, u, p))
        if to_unlocated(t_p(w, p, k)) != wt_p(to_unlocated(w), p, k):
            violations.append(("f", w, p))
    if plus(w, u) != concat(w, u):
        violations.append(("plus", w, u))


def _bracketed(rng, k):
    """A variable word whose first and last letters are constant."""
    dom = sorted(rng.sample(range(1, 21), rng.randint(3, 6)))
    letters = {n: rng.randint(0, k(n)) for n in dom[1:-1]}
    letters[dom[rng.randint(1, len(dom) - 2)]] = 0
    letters[dom[0]], letters[dom[-1]] = rng.randint(1, k(dom[0])), rng.randint(1, k(dom[-1]))
    return LocatedWord.of(letters)


def _g_identities(u1, u2, violations):
    if g_eval(concat(u1, u2), SG) != g_eval(u1, SG) + g_eval(u2, SG):
        violations.append(("g", u1, u2))


def _grouped(w, k, violations):
    if not w.is_variable or w.entries[0][1] == 0 or w.entries[-1][1] == 0:
        return 0
    labels = SemigroupSpec("strings-concat", "label")
    for p in range(1, k(w.min_dom) + 1):
        for sg in (SG, labels):
            if g_grouped_noncommutative(w, p, sg, k).value != g_eval(t_p(w, p, k), sg):
                violations.append(("grouped", w, p))
    return 1


@pytest.mark.criterion(5, "homomorphism identities, sampled and exhaustive")
def test_criterion_5_identities():
    violations = []
    rng = random.Random(5)
    for k in (K1, K2, KN):
        for w, u in _pairs(rng, k, 1000):
            _identities(w, u, k, violations)
        assert sum(_grouped(_bracketed(rng, k), k, violations) for _ in range(1000)) == 1000
        for u1, u2 in _pairs(rng, k, 1000, constant=True):
            _g_identities(u1, u2, violations)
        universe = enumerate_located(4, k)
        constants = [w for w in universe if not w.is_variable]
        for w in universe:
            _grouped(w, k, violations)
            for u in universe:
                if less(w, u):
                    _identities(w, u, k, violations)
        for u1 in constants:
            for u2 in constants:
                if less(u1, u2):
                    _g_identities(u1, u2, violations)
    assert violations == []


@pytest.mark.criterion(6, "ev and e match the naive generator on [1..6]")
@pytest.mark.parametrize("k", [K1, K2, KN], ids=["k=1", "k=2", "k=n"])
def test_criterion_6_enumerators(k):
    universe = sorted(enumerate_located(6, k, variable_only=True), key=lambda w: (w.min_dom, w.entries))
    after: dict[int, list] = {}
    for w in universe:
        for floor in range(0, w.min_dom):
            after.setdefault(floor, []).append(w)
    mismatches = 0
    checked = 0
    for a in universe:
        chains = [(a,)]
        for b in after.get(a.max_dom, []):
            chains.append((a, b))
            chains.extend((a, b, c) for c in after.get(b.max_dom, []))
        for t in chains:
            variable, constant = naive_extracted(t, k)
            checked += 1
            if {w.entries for w in ev(t, k)} != variable or {w.entries for w in e(t, k)} != constant:
                mismatches += 1
    assert checked > len(universe)
    assert mismatches == 0


@pytest.mark.criterion(7, "desk-scale Hindman instance, m=3, N=20")
def test_criterion_7_hindman():
    t0 = time.perf_counter()
    got = hindman()
    assert isinstance(got, Witness)
    assert verify_homogeneous(got.words, K1, Coloring.builtin("dom-size-parity"), Coloring.builtin("min-dom-mod", 2))
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(8, "van der Waerden bridge, m=2, N<=16, lambda<=2")
def test_criterion_8_bridge():
    t0 = time.perf_counter()
    got = bridge()
    assert isinstance(got, Witness) and got.bound <= 16
    assert verify_homogeneous(got.words, K_VDW, Coloring.builtin("constant"), Coloring.via_g(SG, MOD3))
    assert vdw_bridge_check(got.words, K_VDW, SG, MOD3, lambda_cap=2)
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(9, "witnesses are byte-identical for 1, 4 and 8 workers")
@pytest.mark.parametrize("run", [hindman, bridge], ids=["hindman", "bridge"])
def test_criterion_9_determinism(run):
    outputs = {json.dumps(run(workers=w).to_json()) for w in (1, 4, 8)}
    assert len(outputs) == 1
