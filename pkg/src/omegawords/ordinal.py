"""Cantor-normal-form ordinals below epsilon_0.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents; exponents are themselves ``Ordinal`` values. The empty
tuple is zero. Because terms compare lexicographically, the dataclass
ordering *is* the ordinal ordering.

Text grammar (``w`` or ``ω`` denotes omega)::

    ordinal := term ("+" term)*
    term    := nat | "w" ["^" (nat | "w" | "(" ordinal ")")] ["*" nat]
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import OmegaWordsError, OrdinalSyntaxError


@dataclass(frozen=True, order=True)
class Ordinal:
    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coef in self.terms:
            if not isinstance(exp, Ordinal) or not isinstance(coef, int):
                raise TypeError(f"bad term {(exp, coef)!r}")
            if coef < 1:
                raise OmegaWordsError("coefficients must be >= 1")
            if prev is not None and not exp < prev:
                raise OmegaWordsError("exponents must be strictly decreasing")
            prev = exp

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OmegaWordsError("negative ordinal")
        return ZERO if n == 0 else cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, exp: "Ordinal", coef: int = 1) -> "Ordinal":
        return cls(((exp, coef),))

    # classification

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    def __int__(self) -> int:
        if not self.is_finite:
            raise OmegaWordsError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def succ(self) -> "Ordinal":
        if self.is_successor:
            return Ordinal(self.terms[:-1] + ((ZERO, self.terms[-1][1] + 1),))
        return Ordinal(self.terms + ((ZERO, 1),))

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise OmegaWordsError(f"{self} has no predecessor")
        c = self.terms[-1][1]
        return Ordinal(self.terms[:-1] + (((ZERO, c - 1),) if c > 1 else ()))

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


class Kind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def classify(a: Ordinal) -> tuple[Kind, Ordinal | None]:
    """Return the kind of ``a`` and, for successors, its predecessor."""
    if a.is_zero:
        return Kind.ZERO, None
    if a.is_successor:
        return Kind.SUCCESSOR, a.predecessor()
    return Kind.LIMIT, None


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return (a > b) - (a < b)


def fundamental(lam: Ordinal, n: int) -> Ordinal:
    """n-th term of the standard CNF fundamental sequence of a limit ordinal."""
    if not lam.is_limit:
        raise OmegaWordsError(f"{lam} is not a limit ordinal")
    if n < 1:
        raise OmegaWordsError("n must be >= 1")
    head = lam.terms[:-1]
    exp, coef = lam.terms[-1]
    if coef > 1:
        head = head + ((exp, coef - 1),)
    if exp.is_successor:
        tail = ((exp.predecessor(), n),)
    else:
        tail = ((fundamental(exp, n), 1),)
    return Ordinal(head + tail)


@lru_cache(maxsize=4096)
def fundamental_successor_seq(lam: Ordinal, n: int) -> Ordinal:
    """Fixed successor sequence converging to ``lam``: ``fundamental(lam, n) + 1``."""
    return fundamental(lam, n).succ()


# Rank bookkeeping helpers. These are not a general arithmetic API; the
# families module uses them to track derivative stages.

def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept = [t for t in a.terms if t[0] >= lead_exp]
    if kept and kept[-1][0] == lead_exp:
        exp, coef = kept.pop()
        return Ordinal(tuple(kept) + ((exp, coef + lead_coef),) + b.terms[1:])
    return Ordinal(tuple(kept) + b.terms)


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    if n == 0 or a.is_zero:
        return ZERO
    exp, coef = a.terms[0]
    return Ordinal(((exp, coef * n),) + a.terms[1:])


def sub_left(rho: Ordinal, delta: Ordinal) -> Ordinal:
    """The unique ``eps`` with ``delta + eps == rho`` (requires ``delta <= rho``)."""
    if delta > rho:
        raise OmegaWordsError(f"{delta} exceeds {rho}")
    for i, (dt, rt) in enumerate(zip(delta.terms, rho.terms)):
        if dt == rt:
            continue
        if dt[0] == rt[0]:
            return Ordinal(((rt[0], rt[1] - dt[1]),) + rho.terms[i + 1:])
        return Ordinal(rho.terms[i:])
    return Ordinal(rho.terms[len(delta.terms):])


# text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([wω])|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise OrdinalSyntaxError(f"unexpected character at {pos}: {text[pos:]!r}")
        out.append("w" if m.group(2) else m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise OrdinalSyntaxError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise OrdinalSyntaxError(f"expected a number, got {tok!r}")
        return int(tok)

    def ordinal(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        if len(terms) == 1 and terms[0] == (ZERO, 0):
            return ZERO
        for exp, coef in terms:
            if coef < 1:
                raise OrdinalSyntaxError("zero coefficient")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if not e2 < e1:
                raise OrdinalSyntaxError("exponents must be strictly decreasing")
        return Ordinal(tuple(terms))

    def term(self) -> tuple[Ordinal, int]:
        if self.peek() is not None and self.peek().isdigit():
            return ZERO, self.nat()
        self.take("w")
        exp = ONE
        if self.peek() == "^":
            self.take("^")
            tok = self.peek()
            if tok == "(":
                self.take("(")
                exp = self.ordinal()
                self.take(")")
            elif tok == "w":
                self.take("w")
                exp = OMEGA
            else:
                exp = Ordinal.of(self.nat())
        coef = 1
        if self.peek() == "*":
            self.take("*")
            coef = self.nat()
        return exp, coef


def parse(text: str) -> Ordinal:
    parser = _Parser(_tokenize(text))
    if parser.peek() is None:
        raise OrdinalSyntaxError("empty ordinal expression")
    result = parser.ordinal()
    if parser.peek() is not None:
        raise OrdinalSyntaxError(f"trailing input at token {parser.peek()!r}")
    return result


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero:
            parts.append(str(coef))
            continue
        if exp == ONE:
            base = "w"
        elif exp.is_finite:
            base = f"w^{int(exp)}"
        elif exp == OMEGA:
            base = "w^w"
        else:
            base = f"w^({format_ordinal(exp)})"
        parts.append(base if coef == 1 else f"{base}*{coef}")
    return "+".join(parts)


def as_ordinal(x: "Ordinal | int | str") -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    return parse(x)
