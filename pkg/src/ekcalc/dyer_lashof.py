"""Bidegree bookkeeping for lower-indexed Dyer-Lashof operations.

Classes live in bidegree ``(r, w)``: space degree and weight.  Indices are
stored doubled (``index2``) so that ``Q_{1/2}`` is the integer 1.  Words are
written the way they are read, so the rightmost symbol acts first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import BetaAtTwo, EvenSphere, IndexOutOfRange
from .fpgraded import Bidegree, Parity, check_prime


class Kind(str, Enum):
    Q = "Q"
    BQ = "bQ"


@dataclass(frozen=True)
class OpSymbol:
    kind: Kind
    index2: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.index2 < 0:
            raise ValueError("operation index must be non-negative")

    def __str__(self):
        j = str(self.index2 // 2) if self.index2 % 2 == 0 else f"{self.index2}/2"
        return f"{'βQ' if self.kind is Kind.BQ else 'Q'}_{j}"


def Q(index2: int) -> OpSymbol:
    return OpSymbol(Kind.Q, index2)


def BQ(index2: int) -> OpSymbol:
    return OpSymbol(Kind.BQ, index2)


Q_HALF, BQ_HALF = Q(1), BQ(1)
Q1, BQ1, Q2 = Q(2), BQ(2), Q(4)


@dataclass(frozen=True)
class BaseClass:
    name: str
    r: int
    w: int = 1

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("space degree must be non-negative")
        if self.w < 1:
            raise ValueError("base class weight must be positive")


Y1 = BaseClass("y1", 1, 1)


@dataclass(frozen=True)
class OpWord:
    ops: tuple = ()
    base: BaseClass = Y1
    prime: int = 2

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        check_prime(self.prime)

    def __str__(self):
        return " ".join([*map(str, self.ops), self.base.name])


def apply_op(p: int, sym: OpSymbol, state: tuple[int, int]) -> tuple[int, int]:
    r, w = state
    if p == 2:
        if sym.kind is Kind.BQ:
            raise BetaAtTwo("βQ is not defined at p=2")
        if sym.index2 % 2:
            raise ValueError("at p=2 operation indices are integers")
        return 2 * r + sym.index2 // 2, 2 * w
    r2 = p * r + (p - 1) * sym.index2
    if sym.kind is Kind.BQ:
        r2 -= 1
    return r2, p * w


def eval_word(word: OpWord) -> tuple[int, int]:
    state = (word.base.r, word.base.w)
    for sym in reversed(word.ops):
        state = apply_op(word.prime, sym, state)
    return state


def chart_bidegree(p: int, word: OpWord) -> Bidegree:
    """Chart position (total degree, filtration) = (r - w, w)."""
    if word.prime != p:
        word = OpWord(word.ops, word.base, p)
    r, w = eval_word(word)
    return Bidegree(r - w, w)


FAMILIES_AT_TWO = ("h2",)
FAMILIES_ODD = ("v", "h", "b")


def family_word(p: int, family: str, i: int, j: int = 0) -> OpWord:
    """The operation word defining a generator of the free E_3 homology on y1.

    At p=2, ``h_{i,j} = Q_1^{(j)} Q_2^{(i-1)} y1``.  At odd p the Bockstein in
    ``βQ_1^{(i)}`` sits on the outermost of the i applications only.
    """
    check_prime(p)
    if p == 2:
        if family not in ("h2", "h"):
            raise IndexOutOfRange(f"unknown family {family!r} at p=2")
        if i < 1 or j < 0:
            raise IndexOutOfRange("h_{i,j} needs i >= 1, j >= 0")
        return OpWord((Q1,) * j + (Q2,) * (i - 1), Y1, 2)
    if family == "v":
        if i < 0:
            raise IndexOutOfRange("v_i needs i >= 0")
        return OpWord((Q1,) * i, Y1, p)
    if family not in ("h", "b"):
        raise IndexOutOfRange(f"unknown family {family!r} at odd p")
    if i < 1 or j < 0:
        raise IndexOutOfRange(f"{family}_{{i,j}} needs i >= 1, j >= 0")
    inner = (Q_HALF,) * j + (BQ1,) + (Q1,) * (i - 1)
    if family == "h":
        return OpWord(inner, Y1, p)
    return OpWord((BQ_HALF,) + inner, Y1, p)


def family_parity(p: int, family: str) -> Parity:
    if p != 2 and family == "h":
        return Parity.EXTERIOR
    return Parity.POLYNOMIAL


@dataclass(frozen=True)
class GeneratorFamily:
    family: str
    i: int
    j: int | None
    word: OpWord = field(compare=False)
    parity: Parity
    bidegree: Bidegree

    @property
    def name(self) -> str:
        fam = "h" if self.family == "h2" else self.family
        return f"{fam}_{self.i}" if self.j is None else f"{fam}_{self.i}_{self.j}"


def family_generator(p: int, family: str, i: int, j: int | None = None) -> GeneratorFamily:
    word = family_word(p, family, i, j or 0)
    if family == "v":
        j = None
    return GeneratorFamily(family, i, j, word, family_parity(p, family), chart_bidegree(p, word))


def free_e2_generators_odd(p: int, n: int, degree_bound: int) -> list[tuple[str, int, Parity]]:
    """Generators of the homology of the free E_2-algebra on an odd sphere S^n.

    Exterior classes ``Q_{1/2}^{(m)} α`` for m >= 0 and polynomial classes
    ``βQ_{1/2} Q_{1/2}^{(m-1)} α`` for m >= 1, listed by m, with degree at most
    ``degree_bound``.
    """
    check_prime(p)
    if p == 2:
        raise BetaAtTwo("free E_2 generators are tracked at odd primes only")
    if n % 2 == 0 or n < 1:
        raise EvenSphere(f"sphere dimension {n} must be odd and positive")
    out = []
    state = (n, 1)
    m = 0
    while state[0] <= degree_bound:
        name = "alpha" if m == 0 else f"Q_1/2^({m}) alpha"
        out.append((name, state[0], Parity.EXTERIOR))
        beta = apply_op(p, BQ_HALF, state)
        if beta[0] <= degree_bound:
            out.append((f"bQ_1/2^({m + 1}) alpha", beta[0], Parity.POLYNOMIAL))
        state = apply_op(p, Q_HALF, state)
        m += 1
    return out
