"""Free graded-commutative algebras over F_p with bigraded monomial bases.

A monomial is a tuple of exponents, one slot per generator in declared order.
Signs follow the Koszul rule on the total degree ``t`` only; the weight never
enters a sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple, Sequence

from ..errors import AmbientMismatch, DuplicateGenerator, NonConnective, ParityViolation
from .field import check_prime

Monomial = tuple  # exponent vector in generator order


class Bidegree(NamedTuple):
    t: int
    w: int = 0

    def __add__(self, other):  # componentwise, not tuple concatenation
        return Bidegree(self.t + other[0], self.w + other[1])

    def __sub__(self, other):
        return Bidegree(self.t - other[0], self.w - other[1])

    def scale(self, k: int) -> "Bidegree":
        return Bidegree(k * self.t, k * self.w)


class Parity(str, Enum):
    POLYNOMIAL = "polynomial"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    parity: Parity
    bidegree: Bidegree

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "bidegree", Bidegree(*self.bidegree))
        if self.bidegree.w < 0:
            raise ValueError(f"generator {self.name}: weight must be non-negative")


def poly(name: str, t: int, w: int = 0) -> GeneratorSpec:
    return GeneratorSpec(name, Parity.POLYNOMIAL, Bidegree(t, w))


def ext(name: str, t: int, w: int = 0) -> GeneratorSpec:
    return GeneratorSpec(name, Parity.EXTERIOR, Bidegree(t, w))


def _dot(phi, b) -> int:
    return phi[0] * b[0] + phi[1] * b[1]


def positive_functional(vectors: Sequence[tuple[int, int]]) -> tuple[int, int] | None:
    """An integer functional strictly positive on every vector, or None.

    Such a functional exists iff the vectors lie in an open half-plane.  The
    cone of valid functionals is open with boundary rays perpendicular to some
    of the vectors, so sums of two perpendiculars (or a vector itself, in the
    collinear case) cover it.
    """
    vs = [tuple(v) for v in vectors]
    if not vs:
        return (1, 1)
    candidates = [(1, 0), (0, 1), (1, 1)]
    if any(v == (0, 0) for v in vs):
        return None
    perps = []
    for a, b in vs:
        perps.append((-b, a))
        perps.append((b, -a))
    candidates.extend(vs)
    for i, u in enumerate(perps):
        for v in perps[i:]:
            candidates.append((u[0] + v[0], u[1] + v[1]))
    for phi in candidates:
        if all(_dot(phi, v) > 0 for v in vs):
            return phi
    return None


@dataclass(frozen=True)
class PoincareTable:
    """Dimensions of a bigraded vector space on the box ``[0, bound.t] x [0, bound.w]``."""

    entries: dict
    bound: Bidegree

    def __getitem__(self, b) -> int:
        return self.entries.get(Bidegree(*b), 0)

    def rows(self) -> list[tuple[int, int, int]]:
        return [(b.t, b.w, d) for b, d in sorted(self.entries.items())]

    def series(self, w: int = 0) -> list[int]:
        """Dimensions along a fixed weight, for t = 0..bound.t."""
        return [self[(t, w)] for t in range(self.bound.t + 1)]


class FreeGCAlgebra:
    """Free graded-commutative algebra over F_p on polynomial and exterior generators.

    Use :func:`make_algebra` to construct; it validates parity and that every
    bidegree holds only finitely many monomials.
    """

    def __init__(self, prime: int, generators: Sequence[GeneratorSpec]):
        self.prime = check_prime(prime)
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            seen = set()
            dup = next(n for n in self.names if n in seen or seen.add(n))
            raise DuplicateGenerator(f"duplicate generator name {dup!r}")
        self.index = {n: i for i, n in enumerate(self.names)}
        for g in self.generators:
            if self.prime == 2 and g.parity is Parity.EXTERIOR:
                raise ParityViolation(f"{g.name}: exterior generators are not allowed at p=2")
            if self.prime != 2 and g.bidegree.t % 2 and g.parity is Parity.POLYNOMIAL:
                raise ParityViolation(
                    f"{g.name}: odd total degree {g.bidegree.t} must be exterior at p={self.prime}"
                )
        polys = [g.bidegree for g in self.generators if g.parity is Parity.POLYNOMIAL]
        phi = positive_functional(polys)
        if phi is None:
            raise NonConnective("some bidegree would contain infinitely many monomials")
        self._phi = phi
        self.degrees = tuple(g.bidegree for g in self.generators)
        self.exterior = tuple(g.parity is Parity.EXTERIOR for g in self.generators)
        self.odd = tuple(i for i, g in enumerate(self.generators) if g.bidegree.t % 2)
        self._basis_cache: dict = {}

    def __repr__(self):
        gens = ", ".join(f"{g.name}{'*' if g.parity is Parity.EXTERIOR else ''}{tuple(g.bidegree)}"
                         for g in self.generators)
        return f"FreeGCAlgebra(p={self.prime}, [{gens}])"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @cached_property
    def unit(self) -> Monomial:
        return (0,) * self.ngens

    # -- monomials ---------------------------------------------------------

    def bidegree(self, m: Monomial) -> Bidegree:
        t = w = 0
        for e, d in zip(m, self.degrees):
            if e:
                t += e * d.t
                w += e * d.w
        return Bidegree(t, w)

    def monomial(self, exps: Mapping[str, int] | None = None, **kw: int) -> Monomial:
        m = [0] * self.ngens
        for name, e in {**(exps or {}), **kw}.items():
            m[self.index[name]] = e
        return tuple(m)

    def exponent_map(self, m: Monomial) -> dict[str, int]:
        return {n: e for n, e in zip(self.names, m) if e}

    def mono_str(self, m: Monomial) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) or "1"

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Product of two monomials as (sign, monomial), or None if it vanishes."""
        ext = self.exterior
        out = []
        for i, (x, y) in enumerate(zip(a, b)):
            e = x + y
            if e > 1 and ext[i]:
                return None
            out.append(e)
        sign = 1
        if self.prime != 2:
            # moving b's odd factors left past a's later odd factors
            parity = 0
            acc = 0  # running count of odd factors of a to the right
            for i in reversed(self.odd):
                if b[i] & 1 and acc & 1:
                    parity ^= 1
                acc += a[i]
            if parity:
                sign = -1
        return sign, tuple(out)

    def basis(self, b) -> list[Monomial]:
        """All monomials of bidegree exactly ``b``, ascending lexicographic."""
        b = Bidegree(*b)
        hit = self._basis_cache.get(b)
        if hit is None:
            hit = list(self._enumerate(b))
            self._basis_cache[b] = hit
        return list(hit)

    def _enumerate(self, target: Bidegree) -> Iterator[Monomial]:
        n = self.ngens
        phi = self._phi
        degs = self.degrees
        ext = self.exterior
        weights = [_dot(phi, d) for d in degs]
        # lowest possible functional value contributed by generators k..n-1
        floor = [0] * (n + 1)
        for k in range(n - 1, -1, -1):
            floor[k] = floor[k + 1] + (min(0, weights[k]) if ext[k] else 0)
        exps = [0] * n

        def rec(k: int, t: int, w: int):
            if k == n:
                if t == 0 and w == 0:
                    yield tuple(exps)
                return
            budget = _dot(phi, (t, w)) - floor[k + 1]
            d = degs[k]
            if ext[k]:
                choices = (0, 1)
            elif weights[k] > 0:
                if budget < 0:
                    return
                choices = range(budget // weights[k] + 1)
            else:
                choices = (0,)
            for e in choices:
                exps[k] = e
                yield from rec(k + 1, t - e * d.t, w - e * d.w)
            exps[k] = 0

        if _dot(phi, target) - floor[0] < 0:
            return
        yield from rec(0, target.t, target.w)

    # -- elements ----------------------------------------------------------

    def element(self, terms: Mapping[Monomial, int] | None = None) -> "Element":
        return Element(self, terms or {})

    def one(self) -> "Element":
        return Element(self, {self.unit: 1})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, name: str) -> "Element":
        m = [0] * self.ngens
        m[self.index[name]] = 1
        return Element(self, {tuple(m): 1})

    def mono(self, m: Monomial, c: int = 1) -> "Element":
        return Element(self, {tuple(m): c})

    def multiply(self, a: "Element", b: "Element") -> "Element":
        if a.alg is not self or b.alg is not self:
            raise AmbientMismatch("elements live in different algebras")
        p = self.prime
        out: dict = {}
        mm = self.mono_mul
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                r = mm(ma, mb)
                if r is None:
                    continue
                s, m = r
                c = (out.get(m, 0) + s * ca * cb) % p
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Element(self, out, _clean=False)

    # -- series ------------------------------------------------------------

    def poincare_series(self, window) -> PoincareTable:
        window = Bidegree(*window)
        T, W = window
        if all(d.t >= 0 and d.w >= 0 for d in self.degrees):
            return self._series_by_products(T, W)
        entries = {Bidegree(t, w): len(self.basis((t, w)))
                   for t in range(T + 1) for w in range(W + 1)}
        return PoincareTable(entries, window)

    def _series_by_products(self, T: int, W: int) -> PoincareTable:
        # Product of 1/(1 - x^a y^b) and (1 + x^a y^b) factors, truncated.
        tbl = [[0] * (W + 1) for _ in range(T + 1)]
        if T >= 0 and W >= 0:
            tbl[0][0] = 1
        for (a, b), is_ext in zip(self.degrees, self.exterior):
            if a > T or b > W:
                continue
            if is_ext:
                for t in range(T, a - 1, -1):
                    for w in range(W, b - 1, -1):
                        tbl[t][w] += tbl[t - a][w - b]
            else:
                for t in range(a, T + 1):
                    for w in range(b, W + 1):
                        tbl[t][w] += tbl[t - a][w - b]
        entries = {Bidegree(t, w): tbl[t][w] for t in range(T + 1) for w in range(W + 1)}
        return PoincareTable(entries, Bidegree(T, W))


class Element:
    """An F_p-linear combination of monomials of one :class:`FreeGCAlgebra`."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeGCAlgebra, terms: Mapping[Monomial, int], _clean: bool = True):
        self.alg = alg
        if _clean:
            p = alg.prime
            terms = {tuple(m): c % p for m, c in terms.items() if c % p}
        self.terms = terms

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        alg = self.alg
        return " + ".join(f"{c}*{alg.mono_str(m)}" if c != 1 else alg.mono_str(m)
                          for m, c in sorted(self.terms.items()))

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or other.alg is not self.alg:
            raise AmbientMismatch("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        p = self.alg.prime
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element(self.alg, out, _clean=False)

    def __neg__(self) -> "Element":
        p = self.alg.prime
        return Element(self.alg, {m: (-c) % p for m, c in self.terms.items()}, _clean=False)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Element(self.alg, {m: c * other for m, c in self.terms.items()})
        return self.alg.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Element":
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.alg.one() * other
        return isinstance(other, Element) and other.alg is self.alg and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def bidegree(self) -> Bidegree | None:
        """Common bidegree of all terms; None for zero or inhomogeneous elements."""
        degs = {self.alg.bidegree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    @property
    def homogeneous(self) -> bool:
        return len({self.alg.bidegree(m) for m in self.terms}) <= 1


def make_algebra(prime: int, gens: Sequence[GeneratorSpec]) -> FreeGCAlgebra:
    return FreeGCAlgebra(prime, gens)


def basis_in_bidegree(alg: FreeGCAlgebra, b) -> list[Monomial]:
    return alg.basis(b)


def multiply(a: Element, b: Element) -> Element:
    if a.alg is not b.alg:
        raise AmbientMismatch("elements live in different algebras")
    return a.alg.multiply(a, b)


def poincare_series(alg: FreeGCAlgebra, window) -> PoincareTable:
    return alg.poincare_series(window)
