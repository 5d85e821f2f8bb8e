"""Tensor algebras over F_p, finitely presented left modules, and the length-one
Koszul resolution ``0 -> T(V)⊗V⊗N -> T(V)⊗N -> N -> 0``.

Words are tuples of letter indices into ``v_basis``.  A presented module is
materialized degreewise as the cokernel ``N_d = F_d / R_d`` of the relation
submodule inside the free module ``F`` on the generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import bar
from .errors import InhomogeneousRelation
from .fpgraded import Span, check_prime

Word = tuple


@dataclass(frozen=True)
class TensorAlgebra:
    prime: int
    v_basis: tuple  # ((name, degree), ...)

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "v_basis", tuple((str(n), int(d)) for n, d in self.v_basis))
        for name, d in self.v_basis:
            if d < 1:
                raise ValueError(f"generator {name} has degree {d}; degrees must be >= 1")
        if len({n for n, _ in self.v_basis}) != len(self.v_basis):
            raise ValueError("duplicate tensor generator name")

    @classmethod
    def from_degrees(cls, p: int, degrees: Sequence[int]) -> "TensorAlgebra":
        names = "xyzuvwabcdefghijklmnopqrst"
        return cls(p, tuple((names[k] if k < len(names) else f"x{k}", d)
                            for k, d in enumerate(degrees)))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.v_basis)

    def word_degree(self, w: Word) -> int:
        degs = self.degrees
        return sum(degs[a] for a in w)

    def word_str(self, w: Word) -> str:
        return "".join(self.v_basis[a][0] for a in w) or "1"

    def basis(self, d: int) -> list[Word]:
        return list(_words(self.degrees, d))

    def dim(self, d: int) -> int:
        return len(self.basis(d))


_word_cache: dict = {}


def _words(degrees: tuple, d: int) -> tuple:
    key = (degrees, d)
    hit = _word_cache.get(key)
    if hit is None:
        if d < 0:
            hit = ()
        elif d == 0:
            hit = ((),)
        else:
            hit = tuple((a,) + rest for a, e in enumerate(degrees) if e <= d
                        for rest in _words(degrees, d - e))
        _word_cache[key] = hit
    return hit


def tensor_algebra_basis(T: TensorAlgebra, d: int) -> list[Word]:
    return T.basis(d)


# A free-module basis element is (word, generator index); an element is a dict
# {(word, gen): coefficient}.


@dataclass(frozen=True)
class ModulePresentation:
    generators: tuple  # ((name, degree), ...)
    relations: tuple = ()  # tuple of {(word, gen): coeff}

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(d)) for n, d in self.generators))
        object.__setattr__(self, "relations", tuple(dict(r) for r in self.relations))

    def relation_degree(self, T: TensorAlgebra, rel: Mapping) -> int | None:
        degs = {T.word_degree(w) + self.generators[g][1] for (w, g), c in rel.items() if c % T.prime}
        if len(degs) > 1:
            raise InhomogeneousRelation(f"relation {rel} mixes degrees {sorted(degs)}")
        return degs.pop() if degs else None


def trivial_presentation(T: TensorAlgebra) -> ModulePresentation:
    rels = tuple({((a,), 0): 1} for a in range(len(T.v_basis)))
    return ModulePresentation((("g", 0),), rels)


def free_presentation(degrees: Sequence[int] = (0,)) -> ModulePresentation:
    return ModulePresentation(tuple((f"g{k}", d) for k, d in enumerate(degrees)), ())


def zero_presentation() -> ModulePresentation:
    return ModulePresentation((), ())


class Lcg:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    ``next()`` advances ``state = (A * state + C) mod 2**64`` and returns the
    top 31 bits.  Used instead of :mod:`random` so that fixtures are pinned by
    a few lines of arithmetic anyone can replay.
    """

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state >> 33

    def below(self, n: int) -> int:
        return self.next() % n


def random_presentation(T: TensorAlgebra, seed: int) -> ModulePresentation:
    """A reproducible homogeneous presentation over ``T``.

    Draws, in order: the number of generators (1 or 2); each generator degree
    in 0..3; the number of relations in 0..3; then per relation a degree above
    the lowest generator degree (by 1..3), a term count in 1..3 and, per term,
    a free-module basis element of that degree and a coefficient in 1..p-1.
    """
    rng = Lcg(seed)
    p = T.prime
    gens = tuple((f"g{k}", rng.below(4)) for k in range(1 + rng.below(2)))
    nrel = rng.below(4)
    low = min(d for _, d in gens)
    rels = []
    for _ in range(nrel):
        deg = low + 1 + rng.below(3)
        cells = [(w, g) for g, (_, gd) in enumerate(gens) for w in T.basis(deg - gd)]
        nterms = 1 + rng.below(3)
        rel: dict = {}
        for _ in range(nterms):
            if not cells:
                break
            cell = cells[rng.below(len(cells))]
            rel[cell] = (rel.get(cell, 0) + 1 + rng.below(p - 1)) % p
        rel = {k: v for k, v in rel.items() if v}
        if rel:
            rels.append(rel)
    return ModulePresentation(gens, tuple(rels))


class PresentedModule:
    """Degreewise cokernel of the relations, with normal forms."""

    def __init__(self, T: TensorAlgebra, pres: ModulePresentation, d_max: int):
        self.T = T
        self.pres = pres
        self.p = T.prime
        self.d_max = d_max
        rel_degs = [pres.relation_degree(T, r) for r in pres.relations]
        self._free: dict = {}   # d -> list of free basis cells
        self._findex: dict = {}  # d -> {cell: index}
        self._span: dict = {}
        self.basis: dict = {}   # d -> list of standard cells spanning N_d
        self._nindex: dict = {}
        self._nf: dict = {}
        for d in range(d_max + 1):
            cells = [(w, g) for g, (_, gd) in enumerate(pres.generators) for w in T.basis(d - gd)]
            index = {c: k for k, c in enumerate(cells)}
            span = Span(self.p)
            for rel, e in zip(pres.relations, rel_degs):
                if e is None or e > d:
                    continue
                for t in T.basis(d - e):
                    span.add({index[(t + w, g)]: c for (w, g), c in rel.items()})
            self._free[d] = cells
            self._findex[d] = index
            self._span[d] = span
            std = [c for k, c in enumerate(cells) if k not in span.pivots]
            self.basis[d] = std
            self._nindex[d] = {c: k for k, c in enumerate(std)}

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def normal_form(self, cell: tuple, d: int) -> dict:
        """Coordinates in the standard basis of N_d of the class of a free cell."""
        key = (cell, d)
        hit = self._nf.get(key)
        if hit is None:
            k = self._findex[d][cell]
            std_index = self._nindex[d]
            cells = self._free[d]
            if k in self._span[d].pivots:
                res = self._span[d].reduce({k: 1})
                hit = {std_index[cells[i]]: c for i, c in res.items()}
            else:
                hit = {std_index[cell]: 1}
            self._nf[key] = hit
        return hit

    def act(self, t: Word, n: int, d_n: int) -> dict:
        """``t · n`` for a word t and the n-th standard basis element of N_{d_n}."""
        w, g = self.basis[d_n][n]
        return self.normal_form((t + w, g), d_n + self.T.word_degree(t))


@dataclass
class KoszulDegree:
    degree: int
    c2: list    # (t, v, (j, n)) basis of (T⊗V⊗N)_d
    c1: list    # (t, (j, n)) basis of (T⊗N)_d, ordered by deg t
    c0: int     # dim N_d
    d1: list    # sparse columns C2 -> C1
    eps: list   # sparse columns C1 -> C0


@dataclass
class KoszulComplex:
    T: TensorAlgebra
    N: PresentedModule
    d_max: int
    degrees: list = field(default_factory=list)


def build_koszul(T: TensorAlgebra, pres: ModulePresentation, d_max: int) -> KoszulComplex:
    """d1(t⊗v⊗n) = tv⊗n - t⊗(v·n) and ε(t⊗n) = t·n, degree by degree; asserts ε∘d1 = 0."""
    N = PresentedModule(T, pres, d_max)
    p = T.prime
    vdeg = T.degrees
    K = KoszulComplex(T, N, d_max)
    for d in range(d_max + 1):
        c1 = [(t, (d - k, n)) for k in range(d + 1) for t in T.basis(k) for n in range(N.dim(d - k))]
        idx1 = {c: i for i, c in enumerate(c1)}
        eps = [N.act(t, n, j) for t, (j, n) in c1]
        c2, d1 = [], []
        for k in range(d + 1):
            for t in T.basis(k):
                for a, e in enumerate(vdeg):
                    j = d - k - e
                    for n in range(N.dim(j)):
                        col = {idx1[(t + (a,), (j, n))]: 1}
                        for m, c in N.act((a,), n, j).items():
                            r = idx1[(t, (j + e, m))]
                            col[r] = (col.get(r, 0) - c) % p
                        c2.append((t, a, (j, n)))
                        d1.append({r: c for r, c in col.items() if c})
        for col in d1:
            acc: dict = {}
            for r, c in col.items():
                for s, v in eps[r].items():
                    acc[s] = (acc.get(s, 0) + c * v) % p
            if any(acc.values()):
                raise AssertionError(f"ε∘d1 != 0 in degree {d}")
        K.degrees.append(KoszulDegree(d, c2, c1, N.dim(d), d1, eps))
    return K


@dataclass
class ExactnessReport:
    ok: bool
    rows: list
    failures: list

    def as_dict(self) -> dict:
        return {"check": "koszul-exactness", "pass": self.ok, "rows": self.rows,
                "failures": self.failures}


def exactness_check(K: KoszulComplex, d_max: int | None = None) -> ExactnessReport:
    """ker ε = im d1 and ker d1 = 0 in every degree, by rank arithmetic."""
    from .fpgraded import rank

    p = K.T.prime
    d_max = K.d_max if d_max is None else d_max
    rows, failures = [], []
    for kd in K.degrees[: d_max + 1]:
        r1 = rank(kd.d1, p)
        re = rank(kd.eps, p, nrows=kd.c0)
        ker_d1 = len(kd.c2) - r1
        ker_eps = len(kd.c1) - re
        row = {"degree": kd.degree, "dim_TVN": len(kd.c2), "dim_TN": len(kd.c1), "dim_N": kd.c0,
               "rank_d1": r1, "rank_eps": re}
        rows.append(row)
        if ker_d1 or ker_eps != r1 or re != kd.c0:
            failures.append(row)
    return ExactnessReport(not failures, rows, failures)


def tor_trivial(T: TensorAlgebra, d_max: int) -> dict[tuple[int, int], int]:
    """Tor^{T(V)}_s(F_p, F_p) from the Koszul resolution of the trivial module.

    Applying ``F_p ⊗_{T(V)} -`` keeps the summands with empty word t, leaving
    ``V ⊗ F_p -> F_p``; Tor_0 and Tor_1 are its cokernel and kernel, and
    Tor_s = 0 for s >= 2 since the resolution has length one.
    """
    from .fpgraded import rank

    K = build_koszul(T, trivial_presentation(T), d_max)
    out = {}
    for kd in K.degrees:
        keep1 = {i: k for k, i in enumerate(i for i, (t, _) in enumerate(kd.c1) if t == ())}
        cols = []
        for (t, a, n), col in zip(kd.c2, kd.d1):
            if t == ():
                cols.append({keep1[r]: c for r, c in col.items() if r in keep1})
        r = rank(cols, T.prime)
        out[(0, kd.degree)] = len(keep1) - r
        out[(1, kd.degree)] = len(cols) - r
        out[(2, kd.degree)] = 0
    return out


def bar_tor_trivial(T: TensorAlgebra, d_max: int, s_max: int) -> dict[tuple[int, int], int]:
    """Tor^{T(V)}_s(F_p, F_p) straight from the bar complex.

    The differential only concatenates neighbouring words, so the complex
    splits by the total concatenated word; each block is ranked separately.
    """
    p = T.prime

    def base_basis(d):
        return T.basis(d) if d >= 1 else []

    def mult(x, y):
        return {x + y: 1}

    def module_basis(d):
        return [()] if d == 0 else []

    def act(m, b):
        return {}

    data = bar.BarData(p, base_basis, mult, module_basis, act)
    return bar.tor_dims(data, d_max, s_max, split=lambda c: sum(c[1:], ()))
