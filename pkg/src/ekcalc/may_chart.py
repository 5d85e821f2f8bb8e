"""The E1-term of the p-complete sphere's E_3 filtration as an explicit bigraded algebra."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dyer_lashof import (
    FAMILIES_AT_TWO,
    FAMILIES_ODD,
    GeneratorFamily,
    chart_bidegree,
    family_generator,
    family_word,
)
from .errors import IndexOutOfRange
from .fpgraded import Bidegree, FreeGCAlgebra, GeneratorSpec, PoincareTable, check_prime


def closed_form(p: int, family: str, i: int, j: int = 0) -> Bidegree:
    check_prime(p)
    if p == 2:
        if family not in ("h2", "h"):
            raise IndexOutOfRange(f"unknown family {family!r} at p=2")
        if i < 1 or j < 0:
            raise IndexOutOfRange("h_{i,j} needs i >= 1, j >= 0")
        return Bidegree(2 ** (i + j) - 2 ** j - 1, 2 ** (i + j - 1))
    if family == "v":
        if i < 0:
            raise IndexOutOfRange("v_i needs i >= 0")
        return Bidegree(2 * p ** i - 2, p ** i)
    if i < 1 or j < 0:
        raise IndexOutOfRange(f"{family}_{{i,j}} needs i >= 1, j >= 0")
    if family == "h":
        return Bidegree(2 * p ** (i + j) - 2 * p ** j - 1, p ** (i + j))
    if family == "b":
        return Bidegree(2 * p ** (i + j + 1) - 2 * p ** (j + 1) - 2, p ** (i + j + 1))
    raise IndexOutOfRange(f"unknown family {family!r} at odd p")


def families(p: int) -> tuple[str, ...]:
    return FAMILIES_AT_TWO if p == 2 else FAMILIES_ODD


@dataclass(frozen=True)
class ChartSpec:
    prime: int
    t_max: int
    f_max: int | None = None

    def __post_init__(self):
        check_prime(self.prime)
        if self.t_max < 0:
            raise ValueError("t_max must be non-negative")
        if self.f_max is not None and self.f_max < 0:
            raise ValueError("f_max must be non-negative")

    @property
    def filtration_bound(self) -> int:
        # Generators of positive total degree t have filtration <= 2t, so every
        # product of them fits; the two extra rows show the filtration-1 tower.
        return self.f_max if self.f_max is not None else 2 * self.t_max + 2


@dataclass
class Chart:
    spec: ChartSpec
    generators: list[GeneratorFamily]
    dims: PoincareTable
    algebra: FreeGCAlgebra = field(repr=False)

    def rows(self) -> list[tuple[int, int, int]]:
        return self.dims.rows()


def _in_window(b: Bidegree, spec: ChartSpec) -> bool:
    return b.t <= spec.t_max and (spec.f_max is None or b.w <= spec.f_max)


def enumerate_generators(spec: ChartSpec) -> list[GeneratorFamily]:
    """Family members inside the window, ordered by family, then i, then j.

    Both closed-form coordinates increase strictly in i and in j, so each scan
    stops at the first index leaving the window.
    """
    p = spec.prime
    out = []
    for fam in families(p):
        if fam == "v":
            i = 0
            while _in_window(closed_form(p, fam, i), spec):
                out.append(family_generator(p, fam, i))
                i += 1
            continue
        i = 1
        while _in_window(closed_form(p, fam, i, 0), spec):
            j = 0
            while _in_window(closed_form(p, fam, i, j), spec):
                out.append(family_generator(p, fam, i, j))
                j += 1
            i += 1
    return out


def chart_algebra(p: int, gens: list[GeneratorFamily]) -> FreeGCAlgebra:
    return FreeGCAlgebra(p, [GeneratorSpec(g.name, g.parity, g.bidegree) for g in gens])


def build_chart(spec: ChartSpec) -> Chart:
    gens = enumerate_generators(spec)
    alg = chart_algebra(spec.prime, gens)
    dims = alg.poincare_series(Bidegree(spec.t_max, spec.filtration_bound))
    return Chart(spec, gens, dims, alg)


@dataclass
class CrossCheckReport:
    prime: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"prime": self.prime, "checked": self.checked, "mismatches": self.mismatches}


def cross_check(p: int, i_max: int, j_max: int, max_weight: int | None = None,
                only: tuple[str, ...] | None = None) -> CrossCheckReport:
    """Compare closed-form bidegrees with evaluation of the defining operation words."""
    rep = CrossCheckReport(p)
    for fam in families(p):
        if only is not None and fam not in only:
            continue
        i_lo = 0 if fam == "v" else 1
        j_hi = 0 if fam == "v" else j_max
        for i in range(i_lo, i_max + 1):
            for j in range(j_hi + 1):
                expected = closed_form(p, fam, i, j)
                if max_weight is not None and expected.w > max_weight:
                    continue
                got = chart_bidegree(p, family_word(p, fam, i, j))
                rep.checked += 1
                if got != expected:
                    rep.mismatches.append({"family": fam, "i": i, "j": j,
                                           "closed_form": list(expected), "word": list(got)})
    return rep
