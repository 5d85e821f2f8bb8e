"""The odd-primary dual Steenrod algebra in the Milnor basis, its conjugation,
and the quotients killing a tail of (possibly conjugated) generators.

Generator degrees are not taken on trust: starting from ``|tau_0| = 1`` they
are pushed forward with the degree rules of ``Q_{1/2}`` and ``βQ_{1/2}``
(``Q_{1/2} tau_n = tau_{n+1}``, ``βQ_{1/2} tau_n = xi_{n+1}`` up to conjugation)
and compared with the familiar closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import bar
from .dyer_lashof import BQ_HALF, Q_HALF, apply_op, free_e2_generators_odd
from .errors import DegreeCapExceeded, NotPrime
from .fpgraded import Element, FreeGCAlgebra, PoincareTable, Bidegree, Span, check_prime, ext, poly


def derived_degrees(p: int, count: int) -> tuple[list[int], list[int]]:
    """Degrees of tau_0..tau_{count-1} and xi_1..xi_{count-1} from the operation rules."""
    taus, xis = [1], []
    for _ in range(count - 1):
        taus.append(apply_op(p, Q_HALF, (taus[-1], 1))[0])
        xis.append(apply_op(p, BQ_HALF, (taus[-2], 1))[0])
    return taus, xis


@dataclass(frozen=True, order=True)
class MilnorMonomial:
    tau_set: frozenset = frozenset()
    xi_exp: tuple = ()  # xi_exp[k] is the exponent of xi_{k+1}

    def degree(self, p: int) -> int:
        return (sum(2 * p ** e - 1 for e in self.tau_set)
                + sum(r * 2 * (p ** (k + 1) - 1) for k, r in enumerate(self.xi_exp)))

    def __str__(self):
        parts = [f"tau{e}" for e in sorted(self.tau_set)]
        parts += [f"xi{k + 1}" + (f"^{r}" if r > 1 else "") for k, r in enumerate(self.xi_exp) if r]
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class QuotientSpec:
    n: int
    conjugated: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")


class DualSteenrod:
    """``Λ[tau_0, tau_1, ...] ⊗ F_p[xi_1, xi_2, ...]`` restricted to degrees <= cap."""

    def __init__(self, p: int, cap: int):
        check_prime(p)
        if p == 2:
            raise NotPrime("the dual Steenrod quotients here are odd-primary; p=2 is out of scope")
        self.p = p
        self.cap = cap
        count = 1
        while 2 * p ** count - 2 <= cap:
            count += 1
        taus, xis = derived_degrees(p, count + 1)
        for e, d in enumerate(taus):
            assert d == 2 * p ** e - 1, (e, d)
        for k, d in enumerate(xis, start=1):
            assert d == 2 * p ** k - 2, (k, d)
        self.tau_degrees = [d for d in taus if d <= cap]
        self.xi_degrees = [d for d in xis if d <= cap]
        gens = [ext(f"tau{e}", d) for e, d in enumerate(self.tau_degrees)]
        gens += [poly(f"xi{k}", d) for k, d in enumerate(self.xi_degrees, start=1)]
        self.alg = FreeGCAlgebra(p, gens)
        self.ntau = len(self.tau_degrees)
        self._chi_mono: dict = {}

    def __repr__(self):
        return f"DualSteenrod(p={self.p}, cap={self.cap})"

    def tau(self, e: int) -> Element:
        return self.alg.gen(f"tau{e}")

    def xi(self, k: int) -> Element:
        return self.alg.one() if k == 0 else self.alg.gen(f"xi{k}")

    def tau_degree(self, e: int) -> int:
        return 2 * self.p ** e - 1

    def xi_degree(self, k: int) -> int:
        return 2 * self.p ** k - 2

    def basis(self, d: int) -> list[tuple]:
        return self.alg.basis((d, 0))

    def to_milnor(self, m: tuple) -> MilnorMonomial:
        taus = frozenset(e for e in range(self.ntau) if m[e])
        xi = tuple(m[self.ntau:])
        while xi and not xi[-1]:
            xi = xi[:-1]
        return MilnorMonomial(taus, xi)

    def from_milnor(self, mm: MilnorMonomial) -> tuple:
        m = [0] * self.alg.ngens
        for e in mm.tau_set:
            m[e] = 1
        for k, r in enumerate(mm.xi_exp):
            m[self.ntau + k] = r
        return tuple(m)

    # -- conjugation -------------------------------------------------------

    @cached_property
    def _chi_gens(self) -> tuple[list[Element], list[Element]]:
        # sum_{i=0}^n xi_{n-i}^{p^i} chi(xi_i) = 0 and tau_n + sum xi_{n-i}^{p^i} chi(tau_i) = 0
        p = self.p
        chi_xi = [self.alg.one()]
        for n in range(1, len(self.xi_degrees) + 1):
            acc = self.alg.zero()
            for i in range(n):
                acc = acc + self.xi(n - i) ** (p ** i) * chi_xi[i]
            chi_xi.append(-acc)
        chi_tau = []
        for n in range(self.ntau):
            acc = self.tau(n)
            for i in range(n):
                acc = acc + self.xi(n - i) ** (p ** i) * chi_tau[i]
            chi_tau.append(-acc)
        return chi_tau, chi_xi

    def chi_tau(self, e: int) -> Element:
        return self._chi_gens[0][e]

    def chi_xi(self, k: int) -> Element:
        return self._chi_gens[1][k]

    def chi_monomial(self, m: tuple) -> Element:
        hit = self._chi_mono.get(m)
        if hit is None:
            hit = self.alg.one()
            for e in range(self.ntau):
                if m[e]:
                    hit = hit * self.chi_tau(e)
            for k, r in enumerate(m[self.ntau:], start=1):
                if r:
                    hit = hit * self.chi_xi(k) ** r
            self._chi_mono[m] = hit
        return hit

    def conjugate(self, x: Element, d_max: int | None = None) -> Element:
        d_max = self.cap if d_max is None else d_max
        if d_max > self.cap:
            raise DegreeCapExceeded(f"degree bound {d_max} exceeds materialized cap {self.cap}")
        out = self.alg.zero()
        for m, c in x.terms.items():
            if self.alg.bidegree(m).t > d_max:
                raise DegreeCapExceeded(f"term {self.alg.mono_str(m)} exceeds degree {d_max}")
            out = out + self.chi_monomial(m) * c
        return out

    # -- quotients ---------------------------------------------------------

    def ideal_generators(self, q: QuotientSpec, d_max: int) -> list[tuple[str, Element]]:
        """Generators tau_m (m >= n) and xi_m (m >= n+1), conjugated if asked, of degree <= d_max."""
        self._need(d_max)
        out = []
        bar_ = "bar" if q.conjugated else ""
        for e in range(q.n, self.ntau):
            if self.tau_degree(e) <= d_max:
                out.append((f"tau{bar_}{e}", self.chi_tau(e) if q.conjugated else self.tau(e)))
        for k in range(q.n + 1, len(self.xi_degrees) + 1):
            if self.xi_degree(k) <= d_max:
                out.append((f"xi{bar_}{k}", self.chi_xi(k) if q.conjugated else self.xi(k)))
        return out

    def _need(self, d_max: int):
        if d_max > self.cap:
            raise DegreeCapExceeded(f"degree bound {d_max} exceeds materialized cap {self.cap}")

    def _vector(self, x: Element, index: dict) -> dict:
        return {index[m]: c for m, c in x.terms.items()}

    def ideal_span(self, gens: list[Element], d: int) -> tuple[Span, dict]:
        basis = self.basis(d)
        index = {m: k for k, m in enumerate(basis)}
        span = Span(self.p)
        for g in gens:
            e = g.bidegree
            if e is None or e.t > d:
                continue
            for m in self.basis(d - e.t):
                span.add(self._vector(g * self.alg.mono(m), index))
        return span, index


def basis_in_degree(A: DualSteenrod, d: int) -> list[MilnorMonomial]:
    return [A.to_milnor(m) for m in A.basis(d)]


def conjugate(A: DualSteenrod, x: Element, d_max: int) -> Element:
    return A.conjugate(x, d_max)


@dataclass
class CheckReport:
    name: str
    params: dict
    ok: bool = True
    data: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def fail(self, **payload):
        self.ok = False
        self.failures.append(payload)

    def as_dict(self) -> dict:
        return {"check": self.name, "params": self.params, "pass": self.ok,
                "data": self.data, "failures": self.failures}


def quotient_basis(A: DualSteenrod, q: QuotientSpec, d_max: int) -> tuple[PoincareTable, dict[int, list[tuple]]]:
    """Degreewise basis of A_*/I, returned as Milnor monomials spanning a complement of I."""
    A._need(d_max)
    gens = [g for _, g in A.ideal_generators(q, d_max)]
    dims, reps = {}, {}
    for d in range(d_max + 1):
        span, index = A.ideal_span(gens, d)
        basis = A.basis(d)
        reps[d] = [m for k, m in enumerate(basis) if k not in span.pivots]
        dims[Bidegree(d, 0)] = len(basis) - span.rank
    return PoincareTable(dims, Bidegree(d_max, 0)), reps


def _sub_monomials(A: DualSteenrod, n: int, d: int) -> list[tuple]:
    # monomials in xi_1..xi_n and tau_0..tau_{n-1}
    out = []
    for m in A.basis(d):
        if any(m[e] for e in range(n, A.ntau)):
            continue
        if any(m[A.ntau + k - 1] for k in range(n + 1, len(A.xi_degrees) + 1)):
            continue
        out.append(m)
    return out


def subring_iso_check(A: DualSteenrod, q: QuotientSpec, d_max: int) -> CheckReport:
    """F_p[xi_1..xi_n] ⊗ Λ[tau_0..tau_{n-1}] -> A_*/I is an isomorphism in degrees <= d_max."""
    rep = CheckReport("iso", {"p": A.p, "n": q.n, "conjugated": q.conjugated, "dmax": d_max})
    A._need(d_max)
    gens = [g for _, g in A.ideal_generators(q, d_max)]
    series_sub, series_quot = [], []
    for d in range(d_max + 1):
        span, index = A.ideal_span(gens, d)
        quot = len(index) - span.rank
        sub = _sub_monomials(A, q.n, d)
        before = span.rank
        for m in sub:
            span.add({index[m]: 1})
        image_rank = span.rank - before
        series_sub.append(len(sub))
        series_quot.append(quot)
        if len(sub) != quot or image_rank != len(sub):
            rep.fail(degree=d, subring_dim=len(sub), quotient_dim=quot, image_rank=image_rank)
    rep.data = {"subring_series": series_sub, "quotient_series": series_quot}
    return rep


def _conj_generators(A: DualSteenrod, conjugated: bool, d_max: int):
    taus = [(f"{'tbar' if conjugated else 'tau'}{e}", A.tau_degree(e),
             A.chi_tau(e) if conjugated else A.tau(e))
            for e in range(A.ntau) if A.tau_degree(e) <= d_max]
    xis = [(f"{'xbar' if conjugated else 'xi'}{k}", A.xi_degree(k),
            A.chi_xi(k) if conjugated else A.xi(k))
           for k in range(1, len(A.xi_degrees) + 1) if A.xi_degree(k) <= d_max]
    return taus, xis


@dataclass
class _SubAlgebra:
    alg: FreeGCAlgebra
    images: list  # image in A_* of each generator, in generator order
    owner: DualSteenrod
    _cache: dict = field(default_factory=dict)

    def image(self, m: tuple) -> Element:
        hit = self._cache.get(m)
        if hit is None:
            hit = self.owner.alg.one()
            for g, e in zip(self.images, m):
                if e:
                    hit = hit * g ** e
            self._cache[m] = hit
        return hit


def _subalgebra(A: DualSteenrod, gens) -> _SubAlgebra:
    specs = [ext(name, d) if d % 2 else poly(name, d) for name, d, _ in gens]
    return _SubAlgebra(FreeGCAlgebra(A.p, specs), [img for _, _, img in gens], A)


def base_and_complement(A: DualSteenrod, q: QuotientSpec, d_max: int) -> tuple[_SubAlgebra, _SubAlgebra]:
    taus, xis = _conj_generators(A, q.conjugated, d_max)
    comp = [g for e, g in enumerate(taus) if e < q.n] + [g for k, g in enumerate(xis, 1) if k <= q.n]
    base = [g for e, g in enumerate(taus) if e >= q.n] + [g for k, g in enumerate(xis, 1) if k > q.n]
    return _subalgebra(A, base), _subalgebra(A, comp)


def freeness_check(A: DualSteenrod, q: QuotientSpec, d_max: int) -> CheckReport:
    """complement ⊗ base -> A_* (multiplication) is an isomorphism in degrees <= d_max."""
    rep = CheckReport("free", {"p": A.p, "n": q.n, "conjugated": q.conjugated, "dmax": d_max})
    A._need(d_max)
    base, comp = base_and_complement(A, q, d_max)
    sa = [len(A.basis(d)) for d in range(d_max + 1)]
    sb = [len(base.alg.basis((d, 0))) for d in range(d_max + 1)]
    sc = [len(comp.alg.basis((d, 0))) for d in range(d_max + 1)]
    product = [sum(sc[k] * sb[d - k] for k in range(d + 1)) for d in range(d_max + 1)]
    for d in range(d_max + 1):
        index = {m: k for k, m in enumerate(A.basis(d))}
        span = Span(A.p)
        count = 0
        for k in range(d + 1):
            for mc in comp.alg.basis((k, 0)):
                for mb in base.alg.basis((d - k, 0)):
                    count += 1
                    img = comp.image(mc) * base.image(mb)
                    span.add({index[m]: c for m, c in img.terms.items()})
        if count != sa[d] or span.rank != sa[d]:
            rep.fail(degree=d, source_dim=count, target_dim=sa[d], rank=span.rank)
    rep.data = {"algebra_series": sa, "base_series": sb, "complement_series": sc,
                "product_series": product, "series_multiplicative": product == sa}
    if product != sa:
        rep.ok = False
    return rep


def _steenrod_bar_data(A: DualSteenrod, base: _SubAlgebra) -> bar.BarData:
    B = base.alg
    p = A.p

    def base_basis(d):
        return B.basis((d, 0)) if d >= 1 else []

    def base_mult(x, y):
        r = B.mono_mul(x, y)
        if r is None:
            return {}
        s, m = r
        return {m: s % p}

    def act(a, b):
        return (A.alg.mono(a) * base.image(b)).terms

    return bar.BarData(p, base_basis, base_mult, A.basis, act)


def kunneth_e2(A: DualSteenrod, q: QuotientSpec, d_max: int, s_max: int) -> CheckReport:
    """Tor over the base subalgebra of (A_*, F_p) by the bar complex.

    Passes when every positive Tor group vanishes and Tor_0 has the Poincaré
    series of the quotient.
    """
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    rep = CheckReport("tor", {"p": A.p, "n": q.n, "conjugated": q.conjugated,
                              "dmax": d_max, "smax": s_max})
    A._need(d_max)
    base, _ = base_and_complement(A, q, d_max)
    dims = bar.tor_dims(_steenrod_bar_data(A, base), d_max, s_max)
    table, _ = quotient_basis(A, q, d_max)
    tor0 = [dims[(0, d)] for d in range(d_max + 1)]
    quot = table.series()
    for (s, d), v in sorted(dims.items()):
        if s > 0 and v:
            rep.fail(s=s, degree=d, dim=v)
    if tor0 != quot:
        rep.fail(tor0_series=tor0, quotient_series=quot)
    rep.data = {"tor": {str(s): [dims[(s, d)] for d in range(d_max + 1)] for s in range(s_max + 1)},
                "quotient_series": quot}
    return rep


def steinberger_consistency(p: int, n_max: int) -> CheckReport:
    """Degree bookkeeping of ``Q_{1/2} tau_n = tau_{n+1}`` and ``βQ_{1/2} tau_n = xi_{n+1}``.

    Also checks that the free E_2 homology on a class in degree |tau_n| has
    generators in exactly the degrees of tau_m (m >= n) and xi_m (m > n).
    """
    check_prime(p)
    if p == 2:
        raise NotPrime("odd primes only")
    rep = CheckReport("steinberger", {"p": p, "n_max": n_max})
    rows = []
    for n in range(n_max + 1):
        src = 2 * p ** n - 1
        q_deg = apply_op(p, Q_HALF, (src, 1))[0]
        b_deg = apply_op(p, BQ_HALF, (src, 1))[0]
        want_q, want_b = 2 * p ** (n + 1) - 1, 2 * p ** (n + 1) - 2
        rows.append({"n": n, "tau_n": src, "Q_half": q_deg, "bQ_half": b_deg})
        if (q_deg, b_deg) != (want_q, want_b):
            rep.fail(n=n, got=[q_deg, b_deg], expected=[want_q, want_b])
        bound = 2 * p ** (n + 2) - 1
        e2 = sorted(d for _, d, _ in free_e2_generators_odd(p, src, bound))
        ideal = sorted([2 * p ** m - 1 for m in range(n, n + 3) if 2 * p ** m - 1 <= bound]
                       + [2 * p ** m - 2 for m in range(n + 1, n + 3) if 2 * p ** m - 2 <= bound])
        if e2 != ideal:
            rep.fail(n=n, free_e2_degrees=e2, ideal_degrees=ideal)
    rep.data = {"rows": rows}
    return rep
