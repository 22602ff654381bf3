"""Finite-precision stand-in for the product of K_v^* over places of k(T).

A place away from T and infinity is a monic irreducible P != T. A closure
level fixes finitely many places with precisions n_v; two exponent vectors
are indistinguishable at that level when they agree modulo
N = lcm_v ord(T mod P_v^n_v), since T^N = 1 modulo Q = prod P_v^n_v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import factorial, gcd, lcm, prod

from sympy import n_order

from .ffpoly import DensePoly, FieldSpec, irreducibles, is_irreducible, mult_order
from .lifting import SolutionFamily, _ring_of, solve_all_monomial_points
from .zsolve import CutoffExceeded

DEFAULT_ENUM_CAP = 10 ** 6


@dataclass(frozen=True)
class Place:
    P: DensePoly

    def __post_init__(self):
        P = self.P
        if P.degree < 1 or P.lc != 1:
            raise ValueError(f"place polynomial {P} must be monic and nonconstant")
        if P[0] == 0:
            raise ValueError("T itself is excluded from the places")
        if not is_irreducible(P):
            raise ValueError(f"{P} is not irreducible")

    @property
    def field(self) -> FieldSpec:
        return self.P.field

    @property
    def degree(self) -> int:
        return self.P.degree

    def sort_key(self):
        return self.P.sort_key()

    def __str__(self):
        return str(self.P)


def place_enumerate(field: FieldSpec, max_deg: int):
    """All monic irreducibles of degree <= max_deg other than T, by degree then coefficients."""
    if max_deg > 6:
        raise ValueError("max_deg is capped at 6")
    out = []
    for d in range(1, max_deg + 1):
        out.extend(Place(P) for P in irreducibles(field, d) if P[0] != 0)
    return out


@dataclass(frozen=True)
class ClosureLevel:
    places: tuple       # ((Place, precision), ...) in canonical order

    @classmethod
    def make(cls, places):
        merged = {}
        for pl, n in places:
            if n < 1:
                raise ValueError("precision must be >= 1")
            merged[pl] = max(n, merged.get(pl, 0))
        if not merged:
            raise ValueError("a level needs at least one place")
        fields = {pl.field for pl in merged}
        if len(fields) != 1:
            raise ValueError("places over different fields")
        return cls(tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key())))

    @property
    def field(self):
        return self.places[0][0].field

    @cached_property
    def orders(self):
        return tuple(mult_order(pl.P, n) for pl, n in self.places)

    @cached_property
    def N(self) -> int:
        return lcm(*self.orders)

    @cached_property
    def modulus(self) -> DensePoly:
        return prod((pl.P ** n for pl, n in self.places), start=DensePoly.one(self.field))

    def precision_at(self, place) -> int:
        return dict(self.places).get(place, 0)

    def refines(self, coarser: ClosureLevel) -> bool:
        """Whether this level's modulus is divisible by the coarser level's."""
        return all(self.precision_at(pl) >= n for pl, n in coarser.places)

    def describe(self):
        return [{"place": list(pl.P.coeffs), "precision": n, "order": o}
                for (pl, n), o in zip(self.places, self.orders)]


def standard_schedule(field: FieldSpec, max_deg: int, max_prec: int = 1):
    """Nested levels: all places of degree <= d at precision 1 for d = 1..max_deg, then the
    same degrees raised to precision 2, 3, ... up to max_prec."""
    places = place_enumerate(field, max_deg)
    levels = []
    for prec in range(1, max_prec + 1):
        for d in range(1, max_deg + 1):
            levels.append(ClosureLevel.make(
                (pl, prec if pl.degree <= d else prec - 1)
                for pl in places if prec > 1 or pl.degree <= d
            ))
    return levels


@dataclass(frozen=True)
class ResidueSet:
    N: int
    residues: frozenset

    def __len__(self):
        return len(self.residues)

    def project(self, N2: int) -> ResidueSet:
        if self.N % N2:
            raise ValueError(f"{N2} does not divide {self.N}")
        return ResidueSet(N2, frozenset(tuple(x % N2 for x in r) for r in self.residues))

    def sorted(self):
        return sorted(self.residues)


class _PlaceCondition:
    """Memoized test of f_j(T^r) = 0 modulo P^n, as a function of r mod ord(T)."""

    TABLE_LIMIT = 1 << 14   # larger periods compute powers on demand

    def __init__(self, f_list, P: DensePoly, n: int, order: int):
        self.field = P.field
        self.order = order
        self.mod = mod = P ** n
        self.width = mod.degree
        self.T = DensePoly.T(self.field)
        self.powers = {}
        if order <= self.TABLE_LIMIT:
            cur = DensePoly.one(self.field) % mod
            for k in range(order):
                self.powers[k] = self._pad(cur)
                cur = (cur * self.T) % mod
        self.polys = [list(f.terms.items()) for f in f_list]
        self.memo = {}

    def _pad(self, poly):
        return poly.coeffs + (0,) * (self.width - len(poly.coeffs))

    def power(self, k):
        vec = self.powers.get(k)
        if vec is None:
            vec = self.powers[k] = self._pad(self.T.pow_mod(k, self.mod))
        return vec

    def __call__(self, r) -> bool:
        key = tuple(x % self.order for x in r)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._eval(key)
        return hit

    def _eval(self, r) -> bool:
        fld, N, w = self.field, self.order, self.width
        for terms in self.polys:
            acc = [0] * w
            for key, c in terms:
                k = (key[0] + sum(d * x for d, x in zip(key[1:], r))) % N
                vec = self.power(k)
                if fld.is_prime_field:
                    for i, v in enumerate(vec):
                        acc[i] += c * v
                else:
                    for i, v in enumerate(vec):
                        acc[i] = fld.add(acc[i], fld.mul(c, v))
            if fld.is_prime_field:
                if any(x % fld.p for x in acc):
                    return False
            elif any(acc):
                return False
        return True


def congruence_solutions(f_list, level: ClosureLevel, cap: int = DEFAULT_ENUM_CAP) -> ResidueSet:
    """All r in (Z/N)^M with f_j(T^r) = 0 modulo the level's modulus, for every j.

    Places are sieved one at a time in order of increasing period, lifting the
    surviving residues to the growing common period; ``cap`` bounds the number
    of candidates examined at any step.
    """
    fld, M = _ring_of(f_list)
    if level.field != fld:
        raise ValueError("level and polynomials over different fields")
    order = sorted(range(len(level.places)), key=lambda i: (level.orders[i], level.places[i][0].sort_key()))
    sols = {(0,) * M}
    cur = 1
    for i in order:
        (pl, n), Nv = level.places[i], level.orders[i]
        cond = _PlaceCondition(f_list, pl.P, n, Nv)
        new = lcm(cur, Nv)
        step = new // cur
        if len(sols) * step ** M > cap:
            raise CutoffExceeded(f"{len(sols) * step ** M} candidates exceed the enumeration cap {cap}")
        lifts = list(product(range(0, new, cur), repeat=M))
        out = set()
        for r in sols:
            for t in lifts:
                rr = tuple(x + y for x, y in zip(r, t))
                if cond(rr):
                    out.add(rr)
        sols, cur = out, new
    assert cur == level.N
    return ResidueSet(cur, frozenset(sols))


def exact_projection(family: SolutionFamily, N: int, cap: int = DEFAULT_ENUM_CAP) -> ResidueSet:
    """Reduction modulo N of every exact solution in the family."""
    out = set()
    for coset in family.cosets:
        gens = [tuple(x % N for x in v) for v in coset.basis]
        sub = {(0,) * family.M}
        frontier = list(sub)
        while frontier:
            nxt = []
            for r in frontier:
                for g in gens:
                    s = tuple((x + y) % N for x, y in zip(r, g))
                    if s not in sub:
                        sub.add(s)
                        nxt.append(s)
            if len(sub) > cap:
                raise CutoffExceeded(f"sublattice image exceeds the cap {cap}")
            frontier = nxt
        base = tuple(x % N for x in coset.particular)
        out.update(tuple((x + y) % N for x, y in zip(base, s)) for s in sub)
    return ResidueSet(N, frozenset(out))


def kills_residue(f_list, N: int, residue, place: Place, precision: int, cond=None) -> bool:
    """Whether no lift of ``residue`` (mod N) survives the extra condition at ``place``.

    Only r' mod ord_v with r' = residue mod gcd(N, ord_v) need testing.
    """
    Nv = mult_order(place.P, precision)
    g = gcd(N, Nv)
    if cond is None:
        cond = _PlaceCondition(f_list, place.P, precision, Nv)
    base = tuple(x % g for x in residue)
    for t in product(range(0, Nv, g), repeat=len(base)):
        if cond(tuple(x + y for x, y in zip(base, t))):
            return False
    return True


def find_killer(f_list, N: int, residue, candidates, budget: int = 10 ** 5, cache=None):
    """First (place, precision) among ``candidates`` that eliminates ``residue``, or None.

    ``cache`` (a dict) shares place conditions between calls.
    """
    cache = {} if cache is None else cache
    for place, prec in candidates:
        Nv = mult_order(place.P, prec)
        if (Nv // gcd(N, Nv)) ** len(residue) > budget:
            continue
        key = (place, prec)
        if key not in cache:
            cache[key] = _PlaceCondition(f_list, place.P, prec, Nv)
        if kills_residue(f_list, N, residue, place, prec, cache[key]):
            return place, prec
    return None


def extension_candidates(field: FieldSpec, max_deg: int, max_prec: int):
    """(place, precision) pairs ordered by precision, then degree."""
    places = place_enumerate(field, max_deg)
    return [(pl, n) for n in range(1, max_prec + 1) for pl in places]


@dataclass
class LevelReport:
    index: int
    N: int
    modulus_degree: int
    congruence: int
    exact: int
    contained: bool
    equal: bool
    spurious: list = field(default_factory=list)


@dataclass
class DensityReport:
    levels: list
    sound: bool
    stabilized_at: int | None   # first level from which every later level shows equality
    final_equal: bool
    spurious: list          # final-level residues without an exact preimage
    resolved: list          # (residue, killing place coefficients, precision)
    counterexamples: list   # spurious residues no searched place eliminates

    @property
    def ok(self):
        return self.sound and self.final_equal


def density_check(f_list, schedule, family: SolutionFamily | None = None,
                  cap: int = DEFAULT_ENUM_CAP, max_witnesses: int = 10,
                  resolve_with=None) -> DensityReport:
    """Compare congruence solutions with projections of exact solutions along nested levels.

    Final-level residues with no exact preimage are either eliminated by one
    more place from ``resolve_with`` (pairs (place, precision)) or reported as
    counterexample certificates together with their projections to every level.
    """
    if not schedule:
        raise ValueError("empty level schedule")
    for coarse, fine in zip(schedule, schedule[1:]):
        if not fine.refines(coarse):
            raise ValueError("levels must be nested")
    if family is None:
        family = solve_all_monomial_points(f_list)
    reports = []
    final_spurious = []
    for idx, level in enumerate(schedule):
        cong = congruence_solutions(f_list, level, cap)
        exact = exact_projection(family, level.N, cap)
        spurious = sorted(cong.residues - exact.residues)
        reports.append(LevelReport(
            index=idx,
            N=level.N,
            modulus_degree=level.modulus.degree,
            congruence=len(cong),
            exact=len(exact),
            contained=exact.residues <= cong.residues,
            equal=exact.residues == cong.residues,
            spurious=spurious[:max_witnesses],
        ))
        final_spurious = spurious
    sound = all(r.contained for r in reports)
    stabilized = None
    for r in reversed(reports):
        if not r.equal:
            break
        stabilized = r.index
    N = schedule[-1].N
    resolved, witnesses, cache = [], [], {}
    for r in final_spurious:
        killer = find_killer(f_list, N, r, resolve_with, cache=cache) if resolve_with else None
        if killer is not None:
            resolved.append({"residue": list(r), "place": list(killer[0].P.coeffs), "precision": killer[1]})
        elif len(witnesses) < max_witnesses:
            chain = [{"level": i, "N": lv.N, "residue": [x % lv.N for x in r]} for i, lv in enumerate(schedule)]
            witnesses.append({"residue": list(r), "chain": chain})
    return DensityReport(reports, sound, stabilized, reports[-1].equal,
                         [list(r) for r in final_spurious], resolved, witnesses)


@dataclass(frozen=True)
class FrobeniusLimit:
    place: Place
    order: int           # multiplicative order of T modulo P
    stable_from: int     # least n with T^(p^(n!)) constant from n on
    value: DensePoly     # the limit, reduced modulo P
    minpoly: DensePoly


def minimal_polynomial(alpha: DensePoly, P: DensePoly) -> DensePoly:
    """Minimal polynomial over k of the class of alpha in k[T]/(P), by linear dependence of powers."""
    fld = P.field
    w = P.degree
    basis = []      # (reduced vector, combination of powers, pivot position)
    power = DensePoly.one(fld) % P
    for s in range(w + 1):
        vec = list(power.coeffs) + [0] * (w - len(power.coeffs))
        combo = [0] * (w + 1)
        combo[s] = 1
        for bvec, bcombo, piv in basis:
            if vec[piv]:
                t = fld.div(vec[piv], bvec[piv])
                vec = [fld.sub(x, fld.mul(t, y)) for x, y in zip(vec, bvec)]
                combo = [fld.sub(x, fld.mul(t, y)) for x, y in zip(combo, bcombo)]
        if not any(vec):
            return DensePoly(fld, combo[: s + 1])
        piv = next(i for i, x in enumerate(vec) if x)
        basis.append((vec, combo, piv))
        power = (power * alpha) % P
    raise AssertionError("powers of an element of a degree-w extension are dependent by w + 1")


def frobenius_limit(place: Place, extra: int = 2) -> FrobeniusLimit:
    """Limit of T^(p^(n!)) in the residue field k[T]/(P), with its minimal polynomial over k."""
    P = place.P
    p = P.field.p
    m = mult_order(P)
    k = n_order(p, m) if m > 1 else 1
    n = 0
    while factorial(n) % k:
        n += 1
    T = DensePoly.T(P.field)

    def term(j):
        return T.pow_mod(pow(p, factorial(j), m), P)

    value = term(n)
    for j in range(n + 1, n + 1 + extra):
        if term(j) != value:
            raise AssertionError(f"T^(p^(n!)) not stable at n = {j}")
    return FrobeniusLimit(place, m, n, value, minimal_polynomial(value, P))
