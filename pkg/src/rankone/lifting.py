"""Lifting approximate monomial solutions to exact ones, and solving for all monomial points.

A monomial point of V(f_1, ..., f_J) is an exponent vector e in Z^M with
f_j(T^e_1, ..., T^e_M) = 0 for every j. Grouping the monomials of each f_j
into zero-sum blocks of equal specialized exponent turns that condition into
an integer linear system in e; everything below is built on that reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .ffpoly import DensePoly, FieldSpec, LaurentPoly, MultiPoly, laurent_divides, make_gab
from .partition import DEFAULT_TERM_CAP, Term, enumerate_zero_sum_partitions, residue_partitions
from .zsolve import (
    AugSystem,
    CutoffExceeded,
    LatticeCoset,
    LiftError,
    compute_n0,
    factorial_levels,
    lift_solution,
    normalize_system,
    solve_exact,
)


def _ring_of(f_list):
    if not f_list:
        raise ValueError("empty polynomial system")
    fld, M = f_list[0].field, f_list[0].M
    for f in f_list:
        if f.field != fld or f.M != M:
            raise ValueError("all polynomials must live in the same ring")
    return fld, M


def monomial_terms(f: MultiPoly, e=None):
    """Partition terms for the monomials of f, numbered from 1 in support order.

    With e given, each term carries the specialized exponent d0 + d.e.
    """
    out = []
    for i, (key, c) in enumerate(f.terms.items(), 1):
        out.append(Term(i, c, f.exponent_of(key, e) if e is not None else 0))
    return out


@dataclass(frozen=True)
class GabParams:
    a0: int
    b0: int
    forbidden: tuple
    a_check: int = 8


def choose_parameters(f_list, forbidden, a_check: int = 8, a0_cutoff: int = 500) -> GabParams:
    """b0: least integer prime to p above (D+1)^(M+1); a0: least a0 prime to p such that no
    forbidden irreducible divides g_{a,b0} for a in a0*{1..a_check}."""
    fld, M = _ring_of(f_list)
    forbidden = tuple(sorted(set(forbidden), key=lambda P: P.sort_key()))
    if DensePoly.T(fld) not in forbidden:
        raise ValueError("the forbidden set must contain T")
    D = max(f.D for f in f_list)
    b0 = (D + 1) ** (M + 1) + 1
    while b0 % fld.p == 0:
        b0 += 1
    for a0 in range(1, a0_cutoff + 1):
        if a0 % fld.p == 0:
            continue
        if all(
            not S.divides(make_gab(fld, a0 * m, b0))
            for m in range(1, a_check + 1)
            for S in forbidden
        ):
            return GabParams(a0, b0, forbidden, a_check)
    raise CutoffExceeded(f"no admissible a0 in [1, {a0_cutoff}] for b0 = {b0}")


def system_from_partitions(f_list, choice) -> AugSystem:
    """Equations forcing equal specialized exponents inside every block.

    For consecutive monomials (d0, d), (d0', d') of a block:
    sum_i (d_i - d'_i) E_i = -(d0 - d0').
    """
    _, M = _ring_of(f_list)
    rows, rhs = [], []
    for f, partition in zip(f_list, choice, strict=True):
        keys = f.support()
        for blk in partition:
            for u, v in zip(blk, blk[1:]):
                d, dd = keys[u - 1], keys[v - 1]
                rows.append([d[i + 1] - dd[i + 1] for i in range(M)])
                rhs.append(-(d[0] - dd[0]))
    return AugSystem.make(rows, rhs, ncols=M)


@dataclass(frozen=True)
class LiftResult:
    exponents: tuple
    n0: int
    level: int          # a / n0: e_i = e'_i mod level
    choice: tuple
    system: AugSystem = field(repr=False)


def check_hypothesis(f_list, e, a: int, b0: int):
    """Indices j for which g_{a,b0} fails to divide f_j(T^e)."""
    fld, _ = _ring_of(f_list)
    g = make_gab(fld, a, b0)
    return [j for j, f in enumerate(f_list) if not laurent_divides(g, f.specialize(e), period=a * b0)]


def lift_exponents(f_list, e, a: int, params: GabParams, cutoff: int = 20, cap=DEFAULT_TERM_CAP) -> LiftResult:
    """Exact monomial solution e' congruent to e modulo a / n0.

    Requires g_{a,b0} | f_j(T^e) for all j. Admissible partitions constant
    modulo a*b0 are tried in lexicographic order of joint choice; the first one
    whose block system lifts at level a wins.
    """
    fld, M = _ring_of(f_list)
    e = tuple(int(x) for x in e)
    if len(e) != M:
        raise ValueError(f"exponent vector of length {len(e)}, expected {M}")
    failing = check_hypothesis(f_list, e, a, params.b0)
    if failing:
        raise LiftError(f"g_{{{a},{params.b0}}} does not divide f_j(T^e) for j in {failing}")
    per_poly = []
    for j, f in enumerate(f_list):
        opts = list(residue_partitions(fld, monomial_terms(f, e), a * params.b0, cap))
        if not opts:
            # impossible: b0 exceeds the term count, so divisibility forces a residue partition
            raise LiftError(f"falsification candidate: no residue partition for f_{j} at e={e}, a={a}")
        per_poly.append(opts)
    attempts = []
    for choice in product(*per_poly):
        sys = system_from_partitions(f_list, choice)
        nf = normalize_system(sys)
        try:
            n0 = compute_n0(nf, factorial_levels(params.a0), cutoff)
        except CutoffExceeded as exc:
            attempts.append((choice, str(exc)))
            continue
        if a % n0:
            attempts.append((choice, f"level a={a} not divisible by n0={n0}"))
            continue
        try:
            ep = lift_solution(sys, e, a, n0, nf)
        except LiftError as exc:
            attempts.append((choice, str(exc)))
            continue
        for f in f_list:
            assert f.specialize(ep).is_zero()
        return LiftResult(tuple(ep), n0, a // n0, choice, sys)
    raise LiftError(f"no partition choice lifts e={e} at level a={a}: {attempts}")


@dataclass(frozen=True)
class SolutionFamily:
    M: int
    cosets: tuple

    def contains(self, e) -> bool:
        return any(c.contains(e) for c in self.cosets)

    def is_empty(self):
        return not self.cosets


def joint_choices(f_list, cap=DEFAULT_TERM_CAP):
    fld, _ = _ring_of(f_list)
    per_poly = [enumerate_zero_sum_partitions(fld, monomial_terms(f), cap) for f in f_list]
    return product(*per_poly)


def solve_all_monomial_points(f_list, cap=DEFAULT_TERM_CAP) -> SolutionFamily:
    """Every e in Z^M with f_j(T^e) = 0 for all j, as a union of lattice cosets."""
    fld, M = _ring_of(f_list)
    found = set()
    for choice in joint_choices(f_list, cap):
        coset = solve_exact(system_from_partitions(f_list, choice))
        if coset:
            found.add(coset)
    cosets = tuple(sorted(found))
    for c in cosets:
        for pt in c.sample_points():
            assert all(f.specialize(pt).is_zero() for f in f_list), (c, pt)
    return SolutionFamily(M, cosets)


# -- Veronese linearization ---------------------------------------------------


@dataclass(frozen=True)
class Linearization:
    """Linear forms l_j(Y) = sum_d c_{j,d}(T) Y_d over Y indexed by {0..D}^M."""

    field: FieldSpec
    M: int
    D: int
    index: tuple
    forms: tuple        # one dict per f_j: index position -> nonzero DensePoly coefficient

    @property
    def N(self):
        return len(self.index)

    def evaluate(self, y):
        """Values l_j(y) for y a tuple of LaurentPoly indexed like ``index``."""
        out = []
        for form in self.forms:
            acc = LaurentPoly.zero(self.field)
            for pos, c in form.items():
                acc = acc + LaurentPoly.from_dense(c) * y[pos]
            out.append(acc)
        return out


def veronese_linearize(f_list) -> Linearization:
    fld, M = _ring_of(f_list)
    D = max(f.D for f in f_list)
    index = tuple(product(range(D + 1), repeat=M))
    pos = {d: i for i, d in enumerate(index)}
    forms = []
    for f in f_list:
        form = {}
        for xdeg in sorted({k[1:] for k in f.terms}):
            form[pos[xdeg]] = f.t_coefficient(xdeg)
        forms.append(form)
    return Linearization(fld, M, D, index, tuple(forms))


def veronese_point(point, D: int):
    """(x^d)_{d in {0..D}^M} for a point with coordinates in k[T, 1/T]."""
    M = len(point)
    fld = point[0].field
    pows = [[LaurentPoly.monomial(fld, 0)] for _ in range(M)]
    for i, x in enumerate(point):
        for _ in range(D):
            pows[i].append(pows[i][-1] * x)
    out = []
    for d in product(range(D + 1), repeat=M):
        val = LaurentPoly.monomial(fld, 0)
        for i, di in enumerate(d):
            val = val * pows[i][di]
        out.append(val)
    return tuple(out)


def monomial_point(field: FieldSpec, e):
    return tuple(LaurentPoly.monomial(field, x) for x in e)
