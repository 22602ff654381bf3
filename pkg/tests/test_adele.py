from itertools import product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from rankone.adele import (
    ClosureLevel,
    Place,
    ResidueSet,
    congruence_solutions,
    density_check,
    exact_projection,
    extension_candidates,
    find_killer,
    frobenius_limit,
    kills_residue,
    minimal_polynomial,
    place_enumerate,
    standard_schedule,
)
from rankone.corpus import deep_instances, load_corpus
from rankone.ffpoly import DensePoly, FieldSpec, MultiPoly, mult_order
from rankone.lifting import SolutionFamily
from rankone.zsolve import CutoffExceeded, LatticeCoset

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def P(fld, *cs):
    return DensePoly(fld, cs)


def level(fld, *pairs):
    return ClosureLevel.make([(Place(Q), n) for Q, n in pairs])


def brute_congruence(f_list, lv):
    # every r in (Z/N)^M, reducing f(T^r) modulo the level's modulus directly
    Q = lv.modulus
    out = set()
    for r in product(range(lv.N), repeat=f_list[0].M):
        if all((f.specialize(r).to_dense() % Q).is_zero() for f in f_list):
            out.add(r)
    return out


def x_minus_t(fld):
    return MultiPoly(fld, 1, {(0, 1): 1, (1, 0): -1})


# -- places and levels -------------------------------------------------------


def test_place_enumerate_examples():
    assert [pl.P for pl in place_enumerate(F2, 2)] == [P(F2, 1, 1), P(F2, 1, 1, 1)]
    assert [pl.P for pl in place_enumerate(F3, 1)] == [P(F3, 1, 1), P(F3, 2, 1)]
    # T+1, T^2+T+1, T^3+T+1, T^3+T^2+1; T itself is excluded
    assert len(place_enumerate(F2, 3)) == 4
    with pytest.raises(ValueError):
        place_enumerate(F2, 7)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_place_enumerate_brute(p):
    fld = FieldSpec(p)
    monics = [DensePoly(fld, list(cs) + [1]) for d in range(1, 4) for cs in product(range(p), repeat=d)]
    def irreducible(Q):
        return not any(R.degree >= 1 and R.degree < Q.degree and (Q % R).is_zero() for R in monics)
    expect = [Q for Q in monics if irreducible(Q) and Q != DensePoly.T(fld)]
    got = [pl.P for pl in place_enumerate(fld, 3)]
    assert sorted(map(str, got)) == sorted(map(str, expect))


def test_place_validation():
    with pytest.raises(ValueError):
        Place(DensePoly.T(F2))
    with pytest.raises(ValueError):
        Place(P(F2, 1, 0, 1))
    with pytest.raises(ValueError):
        Place(P(F3, 2, 2))


def test_level_period_and_nesting():
    lv = level(F2, (P(F2, 1, 1, 1), 1), (P(F2, 1, 1), 2))
    assert lv.N == 6 and lv.modulus == P(F2, 1, 1, 1) * P(F2, 1, 1) ** 2
    coarse = level(F2, (P(F2, 1, 1), 1))
    assert lv.refines(coarse) and not coarse.refines(lv)
    sched = standard_schedule(F3, 3, 2)
    assert len(sched) == 6
    for a, b in zip(sched, sched[1:]):
        assert b.refines(a) and b.N % a.N == 0


# -- congruence solutions ----------------------------------------------------


def test_congruence_examples():
    assert congruence_solutions([x_minus_t(F2)], level(F2, (P(F2, 1, 1, 1), 1))).residues == {(1,)}
    f = MultiPoly(F2, 2, {(0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})
    cs = congruence_solutions([f], level(F2, (P(F2, 1, 1), 1)))
    assert cs.N == 1 and cs.residues == frozenset()
    g = MultiPoly(F3, 2, {(0, 1, 0): 1, (0, 0, 1): 1, (1, 0, 0): -1, (2, 0, 0): -1})
    lv = level(F3, (P(F3, 1, 0, 1), 1))
    assert lv.N == 4
    assert congruence_solutions([g], lv).residues == {(1, 2), (2, 1)} == brute_congruence([g], lv)


def test_congruence_cap():
    f = MultiPoly(F5, 2, {(0, 1, 1): 1, (1, 0, 0): -1})
    with pytest.raises(CutoffExceeded):
        congruence_solutions([f], standard_schedule(F5, 2, 1)[-1], cap=10)


@pytest.mark.parametrize("inst", load_corpus(include_deep=True), ids=lambda i: i.name)
def test_congruence_matches_brute_force(inst):
    f_list = list(inst.system)
    lv = standard_schedule(inst.field, 2, 1)[-1]
    if lv.N ** inst.M > 20000:
        lv = standard_schedule(inst.field, 1, 2)[-1]
    assert congruence_solutions(f_list, lv).residues == brute_congruence(f_list, lv)


@given(st.integers(0, 30), st.integers(0, 30))
def test_congruence_is_periodic(r1, r2):
    f = MultiPoly(F3, 2, {(0, 1, 1): 1, (1, 0, 0): -1})
    lv = level(F3, (P(F3, 1, 0, 1), 1), (P(F3, 1, 1), 2))
    cs = congruence_solutions([f], lv)
    Q = lv.modulus
    member = (f.specialize((r1, r2)).to_dense() % Q).is_zero()
    assert member == ((r1 % lv.N, r2 % lv.N) in cs.residues)


# -- exact projections -------------------------------------------------------


def test_exact_projection_examples():
    fam = SolutionFamily(2, (LatticeCoset.make([1, 0], [[1, -1]]),))
    assert exact_projection(fam, 4).residues == {(1, 0), (2, 3), (3, 2), (0, 1)}
    assert exact_projection(SolutionFamily(2, ()), 4).residues == frozenset()
    fam = SolutionFamily(2, (LatticeCoset.make([1, 2]), LatticeCoset.make([2, 1])))
    assert exact_projection(fam, 4).residues == {(1, 2), (2, 1)}


def test_residue_set_projection():
    rs = ResidueSet(6, frozenset({(1,), (4,), (5,)}))
    assert rs.project(3).residues == {(1,), (2,)}
    with pytest.raises(ValueError):
        rs.project(4)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(1, 12))
def test_exact_projection_brute(v, N):
    coset = LatticeCoset.make([1, -1], [v] if any(v) else [])
    fam = SolutionFamily(2, (coset,))
    expect = {((1 + k * v[0]) % N, (-1 + k * v[1]) % N) for k in range(-N, N + 1)}
    assert exact_projection(fam, N).residues == expect


# -- density check -----------------------------------------------------------


def test_density_examples():
    f = MultiPoly(F3, 2, {(0, 1, 1): 1, (1, 0, 0): -1})
    rep = density_check([f], standard_schedule(F3, 3, 1))
    assert rep.ok and rep.stabilized_at == 0 and all(r.equal for r in rep.levels)
    g = MultiPoly(F2, 2, {(0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})
    rep = density_check([g], standard_schedule(F2, 3, 1))
    assert rep.ok and all(r.congruence == 0 for r in rep.levels)
    rep = density_check([x_minus_t(F5)], standard_schedule(F5, 2, 2))
    assert rep.ok and all(r.congruence == r.exact == 1 for r in rep.levels)


def test_density_rejects_unnested():
    a = level(F2, (P(F2, 1, 1), 1))
    b = level(F2, (P(F2, 1, 1, 1), 1))
    with pytest.raises(ValueError):
        density_check([x_minus_t(F2)], [a, b])


@pytest.mark.parametrize("inst", load_corpus(), ids=lambda i: i.name)
def test_monotone_pullback(inst):
    f_list = list(inst.system)
    sched = standard_schedule(inst.field, 2, 1)
    sets = [congruence_solutions(f_list, lv) for lv in sched]
    for coarse, fine in zip(sets, sets[1:]):
        assert fine.project(coarse.N).residues <= coarse.residues


@given(st.integers(1, 3), st.integers(1, 2))
def test_square_torsion_never_closes(d, n):
    # 2r = 2 mod N holds for r = 1 + N/2, so X^2 = T^2 shows a spurious residue at every
    # level of even period, and that residue dies once the 2-part of the period grows
    f = [MultiPoly(F5, 1, {(0, 2): 1, (2, 0): -1})]
    lv = standard_schedule(F5, d, n)[-1]
    cs = congruence_solutions(f, lv)
    assert lv.N % 2 == 0
    assert (1 + lv.N // 2,) in cs.residues
    assert (1,) in cs.residues and len(cs) == 2


@pytest.mark.parametrize("inst", deep_instances(), ids=lambda i: i.name)
def test_deep_spurious_residues_are_eliminated(inst):
    f_list = list(inst.system)
    cands = [(Place(Q), 1) for Q in inst.extra_places]
    cands += extension_candidates(inst.field, *inst.resolve)
    rep = density_check(f_list, standard_schedule(inst.field, 3, 2), resolve_with=cands)
    assert rep.sound
    assert not rep.final_equal and rep.spurious
    assert rep.counterexamples == []
    assert len(rep.resolved) == len(rep.spurious)
    N = rep.levels[-1].N
    for item in rep.resolved[:3]:
        pl = Place(DensePoly(inst.field, item["place"]))
        assert kills_residue(f_list, N, tuple(item["residue"]), pl, item["precision"])


def test_find_killer_keeps_exact_residues():
    f = [x_minus_t(F3)]
    lv = standard_schedule(F3, 2, 1)[-1]
    assert find_killer(f, lv.N, (1,), extension_candidates(F3, 3, 2)) is None


def test_counterexample_certificate_shape():
    # without a resolution search the square's spurious residue is reported with its chain
    f = [MultiPoly(F5, 1, {(0, 2): 1, (2, 0): -1})]
    sched = standard_schedule(F5, 1, 1)
    rep = density_check(f, sched)
    assert rep.sound and not rep.ok
    cert = rep.counterexamples[0]
    assert cert["residue"] == [1 + sched[-1].N // 2]
    assert [c["N"] for c in cert["chain"]] == [lv.N for lv in sched]


# -- Frobenius limits --------------------------------------------------------


def test_frobenius_examples():
    lim = frobenius_limit(Place(P(F2, 1, 1, 1)))
    assert lim.value == DensePoly.T(F2) and lim.minpoly == P(F2, 1, 1, 1)
    lim = frobenius_limit(Place(P(F3, 1, 0, 1)))
    assert lim.value == DensePoly.T(F3) and lim.minpoly == P(F3, 1, 0, 1)
    lim = frobenius_limit(Place(P(F2, 1, 1)))
    assert lim.value == DensePoly.one(F2) and lim.minpoly == P(F2, 1, 1)


@pytest.mark.parametrize("fld", [F2, F3, F5, FieldSpec(2, 2)])
def test_frobenius_limit_brute(fld):
    for pl in place_enumerate(fld, 3):
        lim = frobenius_limit(pl)
        m = mult_order(pl.P)
        # the limit is T^(p^(n!) mod m) for any n past the stable point
        n = lim.stable_from + 3
        assert lim.value == DensePoly.T(fld).pow_mod(pow(fld.p, factorial(n), m), pl.P)
        assert lim.minpoly == pl.P


def test_minimal_polynomial_vanishes():
    Q = P(F3, 2, 1, 0, 1)      # T^3 + T + 2, irreducible over F_3
    for alpha in [DensePoly.T(F3), P(F3, 1, 1), P(F3, 0, 0, 1)]:
        mp_ = minimal_polynomial(alpha, Q)
        acc = DensePoly.zero(F3)
        for c in reversed(mp_.coeffs):
            acc = (acc * alpha + DensePoly(F3, [c])) % Q
        assert acc.is_zero() and mp_.lc == 1
