"""Shared procedures for the lifting and acceptance tests."""

from itertools import islice, product

from rankone.adele import place_enumerate
from rankone.ffpoly import DensePoly, LaurentPoly, laurent_divides, mult_order
from rankone.lifting import choose_parameters, lift_exponents
from rankone.zsolve import AugSystem, LiftError, compute_n0, factorial_levels, normalize_system

# fraction-free diagonalization drives pivots towards +-det, so n0 can be as large as (3p)!
LIFT_CUTOFF = 500


def exact_points(family, limit=12):
    """A few members of every coset."""
    out = []
    for c in family.cosets:
        out.extend(islice(c.sample_points(), limit))
    return out


def planted_lift(f_list, e_star, rng, depth=6):
    """Perturb e_star by a*b0*v and lift, walking down the factorial levels until n0 | a."""
    fld = f_list[0].field
    params = choose_parameters(f_list, [DensePoly.T(fld)])
    v = [rng.randint(-3, 3) for _ in e_star]
    errors = []
    for a in islice(factorial_levels(params.a0), depth):
        a *= params.a0
        e = [x + a * params.b0 * y for x, y in zip(e_star, v)]
        try:
            return lift_exponents(f_list, e, a, params), e, a, params
        except LiftError as exc:
            errors.append(str(exc))
    raise AssertionError(f"no level up to depth {depth} lifted {e_star}: {errors}")


def check_properties(f_list, e, res, place_degree=3):
    """Both conclusions: exact vanishing, and T^level - 1 (hence every place whose
    order divides the level) dividing T^e_i - T^e'_i."""
    fld = f_list[0].field
    vanish = all(f.specialize(res.exponents).is_zero() for f in f_list)
    diffs = [LaurentPoly.monomial(fld, x) - LaurentPoly.monomial(fld, y) for x, y in zip(e, res.exponents)]
    q = DensePoly.monomial(fld, res.level) - DensePoly.one(fld)
    divides = all(laurent_divides(q, d) for d in diffs)
    at_places = all(
        laurent_divides(pl.P, d)
        for pl in place_enumerate(fld, place_degree) if res.level % mult_order(pl.P) == 0
        for d in diffs
    )
    return vanish, divides and at_places


def box(M, B):
    return product(range(-B, B + 1), repeat=M)


def random_lift_case(rng):
    J, M = rng.randint(1, 3), rng.randint(1, 3)
    A = [[rng.randint(-3, 3) for _ in range(M)] for _ in range(J)]
    star = [rng.randint(-5, 5) for _ in range(M)]
    b = [sum(a * x for a, x in zip(row, star)) for row in A]
    sys = AugSystem.make(A, b)
    nf = normalize_system(sys)
    levels = factorial_levels()
    n0 = compute_n0(nf, levels, cutoff=LIFT_CUTOFF)
    n = n0 * rng.choice([1, 2, 3, 6])
    e = [x + n * rng.randint(-4, 4) for x in star]
    return sys, e, n, n0
