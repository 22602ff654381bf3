"""Factorization over F_q: square-free, distinct-degree, then equal-degree splitting."""

from __future__ import annotations

import random
from itertools import product

from sympy import primefactors

from .field import FieldSpec
from .poly import DensePoly, poly_gcd

_SEED = 20160901


def _pth_root(f: DensePoly) -> DensePoly:
    fld = f.field
    p = fld.p
    return DensePoly._raw(fld, [fld.pth_root(c) for c in f.coeffs[::p]])


def squarefree_decomposition(f: DensePoly):
    """Pairs (g, m) with g monic square-free, pairwise coprime, and f = lc * prod g^m."""
    if f.is_zero():
        raise ValueError("square-free decomposition of zero")
    f = f.monic()
    if f.degree < 1:
        return []
    p = f.field.p
    one = DensePoly.one(f.field)
    out = []
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        z = w // y
        if z != one:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c != one:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: DensePoly):
    """For square-free monic f, pairs (g, d) with g the product of all degree-d factors."""
    fld = f.field
    q = fld.q
    T = DensePoly.T(fld)
    one = DensePoly.one(fld)
    out = []
    rest = f
    h = T % rest
    d = 1
    while rest.degree >= 2 * d:
        h = h.pow_mod(q, rest)
        g = poly_gcd(rest, h - T)
        if g != one:
            out.append((g, d))
            rest = rest // g
            h = h % rest
        d += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _split_candidate(g: DensePoly, d: int, rng: random.Random) -> DensePoly:
    fld = g.field
    q = fld.q
    a = DensePoly._raw(fld, [rng.randrange(q) for _ in range(g.degree)])
    if fld.p == 2:
        # absolute trace map F_{q^d} -> F_2
        k = fld.d * d
        t = a % g
        acc = t
        for _ in range(k - 1):
            t = (t * t) % g
            acc = acc + t
        return acc
    return a.pow_mod((q ** d - 1) // 2, g) - DensePoly.one(fld)


def equal_degree(g: DensePoly, d: int, rng: random.Random):
    """Split a monic square-free g whose irreducible factors all have degree d."""
    if g.degree == d:
        return [g]
    one = DensePoly.one(g.field)
    while True:
        b = _split_candidate(g, d, rng)
        h = poly_gcd(g, b)
        if h != one and h.degree < g.degree:
            return equal_degree(h, d, rng) + equal_degree(g // h, d, rng)


def factorize(f: DensePoly):
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients).

    The product of factor**mult equals f up to its leading coefficient.
    """
    if f.is_zero():
        raise ValueError("factorization of the zero polynomial")
    rng = random.Random(_SEED)
    acc = {}
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                acc[irr] = acc.get(irr, 0) + m
    return sorted(acc.items(), key=lambda kv: kv[0].sort_key())


def is_irreducible(f: DensePoly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    fld = f.field
    q = fld.q
    T = DensePoly.T(fld)
    one = DensePoly.one(fld)

    def frob_power(k):
        h = T % f
        for _ in range(k):
            h = h.pow_mod(q, f)
        return h

    if frob_power(n) != T % f:
        return False
    for r in primefactors(n):
        if poly_gcd(f, frob_power(n // r) - T) != one:
            return False
    return True


def monic_polys(field: FieldSpec, deg: int):
    """All monic polynomials of the given degree, in canonical order."""
    for low in product(range(field.q), repeat=deg):
        yield DensePoly._raw(field, tuple(reversed(low)) + (1,))


def irreducibles(field: FieldSpec, deg: int):
    return [f for f in monic_polys(field, deg) if is_irreducible(f)]
