"""g_{a,b}, divisibility of Laurent polynomials, multiplicative orders."""

from __future__ import annotations

from math import lcm

from sympy import factorint

from .field import FieldSpec
from .poly import DensePoly, LaurentPoly


def make_gab(field: FieldSpec, a: int, b: int) -> DensePoly:
    """g_{a,b}(T) = (T^{ab} - 1) / (T^a - 1) = sum_{i<b} T^{a i}."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if b % field.p == 0:
        raise ValueError(f"b = {b} is divisible by the characteristic {field.p}")
    cs = [0] * (a * (b - 1) + 1)
    for i in range(b):
        cs[a * i] = 1
    return DensePoly._raw(field, cs)


def t_power_minus_one(field: FieldSpec, n: int) -> DensePoly:
    """T^n - 1."""
    return DensePoly.monomial(field, n) - DensePoly.one(field)


def laurent_divides(Q: DensePoly, P: LaurentPoly, period: int | None = None) -> bool:
    """Whether Q divides P in the sense that no zero of Q is a pole of P/Q.

    Implemented as Q | T^k P in k[T] for the clearing exponent k, which
    respects multiplicities. If ``period`` is given, Q must divide
    T^period - 1 and P is first reduced modulo T^period - 1; this is exact
    and keeps huge exponents cheap.
    """
    if Q.is_zero():
        raise ValueError("divisibility by the zero polynomial")
    if Q.field != P.field:
        raise ValueError("mismatched fields")
    if P.min_deg < 0 and Q[0] == 0:
        raise ValueError("Q shares the zero T = 0 with the denominator of P")
    if period is not None:
        if not Q.divides(t_power_minus_one(Q.field, period)):
            raise ValueError(f"Q does not divide T^{period} - 1")
        return Q.divides(P.fold(period))
    return Q.divides(P.to_dense())


def unit_group_order(P: DensePoly, n: int) -> int:
    """|(k[T]/(P^n))^*| for P irreducible."""
    qd = P.field.q ** P.degree
    return qd ** (n - 1) * (qd - 1)


def mult_order(P: DensePoly, n: int = 1) -> int:
    """Least N >= 1 with T^N = 1 mod P^n (P irreducible, P != T)."""
    if P.degree < 1:
        raise ValueError("P must be nonconstant")
    if P[0] == 0:
        raise ValueError("T is not a unit modulo a power of T")
    mod = P ** n
    T = DensePoly.T(P.field)
    one = DensePoly.one(P.field) % mod
    N = unit_group_order(P, n)
    if T.pow_mod(N, mod) != one:
        raise ValueError("P is not irreducible: T has no order dividing the unit group order")
    for r, mult in factorint(N).items():
        for _ in range(mult):
            if N % r == 0 and T.pow_mod(N // r, mod) == one:
                N //= r
            else:
                break
    return N


def level_period(places) -> int:
    """lcm of the orders of T modulo P^n over (P, n) pairs."""
    N = 1
    for P, n in places:
        N = lcm(N, mult_order(P, n))
    return N


def coprime_to_T(P: DensePoly) -> bool:
    return not P.is_zero() and P[0] != 0
