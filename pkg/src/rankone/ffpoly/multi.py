"""Sparse polynomials in k[T][X_1, ..., X_M]."""

from __future__ import annotations

from .field import FieldSpec
from .poly import DensePoly, LaurentPoly


class MultiPoly:
    """f = sum c_(d0,d1..dM) T^d0 X_1^d1 ... X_M^dM with finitely many nonzero c.

    ``terms`` maps exponent tuples (d0, d1, ..., dM) to nonzero field elements.
    """

    __slots__ = ("field", "M", "terms")

    def __init__(self, field: FieldSpec, M: int, terms):
        if M < 0:
            raise ValueError("number of variables must be >= 0")
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for exps, c in items:
            exps = tuple(int(x) for x in exps)
            if len(exps) != M + 1:
                raise ValueError(f"term {exps} does not have M + 1 = {M + 1} exponents")
            if any(x < 0 for x in exps):
                raise ValueError(f"negative exponent in term {exps}")
            c = c % field.p if field.is_prime_field else field.check(c)
            acc[exps] = field.add(acc.get(exps, 0), c)
        self.field = field
        self.M = M
        self.terms = {k: v for k, v in sorted(acc.items()) if v}

    @property
    def D(self) -> int:
        return max((max(k) for k in self.terms), default=0)

    def support(self):
        """Exponent tuples of the nonzero terms in canonical (sorted) order."""
        return list(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.field, self.M, self.terms) == (other.field, other.M, other.terms)

    def __hash__(self):
        return hash((self.field, self.M, tuple(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.field!r}, M={self.M}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (d0, *ds), c in self.terms.items():
            factors = []
            if d0:
                factors.append("T" if d0 == 1 else f"T^{d0}")
            for i, d in enumerate(ds, 1):
                if d:
                    factors.append(f"X{i}" if d == 1 else f"X{i}^{d}")
            mon = "*".join(factors)
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(parts)

    def _check(self, other):
        if self.field != other.field or self.M != other.M:
            raise ValueError("mismatched polynomial rings")

    def __add__(self, other):
        self._check(other)
        return MultiPoly(self.field, self.M, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        f = self.field
        return MultiPoly(f, self.M, {k: f.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        f = self.field
        out = []
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                out.append((tuple(x + y for x, y in zip(ka, kb)), f.mul(ca, cb)))
        return MultiPoly(f, self.M, out)

    def exponent_of(self, key, e) -> int:
        """d0 + d1*e1 + ... + dM*eM for the monomial ``key`` at exponent vector e."""
        return key[0] + sum(d * x for d, x in zip(key[1:], e))

    def specialize(self, e) -> LaurentPoly:
        """f(T^e1, ..., T^eM) in k[T, 1/T]."""
        e = tuple(e)
        if len(e) != self.M:
            raise ValueError(f"exponent vector has length {len(e)}, expected {self.M}")
        return LaurentPoly.from_terms(
            self.field, ((self.exponent_of(k, e), c) for k, c in self.terms.items())
        )

    def evaluate(self, point) -> LaurentPoly:
        """f(x_1, ..., x_M) for a point with coordinates in k[T, 1/T]."""
        if len(point) != self.M:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.M}")
        f = self.field
        acc = LaurentPoly.zero(f)
        cache = {}
        for (d0, *ds), c in self.terms.items():
            val = LaurentPoly.monomial(f, d0, c)
            for i, d in enumerate(ds):
                if d:
                    if (i, d) not in cache:
                        cache[i, d] = point[i] ** d
                    val = val * cache[i, d]
            acc = acc + val
        return acc

    def t_coefficient(self, xdeg) -> DensePoly:
        """The k[T]-coefficient of X^xdeg."""
        return DensePoly.from_terms(
            self.field, ((k[0], c) for k, c in self.terms.items() if k[1:] == tuple(xdeg))
        )
