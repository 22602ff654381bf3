"""Dense polynomials over F_q in k[T] and Laurent polynomials in k[T, 1/T].

Both types are immutable. Coefficients are field elements (ints, see
``FieldSpec``) stored lowest degree first with no trailing zeros, so the
zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from .field import FieldSpec


def _same_field(a, b):
    if not hasattr(b, "field"):
        raise TypeError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if a.field != b.field:
        raise ValueError(f"mismatched fields {a.field!r} and {b.field!r}")


def _strip(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class DensePoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=()):
        if field.is_prime_field:
            cs = [c % field.p for c in coeffs]
        else:
            cs = [field.check(c) for c in coeffs]
        self.field = field
        self.coeffs = _strip(cs)

    @classmethod
    def _raw(cls, field, coeffs):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _strip(coeffs)
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def T(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def monomial(cls, field, n, c=1):
        if n < 0:
            raise ValueError("negative degree in k[T]")
        return cls._raw(field, (0,) * n + (c,))

    @classmethod
    def from_terms(cls, field, terms):
        """Build from an iterable of (degree, coefficient) pairs; repeats are summed."""
        acc = {}
        for n, c in terms:
            acc[n] = field.add(acc.get(n, 0), c % field.p if field.is_prime_field else c)
        if not acc:
            return cls.zero(field)
        cs = [0] * (max(acc) + 1)
        for n, c in acc.items():
            cs[n] = c
        return cls._raw(field, cs)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"DensePoly({self.field!r}, {format_terms(enumerate(self.coeffs))})"

    def __str__(self):
        return format_terms(enumerate(self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    # -- ring operations --------------------------------------------------

    def _coerce(self, other):
        # plain ints are read as images of Z in k
        if isinstance(other, int):
            return DensePoly(self.field, [self.field.from_int(other)])
        return other

    def __add__(self, other):
        other = self._coerce(other)
        _same_field(self, other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        f = self.field
        if f.is_prime_field:
            p = f.p
            cs = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
        else:
            cs = [f.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
        return DensePoly._raw(f, cs)

    def __neg__(self):
        f = self.field
        return DensePoly._raw(f, [f.neg(c) for c in self.coeffs])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        f = self.field
        if c == 0:
            return DensePoly.zero(f)
        return DensePoly._raw(f, [f.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        _same_field(self, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return DensePoly.zero(self.field)
        f = self.field
        out = [0] * (len(a) + len(b) - 1)
        bnz = [(j, y) for j, y in enumerate(b) if y]
        if f.is_prime_field:
            p = f.p
            for i, x in enumerate(a):
                if x:
                    for j, y in bnz:
                        out[i + j] += x * y
            out = [c % p for c in out]
        else:
            for i, x in enumerate(a):
                if x:
                    for j, y in bnz:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return DensePoly._raw(f, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power in k[T]")
        result, base = DensePoly.one(self.field), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        _same_field(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) <= db:
            return DensePoly.zero(f), self
        inv_lc = f.inv(other.lc)
        # divisor terms below the leading one; sparse divisors (g_{a,b}) stay cheap
        low = [(k, c) for k, c in enumerate(other.coeffs[:-1]) if c]
        quot = [0] * (len(r) - db)
        if f.is_prime_field:
            p = f.p
            for i in range(len(r) - 1, db - 1, -1):
                c = r[i] % p
                if c:
                    c = c * inv_lc % p
                    s = i - db
                    quot[s] = c
                    for k, ck in low:
                        r[s + k] -= c * ck
            rem = [x % p for x in r[:db]]
        else:
            for i in range(len(r) - 1, db - 1, -1):
                c = r[i]
                if c:
                    c = f.mul(c, inv_lc)
                    s = i - db
                    quot[s] = c
                    for k, ck in low:
                        r[s + k] = f.sub(r[s + k], f.mul(c, ck))
            rem = r[:db]
        return DensePoly._raw(f, quot), DensePoly._raw(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        """True iff self | other in k[T]."""
        return (other % self).is_zero()

    # -- misc -------------------------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, x):
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def derivative(self):
        f = self.field
        return DensePoly._raw(f, [f.mul(f.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, n: int, modulus: DensePoly):
        if n < 0:
            raise ValueError("negative exponent")
        result = DensePoly.one(self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def compose_pow(self, m: int):
        """self(T^m) for m >= 1."""
        cs = [0] * (self.degree * m + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            cs[i * m] = c
        return DensePoly._raw(self.field, cs)


def poly_gcd(a: DensePoly, b: DensePoly) -> DensePoly:
    """Monic gcd in k[T]; gcd(0, 0) = 0."""
    _same_field(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: DensePoly, b: DensePoly):
    """(g, s, t) with s*a + t*b = g monic."""
    _same_field(a, b)
    f = a.field
    r0, r1 = a, b
    s0, s1 = DensePoly.one(f), DensePoly.zero(f)
    t0, t1 = DensePoly.zero(f), DensePoly.one(f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    u = f.inv(r0.lc)
    return r0.scale(u), s0.scale(u), t0.scale(u)


class LaurentPoly:
    """Element of k[T, 1/T]: ``coeffs[i]`` is the coefficient of T^(min_deg + i)."""

    __slots__ = ("field", "min_deg", "coeffs")

    def __init__(self, field: FieldSpec, min_deg: int = 0, coeffs=()):
        if field.is_prime_field:
            cs = [c % field.p for c in coeffs]
        else:
            cs = [field.check(c) for c in coeffs]
        self._set(field, min_deg, cs)

    def _set(self, field, min_deg, cs):
        lo, hi = 0, len(cs)
        while hi and cs[hi - 1] == 0:
            hi -= 1
        while lo < hi and cs[lo] == 0:
            lo += 1
        self.field = field
        if lo == hi:
            self.min_deg, self.coeffs = 0, ()
        else:
            self.min_deg, self.coeffs = min_deg + lo, tuple(cs[lo:hi])

    @classmethod
    def _raw(cls, field, min_deg, cs):
        obj = cls.__new__(cls)
        obj._set(field, min_deg, cs)
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, 0, ())

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls._raw(field, n, [c])

    @classmethod
    def from_terms(cls, field, terms):
        """Build from (exponent, coefficient) pairs; like exponents are combined."""
        acc = {}
        for n, c in terms:
            if field.is_prime_field:
                c %= field.p
            acc[n] = field.add(acc.get(n, 0), c)
        acc = {n: c for n, c in acc.items() if c}
        if not acc:
            return cls.zero(field)
        lo, hi = min(acc), max(acc)
        cs = [0] * (hi - lo + 1)
        for n, c in acc.items():
            cs[n - lo] = c
        return cls._raw(field, lo, cs)

    @classmethod
    def from_dense(cls, poly: DensePoly, shift: int = 0):
        return cls._raw(poly.field, shift, list(poly.coeffs))

    def is_zero(self):
        return not self.coeffs

    @property
    def max_deg(self):
        return self.min_deg + len(self.coeffs) - 1

    def terms(self):
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        return [(self.min_deg + i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.field, self.min_deg, self.coeffs) == (other.field, other.min_deg, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.min_deg, self.coeffs))

    def __repr__(self):
        return f"LaurentPoly({self.field!r}, {self})"

    def __str__(self):
        return format_terms(self.terms())

    def __add__(self, other):
        _same_field(self, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        f = self.field
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.max_deg, other.max_deg)
        cs = [0] * (hi - lo + 1)
        for src in (self, other):
            off = src.min_deg - lo
            for i, c in enumerate(src.coeffs):
                cs[off + i] = f.add(cs[off + i], c)
        return LaurentPoly._raw(f, lo, cs)

    def __neg__(self):
        f = self.field
        return LaurentPoly._raw(f, self.min_deg, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _same_field(self, other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero(self.field)
        prod = DensePoly._raw(self.field, self.coeffs) * DensePoly._raw(self.field, other.coeffs)
        return LaurentPoly._raw(self.field, self.min_deg + other.min_deg, list(prod.coeffs))

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms()) != 1:
                raise ValueError("only monomials are units in k[T, 1/T]")
            (e, c), = self.terms()
            return LaurentPoly.monomial(self.field, e * n, self.field.pow(c, n))
        result, base = LaurentPoly.monomial(self.field, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        f = self.field
        return LaurentPoly._raw(f, self.min_deg, [f.mul(c, x) for x in self.coeffs])

    def shift(self, k: int):
        """T^k * self."""
        return LaurentPoly._raw(self.field, self.min_deg + k, list(self.coeffs))

    def clearing_exponent(self) -> int:
        """Least k >= 0 with T^k * self in k[T]."""
        return -min(0, self.min_deg) if self.coeffs else 0

    def to_dense(self) -> DensePoly:
        """T^k * self as an element of k[T], k the clearing exponent."""
        if self.is_zero():
            return DensePoly.zero(self.field)
        k = self.clearing_exponent()
        return DensePoly._raw(self.field, (0,) * (self.min_deg + k) + self.coeffs)

    def fold(self, period: int) -> DensePoly:
        """Reduction modulo T^period - 1, as a polynomial of degree < period."""
        if period < 1:
            raise ValueError("period must be positive")
        f = self.field
        cs = [0] * period
        for e, c in self.terms():
            i = e % period
            cs[i] = f.add(cs[i], c)
        return DensePoly._raw(f, cs)


def format_terms(terms) -> str:
    parts = []
    for n, c in terms:
        if not c:
            continue
        if n == 0:
            parts.append(f"{c}")
        else:
            mon = "T" if n == 1 else f"T^{n}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(reversed(parts)) or "0"
