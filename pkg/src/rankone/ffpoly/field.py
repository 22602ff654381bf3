"""Small finite fields F_q with q = p^d <= 2^16.

An element of F_{p^d} is stored as a plain int in [0, q): its base-p digits
are the coefficients (lowest degree first) of its representative modulo the
defining polynomial. For d = 1 this is the ordinary residue mod p, so prime
fields cost nothing extra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

MAX_ORDER = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _divides_mod_p(g, f, p):
    # g, f: coefficient lists over F_p (low first), g monic
    r = list(f)
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] % p
        if c:
            for k in range(dg + 1):
                r[i - dg + k] = (r[i - dg + k] - c * g[k]) % p
    return not any(x % p for x in r[:dg])


def _irreducible_mod_p(f, p):
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for low in product(range(p), repeat=k):
            if _divides_mod_p(list(low) + [1], f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field k = F_{p^d}; ``modulus`` is the monic defining polynomial over F_p."""

    p: int
    d: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.d < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p ** self.d > MAX_ORDER:
            raise ValueError(f"field order {self.p}^{self.d} exceeds {MAX_ORDER}")
        if self.d == 1:
            if self.modulus is not None and len(self.modulus) != 2:
                raise ValueError("prime field takes no defining polynomial")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.d))
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.d + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not _irreducible_mod_p(list(mod), self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.d

    @property
    def is_prime_field(self) -> bool:
        return self.d == 1

    def __repr__(self):
        if self.d == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.d}[{','.join(map(str, self.modulus))}]"

    # -- element encoding -------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for c in reversed(list(ds)):
            v = v * self.p + c % self.p
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> k."""
        return n % self.p

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    def elements(self):
        return range(self.q)

    # -- arithmetic --------------------------------------------------------

    @cached_property
    def _tables(self):
        # exp/log tables w.r.t. a primitive element; only used for d > 1
        q, p, d = self.q, self.p, self.d
        mod = self.modulus

        def mulx(ds):
            top = ds[-1]
            ds = [0] + ds[:-1]
            if top:
                ds = [(c - top * m) % p for c, m in zip(ds, mod)]
            return ds

        def times(a_ds, b):
            # a * b where b given as int, by schoolbook in F_p[x]/(mod)
            acc = [0] * d
            cur = a_ds
            for c in self.digits(b):
                if c:
                    acc = [(x + c * y) % p for x, y in zip(acc, cur)]
                cur = mulx(cur)
            return acc

        order = q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        for g in range(2, q):
            gd = self.digits(g)

            def power(n):
                res = self.digits(1)
                base, e = gd, n
                while e:
                    if e & 1:
                        res = times(res, self.from_digits(base))
                    base = times(base, self.from_digits(base))
                    e >>= 1
                return self.from_digits(res)

            if all(power(order // r) != 1 for r in primes):
                break
        exp = [0] * (2 * order)
        log = [0] * q
        cur = self.digits(1)
        for i in range(order):
            v = self.from_digits(cur)
            exp[i] = exp[i + order] = v
            log[v] = i
            cur = times(cur, g)
        return exp, log

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.d == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.d == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if self.d == 1:
            return pow(a, n, self.p)
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        exp, log = self._tables
        return exp[(log[a] * n) % (self.q - 1)]

    def pth_root(self, a: int) -> int:
        """The unique b with b^p = a (Frobenius is bijective on F_q)."""
        return self.pow(a, self.q // self.p)


def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """Least monic irreducible of degree d over F_p (low coefficients read as base-p digits)."""
    for low in product(range(p), repeat=d):
        f = tuple(reversed(low)) + (1,)
        if f[0] and _irreducible_mod_p(list(f), p):
            return f
    raise ValueError(f"no irreducible of degree {d} over F_{p}")  # unreachable
