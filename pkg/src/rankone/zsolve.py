"""Integer linear systems A e = b: quasi-diagonal normal form, congruence lifting, exact solving.

``normalize_system`` uses only row swaps, swaps among the variable
columns, scaling a row by a nonzero integer and adding one row to another.
Those operations are not unimodular, so instead of inverse matrices we keep
the list of operations; replaying it on (A | b) reproduces (A' | b').
``solve_exact`` describes the full solution set as a lattice coset using
unimodular column operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, product
from math import factorial, prod


class LiftError(ValueError):
    """A lifting hypothesis fails or the system has no exact solution."""


class CutoffExceeded(RuntimeError):
    """A bounded search ran past its cutoff."""


@dataclass(frozen=True)
class AugSystem:
    """The augmented integer system (A | b) with ``ncols`` unknowns."""

    A: tuple
    b: tuple
    ncols: int

    @classmethod
    def make(cls, A, b, ncols=None):
        A = tuple(tuple(int(x) for x in row) for row in A)
        b = tuple(int(x) for x in b)
        if ncols is None:
            if not A:
                raise ValueError("ncols is required for a system without equations")
            ncols = len(A[0])
        if len(A) != len(b):
            raise ValueError(f"{len(A)} rows but {len(b)} right-hand sides")
        if any(len(row) != ncols for row in A):
            raise ValueError("ragged coefficient matrix")
        return cls(A, b, ncols)

    @property
    def nrows(self):
        return len(self.A)

    def residuals(self, e):
        """b_j - sum_i a_ji e_i for every row j."""
        if len(e) != self.ncols:
            raise ValueError(f"vector of length {len(e)}, expected {self.ncols}")
        return [bj - sum(a * x for a, x in zip(row, e)) for row, bj in zip(self.A, self.b)]

    def is_solution(self, e):
        return all(r == 0 for r in self.residuals(e))


@dataclass(frozen=True)
class NormalForm:
    """(A' | b') with A'[j][i] = 0 off the diagonal of the first R columns, rows >= R zero.

    ``perm[i]`` is the original variable sitting in column i of A'.
    ``ops`` records the operations, in order:
      ("swap_rows", i, j), ("swap_cols", i, j),
      ("combine", j, k, alpha, beta)  meaning  row_j <- alpha*row_j + beta*row_k, alpha != 0.
    A combine step is a scaling of row j followed by |beta| additions of
    (sign(beta) * row k), so every step is one of the permitted operations.
    """

    A: tuple
    b: tuple
    R: int
    perm: tuple
    ops: tuple
    ncols: int

    @property
    def pivots(self):
        return tuple(self.A[i][i] for i in range(self.R))

    def to_original(self, y):
        """Map a vector in normalized variable order back to the original order."""
        x = [0] * self.ncols
        for i, v in enumerate(y):
            x[self.perm[i]] = v
        return x

    def from_original(self, x):
        return [x[self.perm[i]] for i in range(self.ncols)]


def replay_ops(ops, A, b):
    """Apply recorded operations to (A | b); returns the transformed (A, b) as lists."""
    rows = [list(r) + [bj] for r, bj in zip(A, b)]
    for op in ops:
        kind = op[0]
        if kind == "swap_rows":
            _, i, j = op
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "swap_cols":
            _, i, j = op
            for r in rows:
                r[i], r[j] = r[j], r[i]
        elif kind == "combine":
            _, j, k, alpha, beta = op
            if alpha == 0:
                raise ValueError("row scaling by zero is not allowed")
            rows[j] = [alpha * x + beta * y for x, y in zip(rows[j], rows[k])]
        else:
            raise ValueError(f"unknown operation {kind!r}")
    return [r[:-1] for r in rows], [r[-1] for r in rows]


def normalize_system(sys: AugSystem) -> NormalForm:
    J, M = sys.nrows, sys.ncols
    rows = [list(r) + [bj] for r, bj in zip(sys.A, sys.b)]
    perm = list(range(M))
    ops = []
    R = 0
    for k in range(min(J, M)):
        best = None
        for j in range(k, J):
            for i in range(k, M):
                v = rows[j][i]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), j, i)
        if best is None:
            break
        _, j, i = best
        if j != k:
            rows[j], rows[k] = rows[k], rows[j]
            ops.append(("swap_rows", k, j))
        if i != k:
            for r in rows:
                r[i], r[k] = r[k], r[i]
            perm[i], perm[k] = perm[k], perm[i]
            ops.append(("swap_cols", k, i))
        piv = rows[k][k]
        for j in range(J):
            c = rows[j][k]
            if j == k or c == 0:
                continue
            g = _gcd(piv, c)
            alpha, beta = piv // g, -c // g
            rows[j] = [alpha * x + beta * y for x, y in zip(rows[j], rows[k])]
            ops.append(("combine", j, k, alpha, beta))
        R = k + 1
    return NormalForm(
        A=tuple(tuple(r[:-1]) for r in rows),
        b=tuple(r[-1] for r in rows),
        R=R,
        perm=tuple(perm),
        ops=tuple(ops),
        ncols=M,
    )


def factorial_levels(a0: int = 1):
    """The increasing sequence (a0 + m)! for m = 1, 2, ...; each m divides all late terms."""
    for m in count(1):
        yield factorial(a0 + m)


def compute_n0(nf: NormalForm, candidates=None, cutoff: int = 20) -> int:
    """Least element of ``candidates`` divisible by |product of pivots|."""
    target = abs(prod(nf.pivots))
    if candidates is None:
        candidates = factorial_levels()
    seen = []
    for idx, n in enumerate(candidates):
        if idx >= cutoff:
            break
        seen.append(n)
        if n % target == 0:
            return n
    raise CutoffExceeded(
        f"no element among the first {cutoff} candidates {seen[:3]}... is divisible by {target}"
    )


def lift_solution(sys: AugSystem, e, n: int, n0: int, nf: NormalForm | None = None):
    """Exact solution e' of A e' = b with (n / n0) | (e - e'), from e solving A e = b mod n.

    Requires n0 | n and prod(pivots) | n0. Pivot variables are solved one at
    a time; the remaining variables keep their values from e.
    """
    if nf is None:
        nf = normalize_system(sys)
    e = [int(x) for x in e]
    if len(e) != sys.ncols:
        raise ValueError(f"vector of length {len(e)}, expected {sys.ncols}")
    if n < 1 or n0 < 1 or n % n0:
        raise ValueError(f"need positive n0 dividing n, got n={n}, n0={n0}")
    piv_prod = abs(prod(nf.pivots))
    if n0 % piv_prod:
        raise ValueError(f"n0 = {n0} is not divisible by the pivot product {piv_prod}")
    bad = [j for j, r in enumerate(sys.residuals(e)) if r % n]
    if bad:
        raise LiftError(f"congruence mod {n} fails in rows {bad}")
    y = nf.from_original(e)
    R = nf.R
    for j in range(R, sys.nrows):
        if nf.b[j] != 0:
            raise LiftError(f"no exact solution: zero row {j} has right-hand side {nf.b[j]}")
    new = list(y)
    for j in range(R):
        row = nf.A[j]
        rest = nf.b[j] - sum(row[i] * y[i] for i in range(R, sys.ncols))
        # a'_jj | n and n | (rest - a'_jj * y_j), so the division is exact
        assert rest % row[j] == 0
        new[j] = rest // row[j]
    ep = nf.to_original(new)
    assert sys.is_solution(ep)
    assert all((x - z) % (n // n0) == 0 for x, z in zip(e, ep))
    return ep


# -- exact solving ------------------------------------------------------------


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf_rows(vectors, ncols):
    """Row Hermite normal form of the lattice spanned by ``vectors`` (zero rows dropped)."""
    rows = [list(v) for v in vectors]
    r = 0
    for col in range(ncols):
        if r >= len(rows):
            break
        for i in range(r + 1, len(rows)):
            a, b = rows[r][col], rows[i][col]
            if b == 0:
                continue
            g, s, t = xgcd(a, b)
            ra, rb = rows[r], rows[i]
            rows[r] = [s * x + t * y for x, y in zip(ra, rb)]
            rows[i] = [(-b // g) * x + (a // g) * y for x, y in zip(ra, rb)]
        piv = rows[r][col]
        if piv == 0:
            continue
        if piv < 0:
            rows[r] = [-x for x in rows[r]]
            piv = -piv
        for i in range(r):
            qt = rows[i][col] // piv
            if qt:
                rows[i] = [x - qt * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [tuple(v) for v in rows[:r]]


@dataclass(frozen=True, order=True)
class LatticeCoset:
    """particular + Z-span(basis), kept in a canonical form so equal cosets compare equal."""

    particular: tuple
    basis: tuple = field(default=())

    @classmethod
    def make(cls, particular, basis=()):
        particular = [int(x) for x in particular]
        n = len(particular)
        basis = hnf_rows(basis, n)
        for row in basis:
            c = next(i for i, x in enumerate(row) if x)
            qt = particular[c] // row[c]
            if qt:
                particular = [x - qt * y for x, y in zip(particular, row)]
        return cls(tuple(particular), tuple(basis))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v) -> bool:
        w = [x - y for x, y in zip(v, self.particular)]
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if w[c] % row[c]:
                return False
            qt = w[c] // row[c]
            w = [x - qt * y for x, y in zip(w, row)]
        return not any(w)

    def sample_points(self, coeffs=(-1, 0, 1)):
        """particular + sum t_k basis_k over the given coefficient values."""
        for ts in product(coeffs, repeat=len(self.basis)):
            yield tuple(
                p + sum(t * row[i] for t, row in zip(ts, self.basis))
                for i, p in enumerate(self.particular)
            )


@dataclass(frozen=True)
class Empty:
    """Certified emptiness: ``row`` of the column-echelon form cannot be satisfied."""

    reason: str
    row: int
    detail: str

    def __bool__(self):
        return False


def column_echelon(A, ncols):
    """(H, U, pivots) with H = A U, U unimodular, H in column echelon form.

    ``pivots`` lists (row, col) pairs; pivot entries are positive.
    """
    J = len(A)
    H = [list(r) for r in A]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(c, k, s, t, u, v):
        # (col_c, col_k) <- (s col_c + t col_k, u col_c + v col_k)
        for mat in (H, U):
            for r in mat:
                x, y = r[c], r[k]
                r[c], r[k] = s * x + t * y, u * x + v * y

    pivots = []
    c = 0
    for j in range(J):
        if c == ncols:
            break
        for k in range(c + 1, ncols):
            b = H[j][k]
            if b == 0:
                continue
            a = H[j][c]
            g, s, t = xgcd(a, b)
            colop(c, k, s, t, -b // g, a // g)
        if H[j][c] < 0:
            for mat in (H, U):
                for r in mat:
                    r[c] = -r[c]
        if H[j][c]:
            pivots.append((j, c))
            c += 1
    return H, U, pivots


def solve_exact(sys: AugSystem):
    """All integer solutions as a LatticeCoset, or an ``Empty`` witness."""
    M = sys.ncols
    H, U, pivots = column_echelon(sys.A, M)
    rank = len(pivots)
    piv_of_row = dict(pivots)
    y = [0] * M
    known = 0
    for j in range(sys.nrows):
        rest = sys.b[j] - sum(H[j][k] * y[k] for k in range(known))
        if j in piv_of_row:
            c = piv_of_row[j]
            if rest % H[j][c]:
                return Empty("pivot does not divide target", j, f"{H[j][c]} does not divide {rest}")
            y[c] = rest // H[j][c]
            known = c + 1
        elif rest != 0:
            return Empty("inconsistent zero row", j, f"0 = {rest}")
    particular = [sum(U[i][k] * y[k] for k in range(M)) for i in range(M)]
    basis = [[U[i][k] for i in range(M)] for k in range(rank, M)]
    coset = LatticeCoset.make(particular, basis)
    assert sys.is_solution(coset.particular)
    return coset
