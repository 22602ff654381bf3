"""Zero-sum partitions of the terms of f = sum c_i T^e_i.

A partition of the index set is admissible when every block has coefficient
sum zero while no nonempty proper sub-block does. ``residue_partition``
looks for an admissible partition whose blocks are constant modulo ab; one
exists exactly when g_{a,b} divides f (for b larger than the number of
terms).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .ffpoly import FieldSpec, LaurentPoly, laurent_divides, make_gab

DEFAULT_TERM_CAP = 10


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    index: int
    coeff: int
    exp: int


def make_terms(field: FieldSpec, pairs, start: int = 1):
    """Terms numbered from ``start`` out of (coefficient, exponent) pairs; zero coefficients dropped."""
    out = []
    for i, (c, e) in enumerate(pairs, start):
        c = c % field.p if field.is_prime_field else field.check(c)
        if c:
            out.append(Term(i, c, e))
    return out


def terms_of(poly: LaurentPoly, start: int = 1):
    return [Term(i, c, e) for i, (e, c) in enumerate(poly.terms(), start)]


def merge_collisions(field: FieldSpec, terms):
    """Combine terms sharing an exponent; the merged term keeps the least index."""
    if len({t.exp for t in terms}) == len(terms):
        return sorted(terms, key=lambda t: t.index)
    by_exp = {}
    for t in sorted(terms, key=lambda t: t.index):
        if t.exp in by_exp:
            old = by_exp[t.exp]
            by_exp[t.exp] = Term(old.index, field.add(old.coeff, t.coeff), t.exp)
        else:
            by_exp[t.exp] = t
    return sorted((t for t in by_exp.values() if t.coeff), key=lambda t: t.index)


def _subset_sum(field, coeffs):
    acc = 0
    for c in coeffs:
        acc = field.add(acc, c)
    return acc


def is_minimal_zero_sum(field: FieldSpec, coeffs) -> bool:
    """Sum is zero and no nonempty proper subset sums to zero."""
    coeffs = list(coeffs)
    if not coeffs or _subset_sum(field, coeffs) != 0:
        return False
    n = len(coeffs)
    for k in range(1, n):
        for sub in combinations(coeffs, k):
            if _subset_sum(field, sub) == 0:
                return False
    return True


@lru_cache(maxsize=4096)
def _minimal_zero_positions(field: FieldSpec, coeffs):
    # depends only on the coefficient sequence, which repeats across many exponent choices
    n = len(coeffs)
    sums = [0] * (1 << n)
    zero = set()
    # subset sums by bitmask; minimal = zero sum and no proper zero-sum submask
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = field.add(sums[mask ^ low], coeffs[low.bit_length() - 1])
    for mask in range(1, 1 << n):
        if sums[mask]:
            continue
        sub = (mask - 1) & mask
        while sub and sub not in zero:
            sub = (sub - 1) & mask
        if not sub:
            zero.add(mask)
    return tuple(tuple(i for i in range(n) if mask >> i & 1) for mask in zero)


def _blocks_of(field, terms):
    """(block, member terms) pairs for terms sorted by index."""
    return [(tuple(terms[i].index for i in pos), [terms[i] for i in pos])
            for pos in _minimal_zero_positions(field, tuple(t.coeff for t in terms))]


def minimal_zero_sum_blocks(field: FieldSpec, terms):
    """All blocks (sorted index tuples) whose coefficients form a minimal zero-sum set."""
    terms = sorted(terms, key=lambda t: t.index)
    return sorted(blk for blk, _ in _blocks_of(field, terms))


def _exact_covers(indices, blocks):
    """Partitions of ``indices`` into ``blocks``, lexicographic, each block led by its least index."""
    by_first = {}
    for blk in blocks:
        by_first.setdefault(blk[0], []).append(blk)

    def rec(remaining):
        if not remaining:
            yield ()
            return
        first = min(remaining)
        for blk in by_first.get(first, ()):
            if remaining.issuperset(blk):
                for rest in rec(remaining.difference(blk)):
                    yield (blk,) + rest

    yield from rec(frozenset(indices))


def _check_cap(terms, cap):
    if len(terms) > cap:
        raise PartitionError(f"{len(terms)} terms exceed the enumeration cap {cap}")
    idx = [t.index for t in terms]
    if len(set(idx)) != len(idx):
        raise PartitionError("term indices must be distinct")


def iter_zero_sum_partitions(field: FieldSpec, terms, block_filter=None, cap=DEFAULT_TERM_CAP):
    _check_cap(terms, cap)
    terms = sorted(terms, key=lambda t: t.index)
    blocks = [blk for blk, members in _blocks_of(field, terms)
              if block_filter is None or block_filter(members)]
    return _exact_covers([t.index for t in terms], sorted(blocks))


def enumerate_zero_sum_partitions(field: FieldSpec, terms, cap=DEFAULT_TERM_CAP):
    """The collection of admissible partitions, as a list of tuples of sorted index tuples."""
    return list(iter_zero_sum_partitions(field, terms, cap=cap))


def is_admissible(field: FieldSpec, terms, partition) -> bool:
    """Independent check of both block conditions and of the partition property."""
    coeff = {t.index: t.coeff for t in terms}
    seen = [i for blk in partition for i in blk]
    if sorted(seen) != sorted(coeff) or len(set(seen)) != len(seen):
        return False
    return all(is_minimal_zero_sum(field, [coeff[i] for i in blk]) for blk in partition)


def _homogeneous(modulus):
    def ok(block_terms):
        return len({t.exp % modulus for t in block_terms}) == 1

    return ok


def residue_partitions(field: FieldSpec, terms, modulus: int, cap=DEFAULT_TERM_CAP):
    """Admissible partitions whose blocks are constant modulo ``modulus``, lexicographic order."""
    return iter_zero_sum_partitions(field, terms, _homogeneous(modulus), cap)


def _check_ab(field, terms, a, b):
    if a < 1 or b < 1:
        raise PartitionError("a and b must be positive")
    if b % field.p == 0:
        raise PartitionError(f"b = {b} is divisible by the characteristic")
    if b <= len(terms):
        raise PartitionError(f"b = {b} must exceed the number of terms {len(terms)}")


def residue_partition(field: FieldSpec, terms, a: int, b: int, cap=DEFAULT_TERM_CAP):
    """Lexicographically first admissible partition refining the classes of e_i mod ab, or None.

    Terms with equal exponents are merged first.
    """
    terms = merge_collisions(field, terms)
    _check_ab(field, terms, a, b)
    return next(residue_partitions(field, terms, a * b, cap), None)


def partition_implies_divisibility(field: FieldSpec, terms, partition, a: int, b: int) -> bool:
    """Given an admissible partition with blocks constant mod ab, confirm g_{a,b} | f.

    Such a partition makes f vanish modulo T^{ab} - 1; the return value is the
    divisibility itself, recomputed by exact division.
    """
    ab = a * b
    if b % field.p == 0:
        raise PartitionError(f"b = {b} is divisible by the characteristic")
    if not is_admissible(field, terms, partition):
        raise PartitionError("not an admissible zero-sum partition of the terms")
    exp = {t.index: t.exp for t in terms}
    for blk in partition:
        if len({exp[i] % ab for i in blk}) != 1:
            raise PartitionError(f"block {blk} is not constant modulo {ab}")
    f = LaurentPoly.from_terms(field, ((t.exp, t.coeff) for t in terms))
    assert f.fold(ab).is_zero()
    return laurent_divides(make_gab(field, a, b), f, period=ab)
