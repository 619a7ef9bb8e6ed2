"""Matrices and canonical subspaces over the gf fields.

A subspace is held as its reduced-row-echelon basis plus the pivot columns,
which makes equality structural and the enumeration duplicate-free.  The
enumeration order is fixed: pivot-column patterns lexicographically, then an
odometer over the free entries (row-major positions, rightmost digit fastest,
field values ascending).  Chunked/parallel consumers rely on this order.

Over F_2 a row is also usable as a machine-word bitmask (bit j = coordinate
j); the *_bits helpers implement the hot complementarity loop on those.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, NamedTuple

from .exactnum import gaussian_binomial
from .gf import Field


class BudgetError(RuntimeError):
    """An enumeration was larger than the configured budget."""


class Subspace(NamedTuple):
    d: int
    basis: tuple  # e rows, each a tuple of d field values, in RREF
    pivots: tuple  # strictly increasing pivot column indices, len e

    @property
    def e(self) -> int:
        return len(self.basis)

    def bit_rows(self) -> tuple:
        """Rows as bitmasks; only meaningful over F_2."""
        return tuple(_row_to_bits(row) for row in self.basis)


def _row_to_bits(row) -> int:
    out = 0
    for j, v in enumerate(row):
        if v:
            out |= 1 << j
    return out


def bits_to_row(bits: int, d: int) -> tuple:
    return tuple((bits >> j) & 1 for j in range(d))


# -- reduction -------------------------------------------------------------


def rref(rows, fld: Field):
    """Reduced row echelon form.

    Returns (rref_rows, pivot_cols); the rank is len(pivot_cols).  Zero rows
    are dropped.
    """
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = fld.inv(work[r][c])
        if inv != 1:
            work[r] = [fld.mul(inv, v) for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                row_r = work[r]
                row_i = work[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = fld.sub(row_i[j], fld.mul(f, row_r[j]))
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(work[i]) for i in range(r)), tuple(pivots)


def rank(rows, fld: Field) -> int:
    return len(rref(rows, fld)[1])


def nullspace(rows, fld: Field, ncols: int) -> Subspace:
    """Canonical basis of {v : sum_j rows[i][j] v_j = 0 for all i}."""
    red, pivots = rref(rows, fld) if rows else ((), ())
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = fld.neg(red[i][f])
        basis.append(v)
    if not basis:
        return Subspace(ncols, (), ())
    red2, piv2 = rref(basis, fld)
    return Subspace(ncols, red2, piv2)


def subspace_from_rows(rows, fld: Field, d: int) -> Subspace:
    red, piv = rref(rows, fld)
    return Subspace(d, red, piv)


# -- enumeration -----------------------------------------------------------


def subspaces_for_pattern(d: int, pattern, fld: Field) -> Iterator[Subspace]:
    """All subspaces whose RREF pivot columns equal `pattern`, odometer order."""
    e = len(pattern)
    pivot_set = set(pattern)
    free_pos = [
        (i, j) for i in range(e) for j in range(pattern[i] + 1, d) if j not in pivot_set
    ]
    template = [[0] * d for i in range(e)]
    for i, c in enumerate(pattern):
        template[i][c] = 1
    if not free_pos:
        basis = tuple(tuple(r) for r in template)
        yield Subspace(d, basis, tuple(pattern))
        return
    pat = tuple(pattern)
    for values in product(fld.elements(), repeat=len(free_pos)):
        for (i, j), v in zip(free_pos, values):
            template[i][j] = v
        yield Subspace(d, tuple(tuple(r) for r in template), pat)


def count_subspaces(d: int, e: int, q: int) -> int:
    return gaussian_binomial(d, e, q)


def enumerate_subspaces(
    d: int, e: int, fld: Field, budget: int | None = None
) -> Iterator[Subspace]:
    """Every e-subspace of (F_q)^d exactly once, in the canonical order."""
    if not 0 <= e <= d:
        raise ValueError(f"need 0 <= e <= d, got e={e}, d={d}")
    if budget is not None:
        total = count_subspaces(d, e, fld.q)
        if total > budget:
            raise BudgetError(
                f"enumeration of {total} subspaces (d={d}, e={e}, q={fld.q}) "
                f"exceeds budget {budget}"
            )
    if e == 0:
        yield Subspace(d, (), ())
        return
    for pattern in combinations(range(d), e):
        yield from subspaces_for_pattern(d, pattern, fld)


def pivot_patterns(d: int, e: int) -> list:
    """The enumeration's chunk keys, in order."""
    if e == 0:
        return [()]
    return list(combinations(range(d), e))


# -- complementarity -------------------------------------------------------


def complementary(s1: Subspace, s2: Subspace, fld: Field) -> bool:
    """True iff s1 + s2 has dimension e1 + e2 (trivial intersection)."""
    if s1.d != s2.d:
        raise ValueError(f"ambient mismatch: {s1.d} != {s2.d}")
    if s1.e + s2.e > s1.d:
        return False
    if fld.q == 2:
        return complementary_bits(s1.bit_rows(), s2.bit_rows())
    # Seed elimination with s1, already in RREF.
    by_pivot = {p: list(row) for p, row in zip(s1.pivots, s1.basis)}
    d = s1.d
    for row in s2.basis:
        r = list(row)
        lead = None
        for j in range(d):
            if not r[j]:
                continue
            piv = by_pivot.get(j)
            if piv is None:
                lead = j
                break
            f = r[j]
            if f == 1:
                for t in range(j, d):
                    if piv[t]:
                        r[t] = fld.sub(r[t], piv[t])
            else:
                for t in range(j, d):
                    if piv[t]:
                        r[t] = fld.sub(r[t], fld.mul(f, piv[t]))
        if lead is None:
            return False
        inv = fld.inv(r[lead])
        if inv != 1:
            r = [fld.mul(inv, v) for v in r]
        by_pivot[lead] = r
    return True


def complementary_bits(rows1, rows2) -> bool:
    """GF(2) complementarity on bitmask rows.  Hot loop: no Subspace objects."""
    basis = {}
    for r in rows1:
        basis[r & -r] = r
    for r in rows2:
        while r:
            low = r & -r
            piv = basis.get(low)
            if piv is None:
                basis[low] = r
                break
            r ^= piv
        else:
            return False
    return True


def rank_bits(rows) -> int:
    """Rank over F_2 of bitmask rows."""
    basis = {}
    rk = 0
    for r in rows:
        while r:
            low = r & -r
            piv = basis.get(low)
            if piv is None:
                basis[low] = r
                rk += 1
                break
            r ^= piv
    return rk


def rref_bits(rows) -> tuple:
    """(rref bitmask rows, pivot columns) over F_2; zero rows dropped."""
    work = [r for r in rows if r]
    out = []
    pivots = []
    col = 0
    while work:
        col_rows = [i for i, r in enumerate(work) if (r >> col) & 1]
        if not col_rows:
            col += 1
            continue
        piv = work.pop(col_rows[0])
        work = [w for w in ((r ^ piv if (r >> col) & 1 else r) for r in work) if w]
        out = [r ^ piv if (r >> col) & 1 else r for r in out]
        out.append(piv)
        pivots.append(col)
        col += 1
    return tuple(out), tuple(pivots)


def nullspace_bits(rows, d: int) -> tuple:
    """Canonical RREF bitmask basis of {v : parity(v & row) = 0 for all rows}."""
    red, pivots = rref_bits(rows)
    pivot_set = set(pivots)
    free = [j for j in range(d) if j not in pivot_set]
    basis = []
    for f in free:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (red[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return rref_bits(basis)[0]
