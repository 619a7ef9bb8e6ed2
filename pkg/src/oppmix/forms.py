"""Classical forms on (F_q)^d: standard models, restriction, classification.

Quadratic forms are stored as upper-triangular coefficient grids and the
polar bilinear form is *derived* (gram = C + C^T); in characteristic 2 the
polar form does not determine Q, so the coefficients are primary.  The
standard models, fixed here once and for all:

  orthogonal +      Q = x0 x1 + x2 x3 + ...          (consecutive pairs)
  orthogonal -      hyperbolic pairs, then Q += x_{d-2}^2 + x_{d-2} x_{d-1}
                    + delta x_{d-1}^2 on the last two coordinates, delta the
                    least field element making that plane anisotropic
  symplectic        gram [[0, I], [-I, 0]]           (split pairing i <-> m+i)
  hermitian         identity gram over F_{q^2}, B(x,y) = sum x_i conj(y_i)

Non-degeneracy of a quadratic restriction uses the radical refinement: the
restriction is degenerate iff some nonzero vector of the polar radical is
singular.  For even dimension this is equivalent to a full-rank polar gram
in every characteristic, but the refinement keeps odd dimensions honest in
characteristic 2.

Type classification of a non-degenerate even restriction counts singular
projective points exhaustively (scaling preserves singularity), then matches
the count against the two closed-form totals.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .gf import Field, field
from .linalg import Subspace, nullspace, rank, rank_bits

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
HERMITIAN = "hermitian"
KINDS = (ORTHOGONAL, SYMPLECTIC, HERMITIAN)


class ClassicalForm(NamedTuple):
    kind: str
    d: int
    q: int  # the defining parameter: ambient field is F_q, or F_{q^2} if hermitian
    field: Field
    gram: tuple  # bilinear/sesquilinear gram; polar form in the orthogonal case
    quad: tuple | None  # upper-triangular Q coefficients, orthogonal only
    eps: int | None  # declared type of the orthogonal standard model
    delta: int | None  # anisotropic-plane coefficient actually used

    def bilinear(self, x, y) -> int:
        fld = self.field
        if self.kind == HERMITIAN:
            y = tuple(fld.conj(v) for v in y)
        acc = 0
        for i, xi in enumerate(x):
            if xi:
                acc = fld.add(acc, fld.mul(xi, fld.dot(self.gram[i], y)))
        return acc

    def quad_value(self, v) -> int:
        if self.kind != ORTHOGONAL:
            raise ValueError(f"no quadratic form on a {self.kind} space")
        fld = self.field
        acc = 0
        for i, vi in enumerate(v):
            if not vi:
                continue
            row = self.quad[i]
            for j in range(i, self.d):
                if row[j] and v[j]:
                    acc = fld.add(acc, fld.mul(row[j], fld.mul(vi, v[j])))
        return acc


class RestrictedForm(NamedTuple):
    kind: str
    e: int
    field: Field
    gram: tuple  # e x e restricted bilinear (polar, if orthogonal) gram
    qdiag: tuple | None  # Q(b_i) per basis row, orthogonal only

    def quad_value(self, v) -> int:
        fld = self.field
        acc = 0
        for i, vi in enumerate(v):
            if not vi:
                continue
            acc = fld.add(acc, fld.mul(self.qdiag[i], fld.mul(vi, vi)))
            row = self.gram[i]
            for j in range(i + 1, self.e):
                if row[j] and v[j]:
                    acc = fld.add(acc, fld.mul(row[j], fld.mul(vi, v[j])))
        return acc


def anisotropic_delta(fld: Field) -> int:
    """Least c such that x^2 + xy + c y^2 has no nonzero root."""
    for c in fld.elements():
        if all(
            fld.add(fld.mul(t, t), fld.add(t, c)) != 0 for t in fld.elements()
        ):
            # t^2 + t + c != 0 for every t covers y != 0; y = 0 forces x = 0
            return c
    raise AssertionError(f"no anisotropic plane over F_{fld.q}")


def _polar_from_quad(quad, fld: Field, d: int) -> tuple:
    # gram = C + C^T for the upper-triangular coefficient grid C
    gram = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            upper = quad[i][j] if j >= i else 0
            lower = quad[j][i] if i >= j else 0
            gram[i][j] = fld.add(upper, lower)
    return tuple(tuple(r) for r in gram)


def standard_form(kind: str, d: int, q: int, eps: int | None = None) -> ClassicalForm:
    """The fixed standard model; see the module docstring for conventions."""
    if kind == ORTHOGONAL:
        if d % 2 or d < 2:
            raise ValueError(f"orthogonal model needs even d >= 2, got {d}")
        if eps not in (1, -1):
            raise ValueError("orthogonal model needs eps = +1 or -1")
        fld = field(q)
        quad = [[0] * d for _ in range(d)]
        m = d // 2
        pairs = m if eps == 1 else m - 1
        for i in range(pairs):
            quad[2 * i][2 * i + 1] = 1
        delta = None
        if eps == -1:
            delta = anisotropic_delta(fld)
            quad[d - 2][d - 2] = 1
            quad[d - 2][d - 1] = 1
            quad[d - 1][d - 1] = delta
        quad = tuple(tuple(r) for r in quad)
        gram = _polar_from_quad(quad, fld, d)
        form = ClassicalForm(kind, d, q, fld, gram, quad, eps, delta)
        assert rank(gram, fld) == d, "standard orthogonal polar form must be non-degenerate"
        return form
    if kind == SYMPLECTIC:
        if d % 2 or d < 2:
            raise ValueError(f"symplectic model needs even d >= 2, got {d}")
        fld = field(q)
        m = d // 2
        gram = [[0] * d for _ in range(d)]
        for i in range(m):
            gram[i][m + i] = 1
            gram[m + i][i] = fld.neg(1)
        gram = tuple(tuple(r) for r in gram)
        return ClassicalForm(kind, d, q, fld, gram, None, None, None)
    if kind == HERMITIAN:
        if d < 1:
            raise ValueError(f"hermitian model needs d >= 1, got {d}")
        fld = field(q * q)
        gram = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        return ClassicalForm(kind, d, q, fld, gram, None, None, None)
    raise ValueError(f"unknown kind {kind!r}")


def restrict(form: ClassicalForm, s: Subspace) -> RestrictedForm:
    """Gram (polar gram, if orthogonal) and Q values on the basis of s."""
    if s.d != form.d:
        raise ValueError(f"ambient mismatch: subspace in dim {s.d}, form on dim {form.d}")
    fld = form.field
    e = s.e
    if form.kind == HERMITIAN:
        conj_rows = [tuple(fld.conj(v) for v in row) for row in s.basis]
        gram_cols = [
            tuple(fld.dot(form.gram[k], cr) for k in range(form.d)) for cr in conj_rows
        ]
        gram = tuple(
            tuple(fld.dot(s.basis[i], gram_cols[j]) for j in range(e)) for i in range(e)
        )
        return RestrictedForm(form.kind, e, fld, gram, None)
    gram_cols = [
        tuple(fld.dot(form.gram[k], row) for k in range(form.d)) for row in s.basis
    ]
    gram = tuple(
        tuple(fld.dot(s.basis[i], gram_cols[j]) for j in range(e)) for i in range(e)
    )
    qdiag = None
    if form.kind == ORTHOGONAL:
        qdiag = tuple(form.quad_value(row) for row in s.basis)
    return RestrictedForm(form.kind, e, fld, gram, qdiag)


def is_nondegenerate(r: RestrictedForm) -> bool:
    if r.e == 0:
        return True
    if r.kind != ORTHOGONAL:
        return rank(r.gram, r.field) == r.e
    radical = nullspace(r.gram, r.field, r.e)
    if radical.e == 0:
        return True
    # Degenerate iff the radical contains a nonzero singular vector; scaling
    # preserves singularity, so projective representatives suffice.
    fld = r.field
    for rep in _projective_reps(radical.e, fld.q):
        v = _combine(rep, radical.basis, fld)
        if r.quad_value(v) == 0:
            return False
    return True


def _combine(coeffs, rows, fld: Field):
    e = len(rows[0])
    out = [0] * e
    for c, row in zip(coeffs, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] = fld.add(out[j], fld.mul(c, x))
    return tuple(out)


@lru_cache(maxsize=None)
def _projective_reps(e: int, q: int) -> tuple:
    """One representative per 1-space: first nonzero coordinate scaled to 1."""
    reps = []
    for t in range(e):
        for tail in product(range(q), repeat=e - 1 - t):
            reps.append((0,) * t + (1,) + tail)
    return tuple(reps)


def singular_point_counts(m: int, q: int) -> tuple:
    """(plus, minus) totals of nonzero singular vectors in dimension 2m."""
    return (q**m - 1) * (q ** (m - 1) + 1), (q**m + 1) * (q ** (m - 1) - 1)


def singular_count(r: RestrictedForm) -> int:
    """Number of nonzero singular vectors of the restricted quadratic form."""
    if r.kind != ORTHOGONAL:
        raise ValueError("singular_count is for quadratic restrictions")
    q = r.field.q
    hits = sum(1 for rep in _projective_reps(r.e, q) if r.quad_value(rep) == 0)
    return hits * (q - 1)


def orthogonal_type(r: RestrictedForm) -> int:
    """+1 or -1 from the singular-vector count of a non-degenerate restriction."""
    if r.e % 2:
        raise ValueError(f"type is defined for even dimensions, got {r.e}")
    n = singular_count(r)
    plus, minus = singular_point_counts(r.e // 2, r.field.q)
    if n == plus:
        return 1
    if n == minus:
        return -1
    raise ArithmeticError(
        f"singular count {n} matches neither type (dim {r.e}, q {r.field.q}); "
        "a degenerate restriction slipped through"
    )


def perp(form: ClassicalForm, s: Subspace) -> Subspace:
    """{v : B(v, b) = 0 for every basis vector b of s}, as a canonical subspace."""
    fld = form.field
    if s.e == 0:
        return nullspace((), fld, form.d)
    if form.kind == HERMITIAN:
        vecs = [tuple(fld.conj(v) for v in row) for row in s.basis]
    else:
        vecs = list(s.basis)
    # rows[i][j] = B(e_j, b_i); kernel of this matrix is the perp
    rows = [tuple(fld.dot(form.gram[j], w) for j in range(form.d)) for w in vecs]
    return nullspace(rows, fld, form.d)


# -- GF(2) fast paths --------------------------------------------------------
#
# The heavy oracle cases are over F_2 with d <= 8; there every vector is a
# machine word and Q becomes one table lookup.


@lru_cache(maxsize=None)
def quad_table_gf2(form: ClassicalForm) -> tuple:
    """Q on all 2^d bitmask vectors; requires q = 2 and orthogonal kind."""
    if form.kind != ORTHOGONAL or form.q != 2:
        raise ValueError("quad table needs an orthogonal form over F_2")
    d = form.d
    quad = form.quad
    table = [0] * (1 << d)
    for mask in range(1, 1 << d):
        acc = 0
        mi = mask
        while mi:
            i = (mi & -mi).bit_length() - 1
            mi &= mi - 1
            row = quad[i]
            mj = mask >> i
            jj = i
            while mj:
                if mj & 1 and row[jj]:
                    acc ^= row[jj]
                mj >>= 1
                jj += 1
        table[mask] = acc
    return tuple(table)


@lru_cache(maxsize=None)
def bilinear_masks_gf2(form: ClassicalForm) -> tuple:
    """mask m(y) per vector y with B(x, y) = parity(x & m(y)); q = 2 only."""
    if form.q != 2 or form.kind == HERMITIAN:
        raise ValueError("bilinear masks need a bilinear form over F_2")
    d = form.d
    col_masks = [0] * d
    for t in range(d):
        for s_ in range(d):
            if form.gram[t][s_]:
                col_masks[s_] |= 1 << t
    table = [0] * (1 << d)
    for y in range(1, 1 << d):
        acc = 0
        my = y
        while my:
            acc ^= col_masks[(my & -my).bit_length() - 1]
            my &= my - 1
        table[y] = acc
    return tuple(table)


def classify_orthogonal_gf2(qt: tuple, rows: tuple) -> int | None:
    """None if the spanned restriction is degenerate, else its type +-1.

    `rows` are bitmask basis rows (even count), `qt` the ambient quad table.
    """
    e = len(rows)
    qvals = [qt[r] for r in rows]
    gram_rows = []
    for i, ri in enumerate(rows):
        g = 0
        qi = qvals[i]
        for j, rj in enumerate(rows):
            if j != i and (qt[ri ^ rj] ^ qi ^ qvals[j]):
                g |= 1 << j
        gram_rows.append(g)
    if rank_bits(gram_rows) != e:
        return None
    n = 1 << e
    span = [0] * n
    singular = 0
    for idx in range(1, n):
        low = idx & -idx
        v = span[idx ^ low] ^ rows[low.bit_length() - 1]
        span[idx] = v
        if not qt[v]:
            singular += 1
    plus, minus = singular_point_counts(e // 2, 2)
    if singular == plus:
        return 1
    if singular == minus:
        return -1
    raise ArithmeticError(f"bad singular count {singular} for e={e}, q=2")


def symplectic_nondeg_gf2(bil: tuple, rows: tuple) -> bool:
    """Full-rank test of the restricted alternating gram, on bitmask rows."""
    gram_rows = []
    for ri in rows:
        g = 0
        for j, rj in enumerate(rows):
            if (ri & bil[rj]).bit_count() & 1:
                g |= 1 << j
        gram_rows.append(g)
    return rank_bits(gram_rows) == len(rows)
