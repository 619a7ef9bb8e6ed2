"""Brute-force ground truth: enumerate, count, and spectrally check.

Everything here is exact.  Y-sets are enumerated in the canonical subspace
order and hard-checked against the closed-form counts at construction time;
complementary-pair counting comes in two flavours (all pairs, and the
single-orbit shortcut that fixes one subspace), which must agree wherever
both run.

The seven orthogonal exception triples (q, m2, m1) from the theorem sweep
are first-class data here; they are exactly the parameter points where the
closed-form bound dips under the threshold and the count has to be done for
real.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import exactnum, forms, linalg, spectrum
from .forms import ClassicalForm
from .gf import field
from .linalg import Subspace

# (q, m2, m1), verbatim from the orthogonal sweep's exclusion list.
ORTHOGONAL_EXCEPTIONS = (
    (2, 1, 1),
    (3, 1, 1),
    (4, 1, 1),
    (5, 1, 1),
    (2, 1, 2),
    (2, 1, 3),
    (2, 2, 2),
)

DEFAULT_BIADJACENCY_CAP = 5000
DEFAULT_ENUM_BUDGET = 1_500_000


@dataclass(frozen=True)
class YSet:
    form: ClassicalForm
    e: int
    sigma: int | None  # orthogonal subspace type; None for symplectic/hermitian
    members: tuple

    @property
    def count(self) -> int:
        return len(self.members)

    def describe(self) -> dict:
        out = {"kind": self.form.kind, "q": self.form.q, "d": self.form.d, "e": self.e}
        if self.form.eps is not None:
            out["eps"] = exactnum.sign_char(self.form.eps)
        if self.sigma is not None:
            out["sigma"] = exactnum.sign_char(self.sigma)
        return out


@dataclass(frozen=True)
class CountReport:
    case: dict
    y1_count: int
    y2_count: int
    pairs: int
    proportion: Fraction
    method: str
    seconds: float
    threshold: Fraction | None = None
    passed: bool | None = None
    seed: int | None = None


def _classify_member(form: ClassicalForm, s: Subspace, qt, bil):
    """sigma (+-1) for orthogonal, True for plain non-degenerate, None if degenerate."""
    if form.kind == forms.ORTHOGONAL:
        if qt is not None:
            return forms.classify_orthogonal_gf2(qt, s.bit_rows())
        r = forms.restrict(form, s)
        if not forms.is_nondegenerate(r):
            return None
        return forms.orthogonal_type(r)
    if form.kind == forms.SYMPLECTIC and bil is not None:
        return True if forms.symplectic_nondeg_gf2(bil, s.bit_rows()) else None
    r = forms.restrict(form, s)
    return True if forms.is_nondegenerate(r) else None


def _classify_patterns(form: ClassicalForm, e: int, patterns) -> tuple:
    qt = bil = None
    if form.q == 2 and form.kind == forms.ORTHOGONAL:
        qt = forms.quad_table_gf2(form)
    elif form.q == 2 and form.kind == forms.SYMPLECTIC:
        bil = forms.bilinear_masks_gf2(form)
    buckets: dict = {}
    degenerate = 0
    for pattern in patterns:
        for s in linalg.subspaces_for_pattern(form.d, pattern, form.field):
            c = _classify_member(form, s, qt, bil)
            if c is None:
                degenerate += 1
            else:
                buckets.setdefault(c, []).append(s)
    return buckets, degenerate


def _classify_patterns_job(args):
    kind, d, q, eps, e, patterns = args
    form = forms.standard_form(kind, d, q, eps)
    buckets, degenerate = _classify_patterns(form, e, patterns)
    return buckets, degenerate


_partition_cache: dict = {}


def classify_partition(form: ClassicalForm, e: int, budget: int | None = None, workers: int = 1):
    """Split all e-subspaces into non-degenerate buckets plus a degenerate count.

    Returns (buckets, degenerate) where buckets maps sigma (or True) to the
    member list in enumeration order.  Cached per (form, e).
    """
    if form.kind == forms.ORTHOGONAL and e % 2:
        raise ValueError("orthogonal type classification needs even dimensions")
    key = (form, e)
    hit = _partition_cache.get(key)
    if hit is not None:
        return hit
    total = linalg.count_subspaces(form.d, e, form.field.q)
    if total > (budget or DEFAULT_ENUM_BUDGET):
        raise linalg.BudgetError(
            f"{total} {e}-subspaces of dim {form.d} over F_{form.field.q} "
            f"exceed budget {budget or DEFAULT_ENUM_BUDGET}"
        )
    patterns = linalg.pivot_patterns(form.d, e)
    if workers > 1 and total > 5000:
        chunks = [patterns[i::workers] for i in range(workers)]
        jobs = [(form.kind, form.d, form.q, form.eps, e, c) for c in chunks if c]
        buckets: dict = {}
        degenerate = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_classify_patterns_job, jobs))
        # chunks are round-robin by pattern; reassemble in pattern order
        merged: dict = {}
        for b, deg in partials:
            degenerate += deg
            for sig, mem in b.items():
                merged.setdefault(sig, []).append(mem)
        for sig, lists in merged.items():
            allmem = [m for mem in lists for m in mem]
            allmem.sort(key=lambda s: (s.pivots, s.basis))
            buckets[sig] = allmem
    else:
        buckets, degenerate = _classify_patterns(form, e, patterns)
    result = ({k: tuple(v) for k, v in buckets.items()}, degenerate)
    _partition_cache[key] = result
    return result


def build_yset(
    form: ClassicalForm,
    e: int,
    sigma: int | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> YSet:
    """Enumerate the non-degenerate e-subspaces (of type sigma, if orthogonal).

    The enumerated count must equal the orbit-stabilizer closed form; a
    mismatch raises instead of returning bad data.
    """
    if form.kind == forms.ORTHOGONAL and sigma not in (1, -1):
        raise ValueError("orthogonal Y-sets need sigma = +1 or -1")
    if form.kind != forms.ORTHOGONAL and sigma is not None:
        raise ValueError(f"sigma applies only to orthogonal spaces, not {form.kind}")
    buckets, _ = classify_partition(form, e, budget, workers)
    key = sigma if form.kind == forms.ORTHOGONAL else True
    members = buckets.get(key, ())
    expected = exactnum.count_nondegenerate(
        form.kind, e, form.d - e, form.q, eps=form.eps, sigma1=sigma
    )
    if len(members) != expected:
        raise ArithmeticError(
            f"enumerated {len(members)} non-degenerate {e}-spaces, closed form says "
            f"{expected} ({form.kind}, q={form.q}, d={form.d}, sigma={sigma})"
        )
    return YSet(form, e, sigma, members)


def degenerate_count(form: ClassicalForm, e: int, budget: int | None = None) -> int:
    return classify_partition(form, e, budget)[1]


# -- pair counting -----------------------------------------------------------


def _count_pairs_gf2(rows1, rows2) -> int:
    comp = linalg.complementary_bits
    return sum(1 for r1 in rows1 for r2 in rows2 if comp(r1, r2))


def _count_pairs_job(args):
    rows1, rows2 = args
    return _count_pairs_gf2(rows1, rows2)


def count_complementary(
    y1: YSet, y2: YSet, threshold: Fraction | None = None, workers: int = 1
) -> CountReport:
    """Exact count over all of Y1 x Y2."""
    if y1.form != y2.form:
        raise ValueError("Y-sets live on different spaces")
    t0 = time.perf_counter()
    fld = y1.form.field
    n1, n2 = y1.count, y2.count
    if fld.q == 2:
        rows1 = [s.bit_rows() for s in y1.members]
        rows2 = [s.bit_rows() for s in y2.members]
        if workers > 1 and n1 * n2 > 250_000:
            chunks = [rows1[i::workers] for i in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                pairs = sum(pool.map(_count_pairs_job, [(c, rows2) for c in chunks if c]))
        else:
            pairs = _count_pairs_gf2(rows1, rows2)
    else:
        comp = linalg.complementary
        pairs = sum(1 for s1 in y1.members for s2 in y2.members if comp(s1, s2, fld))
    proportion = Fraction(pairs, n1 * n2)
    return _finish_report(y1, y2, pairs, proportion, "full-pairs", t0, threshold)


def count_complementary_transitive(
    y1: YSet, y2: YSet, threshold: Fraction | None = None
) -> CountReport:
    """Single-orbit shortcut: fix the first member of Y1 and scan Y2.

    Valid because the isometry group is transitive on Y1 and preserves both
    Y2 and complementarity, so the complementary count per S1 is constant.
    """
    if y1.form != y2.form:
        raise ValueError("Y-sets live on different spaces")
    t0 = time.perf_counter()
    fld = y1.form.field
    s1 = y1.members[0]
    if fld.q == 2:
        r1 = s1.bit_rows()
        comp = linalg.complementary_bits
        hits = sum(1 for s2 in y2.members if comp(r1, s2.bit_rows()))
    else:
        hits = sum(1 for s2 in y2.members if linalg.complementary(s1, s2, fld))
    pairs = hits * y1.count
    proportion = Fraction(hits, y2.count)
    return _finish_report(y1, y2, pairs, proportion, "transitivity-fast-path", t0, threshold)


def _finish_report(y1, y2, pairs, proportion, method, t0, threshold) -> CountReport:
    form = y1.form
    case = {"kind": form.kind, "q": form.q, "d": form.d, "e1": y1.e, "e2": y2.e}
    if form.eps is not None:
        case["eps"] = exactnum.sign_char(form.eps)
    if y1.sigma is not None:
        case["sigma1"] = exactnum.sign_char(y1.sigma)
    if y2.sigma is not None:
        case["sigma2"] = exactnum.sign_char(y2.sigma)
    passed = None if threshold is None else proportion >= threshold
    return CountReport(
        case=case,
        y1_count=y1.count,
        y2_count=y2.count,
        pairs=pairs,
        proportion=proportion,
        method=method,
        seconds=time.perf_counter() - t0,
        threshold=threshold,
        passed=passed,
    )


def orthogonal_exception_report(
    q: int,
    m1: int,
    m2: int,
    eps: int,
    sigma1: int,
    sigma2: int,
    full_pairs: bool = False,
    workers: int = 1,
) -> CountReport:
    """Exact proportion for one orthogonal exception case, vs 1 - 3/(2q)."""
    e1, e2 = 2 * m1, 2 * m2
    form = forms.standard_form(forms.ORTHOGONAL, e1 + e2, q, eps)
    y1 = build_yset(form, e1, sigma1, workers=workers)
    y2 = build_yset(form, e2, sigma2, workers=workers)
    threshold = 1 - Fraction(3, 2 * q)
    if full_pairs:
        return count_complementary(y1, y2, threshold, workers=workers)
    return count_complementary_transitive(y1, y2, threshold)


# -- biadjacency and spectral checks ------------------------------------------


@dataclass(frozen=True)
class Biadjacency:
    e1: int
    e2: int
    q: int
    rows: tuple  # tuple of row tuples, 0/1 ints; rows index e1-spaces

    @property
    def n1(self) -> int:
        return len(self.rows)

    @property
    def n2(self) -> int:
        return len(self.rows[0])

    def row_sums(self):
        return [sum(r) for r in self.rows]

    def col_sums(self):
        return [sum(col) for col in zip(*self.rows)]


_biadjacency_cache: dict = {}


def build_biadjacency(e1: int, e2: int, q: int, cap: int = DEFAULT_BIADJACENCY_CAP) -> Biadjacency:
    """0/1 matrix of the complementarity relation in enumeration order."""
    key = (e1, e2, q)
    hit = _biadjacency_cache.get(key)
    if hit is not None:
        return hit
    d = e1 + e2
    n1 = linalg.count_subspaces(d, e1, q)
    if n1 > cap:
        raise linalg.BudgetError(f"[{d} choose {e1}]_{q} = {n1} exceeds the cap {cap}")
    fld = field(q)
    x1 = list(linalg.enumerate_subspaces(d, e1, fld))
    x2 = list(linalg.enumerate_subspaces(d, e2, fld)) if e1 != e2 else x1
    if fld.q == 2:
        b1 = [s.bit_rows() for s in x1]
        b2 = [s.bit_rows() for s in x2]
        comp = linalg.complementary_bits
        rows = tuple(
            tuple(1 if comp(r1, r2) else 0 for r2 in b2) for r1 in b1
        )
    else:
        rows = tuple(
            tuple(1 if linalg.complementary(s1, s2, fld) else 0 for s2 in x2) for s1 in x1
        )
    out = Biadjacency(e1, e2, q, rows)
    _biadjacency_cache[key] = out
    return out


def _mat_mul(a, b) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def annihilator_check(e1: int, e2: int, q: int, cap: int = DEFAULT_BIADJACENCY_CAP) -> bool:
    """Exact check that prod_j (N N^T - q^(2 m_j) I) = 0.

    The m_j are the closed-form eigenvalue exponents; annihilation of the
    integer matrix N N^T by this polynomial is what "these are exactly the
    distinct eigenvalues" buys us, and it is verified in integer arithmetic.
    """
    bi = build_biadjacency(e1, e2, q, cap)
    spec = spectrum.eigen_exponents(max(e1, e2), min(e1, e2))
    m = _mat_mul(bi.rows, list(zip(*bi.rows)))
    n = len(m)
    prod = None
    for j in range(len(spec.exponents)):
        lam2 = spec.eigenvalue_squared(q, j)
        factor = [[m[r][c] - (lam2 if r == c else 0) for c in range(n)] for r in range(n)]
        prod = factor if prod is None else _mat_mul(prod, factor)
    return all(v == 0 for row in prod for v in row)


# -- expander mixing lemma, exactly ------------------------------------------


@dataclass(frozen=True)
class MixingReport:
    e1: int
    e2: int
    q: int
    alpha1: Fraction
    alpha2: Fraction
    edges: int
    holds: bool
    tight: bool
    charpoly_ok: bool | None  # None when some alpha is 0 or 1
    seed: int | None = None


def _charpoly(mat) -> list:
    """Characteristic polynomial coefficients [1, c1, ..., cn] (Faddeev-LeVerrier)."""
    n = len(mat)
    coeffs = [Fraction(1)]
    mk = [[Fraction(v) for v in row] for row in mat]
    a = [[Fraction(v) for v in row] for row in mat]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            mk[i][i] += ck
        mk = _mat_mul(a, mk)
    return coeffs


def mixing_check(
    e1: int,
    e2: int,
    q: int,
    idx1,
    idx2,
    cap: int = DEFAULT_BIADJACENCY_CAP,
    seed: int | None = None,
) -> MixingReport:
    """Exact two-sided check of the mixing inequality for one subset pair.

    The inequality is squared to clear the radical (both sides are
    non-negative), and when both densities are interior the 4x4 quotient
    matrix's characteristic polynomial is compared against
    (t^2 - k^2)(t^2 - gamma^2/delta) coefficient by coefficient.
    """
    bi = build_biadjacency(e1, e2, q, cap)
    n1, n2 = bi.n1, bi.n2
    set1 = sorted(set(idx1))
    set2 = sorted(set(idx2))
    k = q ** (e1 * e2)
    d = e1 + e2
    edges = sum(bi.rows[i][j] for i in set1 for j in set2)
    big_d = n1 * k
    a1 = Fraction(len(set1), n1)
    a2 = Fraction(len(set2), n2)
    lhs = Fraction(edges, big_d) - a1 * a2
    rhs_sq = Fraction(1, q**d) * a1 * a2 * (1 - a1) * (1 - a2)
    holds = lhs * lhs <= rhs_sq
    tight = lhs * lhs == rhs_sq
    charpoly_ok = None
    if 0 < a1 < 1 and 0 < a2 < 1:
        e_y1_x2 = k * len(set1)
        e_x1_y2 = k * len(set2)
        b = [
            [0, 0, Fraction(edges, len(set1)), Fraction(e_y1_x2 - edges, len(set1))],
            [
                0,
                0,
                Fraction(e_x1_y2 - edges, n1 - len(set1)),
                Fraction(big_d - e_y1_x2 - e_x1_y2 + edges, n1 - len(set1)),
            ],
            [Fraction(edges, len(set2)), Fraction(e_x1_y2 - edges, len(set2)), 0, 0],
            [
                Fraction(e_y1_x2 - edges, n2 - len(set2)),
                Fraction(big_d - e_y1_x2 - e_x1_y2 + edges, n2 - len(set2)),
                0,
                0,
            ],
        ]
        gamma = edges - big_d * a1 * a2
        delta = n1 * n2 * a1 * a2 * (1 - a1) * (1 - a2)
        c = gamma * gamma / delta
        expected = [Fraction(1), Fraction(0), -(k * k + c), Fraction(0), k * k * c]
        charpoly_ok = _charpoly(b) == expected
    return MixingReport(e1, e2, q, a1, a2, edges, holds, tight, charpoly_ok, seed)


def random_subset_pairs(e1: int, e2: int, q: int, trials: int, seed: int):
    """Deterministic pseudo-random nonempty-subset pairs for the mixing suite."""
    bi = build_biadjacency(e1, e2, q)
    rng = random.Random(seed)
    for _ in range(trials):
        k1 = rng.randint(1, bi.n1)
        k2 = rng.randint(1, bi.n2)
        yield rng.sample(range(bi.n1), k1), rng.sample(range(bi.n2), k2)


def mixing_suite(e1: int, e2: int, q: int, trials: int = 100, seed: int = 0):
    """Boundary cases, neighborhood cases, and seeded random pairs."""
    bi = build_biadjacency(e1, e2, q)
    full1 = list(range(bi.n1))
    full2 = list(range(bi.n2))
    cases = [
        (full1, full2),
        (full1, [0]),
        ([0], full2),
        ([0], [0]),
        ([], full2),
        (full1, []),
        # neighborhoods of a fixed vertex on each side
        ([i for i in full1 if bi.rows[i][0]], full2),
        (full1, [j for j in full2 if bi.rows[0][j]]),
        (
            [i for i in full1 if bi.rows[i][0]],
            [j for j in full2 if bi.rows[0][j]],
        ),
    ]
    reports = [mixing_check(e1, e2, q, s1, s2) for s1, s2 in cases]
    for s1, s2 in random_subset_pairs(e1, e2, q, trials, seed):
        reports.append(mixing_check(e1, e2, q, s1, s2, seed=seed))
    return reports
