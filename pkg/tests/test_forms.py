import pytest

from oppmix import forms, linalg
from oppmix.gf import field
from oppmix.linalg import Subspace, enumerate_subspaces


def full_subspace(d):
    return Subspace(
        d, tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)), tuple(range(d))
    )


def coord_subspace(d, cols):
    return Subspace(
        d, tuple(tuple(1 if j == c else 0 for j in range(d)) for c in cols), tuple(cols)
    )


def test_standard_orthogonal_plus_d2():
    form = forms.standard_form("orthogonal", 2, 2, 1)
    r = forms.restrict(form, full_subspace(2))
    assert forms.singular_count(r) == 2
    assert forms.is_nondegenerate(r)
    assert forms.orthogonal_type(r) == 1


def test_standard_orthogonal_minus_d2():
    form = forms.standard_form("orthogonal", 2, 2, -1)
    assert form.delta == 1  # x^2 + xy + y^2 is anisotropic over F_2
    r = forms.restrict(form, full_subspace(2))
    assert forms.singular_count(r) == 0
    assert forms.orthogonal_type(r) == -1


def test_standard_symplectic_gram():
    form = forms.standard_form("symplectic", 2, 2)
    assert form.gram == ((0, 1), (1, 0))  # -1 = 1 over F_2
    form3 = forms.standard_form("symplectic", 2, 3)
    assert form3.gram == ((0, 1), (2, 0))


def test_standard_form_validation():
    with pytest.raises(ValueError):
        forms.standard_form("orthogonal", 3, 2, 1)
    with pytest.raises(ValueError):
        forms.standard_form("orthogonal", 4, 2, None)
    with pytest.raises(ValueError):
        forms.standard_form("symplectic", 5, 2)
    with pytest.raises(ValueError):
        forms.standard_form("cubic", 4, 2)


def test_singular_o4_plus():
    form = forms.standard_form("orthogonal", 4, 2, 1)
    assert forms.singular_count(forms.restrict(form, full_subspace(4))) == 9


@pytest.mark.parametrize("q", [2, 3])
def test_singular_counts_match_formulas(q):
    for m in range(1, 5):
        for eps in (1, -1):
            form = forms.standard_form("orthogonal", 2 * m, q, eps)
            r = forms.restrict(form, full_subspace(2 * m))
            plus, minus = forms.singular_point_counts(m, q)
            expected = plus if eps == 1 else minus
            assert forms.singular_count(r) == expected


def test_anisotropic_delta_choices():
    assert forms.anisotropic_delta(field(2)) == 1
    assert forms.anisotropic_delta(field(3)) == 2
    for q in (2, 3, 4, 5):
        c = forms.anisotropic_delta(field(q))
        f = field(q)
        for x in f.elements():
            for y in f.elements():
                if (x, y) == (0, 0):
                    continue
                val = f.add(f.add(f.mul(x, x), f.mul(x, y)), f.mul(c, f.mul(y, y)))
                assert val != 0


def test_restrict_full_space_is_congruent():
    for kind, q in (("orthogonal", 2), ("symplectic", 3), ("hermitian", 2)):
        eps = 1 if kind == "orthogonal" else None
        form = forms.standard_form(kind, 4, q, eps)
        r = forms.restrict(form, full_subspace(4))
        assert r.gram == form.gram
        assert forms.is_nondegenerate(r)


def test_restrict_singular_line_of_hyperbolic_plane():
    form = forms.standard_form("orthogonal", 2, 2, 1)
    line = coord_subspace(2, (0,))
    r = forms.restrict(form, line)
    assert r.gram == ((0,),)
    assert r.qdiag == (0,)
    assert not forms.is_nondegenerate(r)


def test_restrict_totally_isotropic_symplectic():
    form = forms.standard_form("symplectic", 4, 2)
    s = coord_subspace(4, (0, 1))  # split pairing: e0 pairs with e2, e1 with e3
    r = forms.restrict(form, s)
    assert r.gram == ((0, 0), (0, 0))
    assert not forms.is_nondegenerate(r)


def test_hermitian_points_f4():
    form = forms.standard_form("hermitian", 2, 2)
    assert form.field.q == 4
    points = list(enumerate_subspaces(2, 1, form.field))
    assert len(points) == 5
    nondeg = [p for p in points if forms.is_nondegenerate(forms.restrict(form, p))]
    assert len(nondeg) == 2


def test_perp_of_full_space_is_zero():
    form = forms.standard_form("symplectic", 4, 3)
    p = forms.perp(form, full_subspace(4))
    assert p.e == 0


def test_perp_symplectic_pair():
    form = forms.standard_form("symplectic", 4, 2)
    s = coord_subspace(4, (0, 2))
    assert form.bilinear((1, 0, 0, 0), (0, 0, 1, 0)) != 0
    p = forms.perp(form, s)
    assert p == coord_subspace(4, (1, 3))


def test_perp_dimension_and_direct_sum():
    # non-degenerate ambient form: dim(perp) is exactly d - e, and
    # V = S (+) S-perp precisely when the restricted gram has full rank
    form = forms.standard_form("orthogonal", 4, 3, 1)
    f = field(3)
    for s in enumerate_subspaces(4, 2, f):
        p = forms.perp(form, s)
        r = forms.restrict(form, s)
        assert p.e == 2
        full_rank = len(linalg.rref(r.gram, f)[1]) == 2
        assert linalg.complementary(s, p, f) == full_rank


@pytest.mark.parametrize("q,d", [(2, 4), (3, 4), (2, 6), (3, 6)])
def test_perp_type_is_eps_times_sigma(q, d):
    f = field(q)
    for eps in (1, -1):
        form = forms.standard_form("orthogonal", d, q, eps)
        for e in range(2, d - 1, 2):
            for s in enumerate_subspaces(d, e, f):
                r = forms.restrict(form, s)
                if not forms.is_nondegenerate(r):
                    continue
                sig = forms.orthogonal_type(r)
                rp = forms.restrict(form, forms.perp(form, s))
                assert forms.is_nondegenerate(rp)
                assert forms.orthogonal_type(rp) == eps * sig


def test_perp_type_is_eps_times_sigma_d8_gf2():
    # bit-path version of the same invariant at the heavy size
    for eps in (1, -1):
        form = forms.standard_form("orthogonal", 8, 2, eps)
        qt = forms.quad_table_gf2(form)
        bil = forms.bilinear_masks_gf2(form)
        for e in (2, 4, 6):
            for s in enumerate_subspaces(8, e, field(2)):
                rows = s.bit_rows()
                sig = forms.classify_orthogonal_gf2(qt, rows)
                if sig is None:
                    continue
                perp_rows = linalg.nullspace_bits([bil[r] for r in rows], 8)
                assert len(perp_rows) == 8 - e
                psig = forms.classify_orthogonal_gf2(qt, perp_rows)
                assert psig == eps * sig


def test_gf2_fast_paths_agree_with_generic():
    for eps in (1, -1):
        form = forms.standard_form("orthogonal", 6, 2, eps)
        qt = forms.quad_table_gf2(form)
        for e in (2, 4):
            for s in enumerate_subspaces(6, e, field(2)):
                r = forms.restrict(form, s)
                generic = (
                    forms.orthogonal_type(r) if forms.is_nondegenerate(r) else None
                )
                assert forms.classify_orthogonal_gf2(qt, s.bit_rows()) == generic
    form = forms.standard_form("symplectic", 6, 2)
    bil = forms.bilinear_masks_gf2(form)
    for s in enumerate_subspaces(6, 2, field(2)):
        r = forms.restrict(form, s)
        assert forms.symplectic_nondeg_gf2(bil, s.bit_rows()) == forms.is_nondegenerate(r)


def test_congruence_invariance_of_restriction():
    # congruent bases of one subspace: compare rank and singular count
    form = forms.standard_form("orthogonal", 4, 2, 1)
    f = field(2)
    s = Subspace(4, ((1, 0, 1, 0), (0, 1, 0, 1)), (0, 1))
    # re-express the same subspace with a scrambled (non-RREF) basis
    alt_rows = [
        tuple(f.add(a, b) for a, b in zip(s.basis[0], s.basis[1])),
        s.basis[1],
    ]
    alt = linalg.subspace_from_rows(alt_rows, f, 4)
    assert alt.basis == s.basis  # canonicalization recovers RREF
    r = forms.restrict(form, s)
    r_direct = forms.RestrictedForm(
        "orthogonal",
        2,
        f,
        tuple(
            tuple(form.bilinear(u, v) for v in alt_rows) for u in alt_rows
        ),
        tuple(form.quad_value(u) for u in alt_rows),
    )
    assert forms.singular_count(r) == forms.singular_count(r_direct)
    assert forms.is_nondegenerate(r) == forms.is_nondegenerate(r_direct)


def test_quad_value_identity():
    # Q(x + y) = Q(x) + Q(y) + B(x, y) in every characteristic
    for q in (2, 3, 4):
        form = forms.standard_form("orthogonal", 4, q, -1)
        f = form.field
        vecs = [(1, 0, 2 % q, 1), (0, 1, 1, 1), (1, 1, 0, 2 % q)]
        for x in vecs:
            for y in vecs:
                s = tuple(f.add(a, b) for a, b in zip(x, y))
                lhs = form.quad_value(s)
                rhs = f.add(
                    f.add(form.quad_value(x), form.quad_value(y)), form.bilinear(x, y)
                )
                assert lhs == rhs
