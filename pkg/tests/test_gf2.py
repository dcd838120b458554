from __future__ import annotations

from hypothesis import given, settings, strategies as st

from amalgamkit.gf2 import (Gf2Matrix, QuadraticForm, Subspace, all_subspaces, gaussian_binomial,
                            intersection, rref, span, subspace_sum, vec_from_bits, vec_mat, vec_to_bits)


def matrices(d: int):
    return st.lists(st.integers(0, (1 << d) - 1), min_size=d, max_size=d).map(lambda r: Gf2Matrix(tuple(r), d))


def invertible(d: int):
    return matrices(d).filter(lambda m: m.is_invertible())


def subspaces(d: int):
    return st.lists(st.integers(0, (1 << d) - 1), max_size=d).map(lambda vs: Subspace.spanned_by(vs, d))


def test_bits_roundtrip():
    assert vec_to_bits(vec_from_bits([1, 0, 1, 1]), 4) == (1, 0, 1, 1)
    assert vec_from_bits([0, 1]) == 2


def test_elementary_and_order():
    e = Gf2Matrix.elementary(4, 1, 0)
    assert e.entry(1, 0) == 1 and e.order() == 2
    assert (e @ e) == Gf2Matrix.identity(4)


@given(invertible(5))
def test_inverse(m):
    assert m @ m.inverse() == Gf2Matrix.identity(5)
    assert m.inverse() @ m == Gf2Matrix.identity(5)


@given(matrices(5), st.integers(0, 31))
def test_apply_is_row_vector_times_matrix(m, v):
    assert m.apply(v) == vec_mat(v, m.rows)


@given(matrices(4), matrices(4))
def test_rank_of_product(a, b):
    assert (a @ b).rank() <= min(a.rank(), b.rank())
    assert a.transpose().rank() == a.rank()


@given(matrices(5))
def test_rref_idempotent(m):
    r, k = rref(m)
    assert k == m.rank()
    assert rref(r) == (r, k)


@given(subspaces(6), subspaces(6))
def test_dimension_formula(a, b):
    assert subspace_sum(a, b).dim + intersection(a, b).dim == a.dim + b.dim


@given(subspaces(5), subspaces(5))
def test_intersection_is_setwise(a, b):
    assert set(intersection(a, b).vectors()) == set(a.vectors()) & set(b.vectors())


@given(subspaces(5), invertible(5))
def test_image_dimension(s, m):
    assert s.image(m).dim == s.dim
    assert set(s.image(m).vectors()) == {m.apply(v) for v in s.vectors()}


def test_span_size():
    assert sorted(span([1, 2])) == [0, 1, 2, 3]


def test_all_subspaces_count():
    for d in range(1, 6):
        assert len(all_subspaces(d)) == sum(gaussian_binomial(d, k) for k in range(d + 1))
    assert gaussian_binomial(6, 3) == 1395


def _hyperbolic(v):
    b = [(v >> i) & 1 for i in range(4)]
    return (b[0] & b[1]) ^ (b[2] & b[3])


def _elliptic(v):
    b = [(v >> i) & 1 for i in range(4)]
    return (b[0] & b[1]) ^ b[2] ^ (b[2] & b[3]) ^ b[3]


def test_witt_types():
    plus = QuadraticForm.from_values(_hyperbolic, 4)
    minus = QuadraticForm.from_values(_elliptic, 4)
    assert plus.witt_type() == "plus" and plus.zero_count() == 10
    assert minus.witt_type() == "minus" and minus.zero_count() == 6
    assert plus.radical().dim == 0


@settings(max_examples=50)
@given(invertible(4))
def test_transformed_form_keeps_type(m):
    q = QuadraticForm.from_values(_hyperbolic, 4)
    t = q.transformed(m)
    assert t.witt_type() == "plus"
    assert all(t(v) == q(m.apply(v)) for v in range(16))
