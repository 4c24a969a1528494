import numpy as np
import pytest

from kuelsh.algebra import (
    BilinearForm,
    algebra_validate,
    morphism_validate,
    symmetrizing_form_search,
    tensor_product,
    trivial_extension,
)
from kuelsh.catalog import dual_numbers, field_algebra, standard_corpus, upper_triangular
from kuelsh.degree0 import kulshammer_T
from kuelsh.errors import TooLargeToEnumerate
from kuelsh.fieldlin import FiniteField, Matrix, row_reduce
from kuelsh.hochschild import homology
from kuelsh.oracle import (
    brute_force_Tn,
    kunneth_dim_check,
    periodic_hh_dual_numbers,
    ta_iso_dual,
)

F2 = FiniteField(2)
F3 = FiniteField(3)
F4 = FiniteField(2, 2, [1, 1, 1])
F5 = FiniteField(5)

CORPUS = standard_corpus()


# -- dual numbers construction -------------------------------------------------


def test_dual_numbers_valid_and_symmetric():
    for F in (F2, F3, F4):
        A = dual_numbers(F)
        assert algebra_validate(A).ok
        res = symmetrizing_form_search(A)
        assert res.status == "found"


# -- periodic resolution ---------------------------------------------------------


def test_periodic_dims_odd_char():
    for F in (F3, F5):
        dims = [periodic_hh_dual_numbers(F, m).dimension for m in range(7)]
        assert dims == [2, 1, 1, 1, 1, 1, 1]


def test_periodic_dims_char_two():
    dims = [periodic_hh_dual_numbers(F2, m).dimension for m in range(7)]
    assert dims == [2] * 7


def test_periodic_degree_zero_is_whole_algebra():
    for F in (F2, F3):
        r = periodic_hh_dual_numbers(F, 0)
        assert r.dimension == 2


def test_periodic_matches_bar_complex():
    for F in (F2, F3, F5):
        A = dual_numbers(F)
        for m in range(7):
            assert (
                periodic_hh_dual_numbers(F, m).dimension == homology(A, m).dimension
            ), (F.p, m)


# -- Kunneth ----------------------------------------------------------------------


def test_kunneth_dual_f3():
    verdicts = kunneth_dim_check(dual_numbers(F3), 4)
    assert [v.tensor_side for v in verdicts] == [4, 4, 5, 6, 7]
    assert all(v.ok for v in verdicts)


def test_kunneth_dual_f2():
    verdicts = kunneth_dim_check(dual_numbers(F2), 4)
    assert [v.tensor_side for v in verdicts] == [4, 8, 12, 16, 20]
    assert all(v.ok for v in verdicts)


def test_kunneth_field_algebra():
    verdicts = kunneth_dim_check(field_algebra(F3), 3)
    assert [v.tensor_side for v in verdicts] == [1, 0, 0, 0]
    assert all(v.ok for v in verdicts)


# -- explicit trivial extension isomorphism ----------------------------------------


def test_ta_iso_dual_is_isomorphism():
    for F in (F2, F3):
        theta = ta_iso_dual(F)
        assert morphism_validate(theta)
        assert row_reduce(theta.matrix).rank == 4


def test_ta_iso_roundtrip_identity():
    F = F3
    theta = ta_iso_dual(F)
    red = row_reduce(theta.matrix)
    inv_cols = [red.solve(np.eye(4, dtype=np.int64)[:, k]) for k in range(4)]
    inv = Matrix(F, np.stack(inv_cols, axis=1))
    assert inv @ theta.matrix == Matrix.identity(F, 4)


def test_ta_iso_transports_symmetrizing_form():
    for F in (F2, F3):
        A = dual_numbers(F)
        te = trivial_extension(A)
        AA = tensor_product(A, A)
        theta = ta_iso_dual(F)
        red = row_reduce(theta.matrix)
        inv_cols = [red.solve(np.eye(4, dtype=np.int64)[:, k]) for k in range(4)]
        inv = np.stack(inv_cols, axis=1)
        # gram of the transported form on A (x) A
        gram = F.mat_mul(F.mat_mul(inv.T, te.form.gram.data), inv)
        form = BilinearForm(F, Matrix(F, gram))
        assert form.is_symmetric()
        assert form.is_nondegenerate()
        assert form.is_associative(AA)


# -- brute force T_n ----------------------------------------------------------------


def test_brute_force_dual_f3():
    A = dual_numbers(F3)
    t = brute_force_Tn(A, 1)
    assert t.dim == 1
    assert t.contains_vector([0, 1])


def test_brute_force_ut2():
    A = upper_triangular(F2, 2)
    t = brute_force_Tn(A, 1)
    assert t.dim == 1
    assert t.contains_vector([0, 0, 1])


def test_brute_force_field_algebra():
    assert brute_force_Tn(field_algebra(F3), 2).dim == 0


def test_brute_force_matches_linear_route_on_corpus():
    for name, A in CORPUS.items():
        if A.field.q**A.dim > 3**6:
            continue
        for n in (1, 2):
            assert brute_force_Tn(A, n) == kulshammer_T(A, n), (name, n)


def test_brute_force_respects_bound():
    with pytest.raises(TooLargeToEnumerate):
        brute_force_Tn(upper_triangular(F5, 3), 1)
