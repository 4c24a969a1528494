import itertools
import random

import numpy as np
import pytest

from kuelsh.algebra import (
    AlgebraMorphism,
    BilinearForm,
    identity_morphism,
    symmetrizing_form_search,
    trivial_extension,
)
from kuelsh.catalog import (
    dual_numbers,
    field_algebra,
    full_matrix_algebra,
    standard_corpus,
    truncated_polynomial,
    upper_triangular,
)
from kuelsh.degree0 import center, commutator_space, hh0_data
from kuelsh.errors import NotACocycle, NotUnital
from kuelsh.fieldlin import FiniteField, Matrix, Subspace, row_reduce
from kuelsh.hochschild import (
    Cochain,
    boundary_matrix,
    chain_dim,
    coboundary_apply,
    coboundary_matrix,
    cochain_dim,
    cohomology,
    cup_power,
    cup_product,
    gram_matrix,
    hh_of_map,
    homology,
    induced_chain_map,
    pairing,
    pairing_vector,
)

F2 = FiniteField(2)
F3 = FiniteField(3)
F5 = FiniteField(5)

CORPUS = standard_corpus()
SYMMETRIC = ["dual_f2", "dual_f3", "dual_f5", "trunc3_f3", "m2_f3", "k_f2"]

BUDGET_COLUMNS = 10_000


def max_budget_degree(A, cap):
    m = 0
    while m < cap and chain_dim(A, m + 1) <= BUDGET_COLUMNS:
        m += 1
    return m


# -- full (unnormalized) bar complex, used only as an oracle here -------------


def full_bar_boundary(A, m):
    d = A.dim
    F = A.field

    def index(tup):
        idx = 0
        for t in tup:
            idx = idx * d + t
        return idx

    out = np.zeros((d**m, d ** (m + 1)), dtype=np.int64)
    minus_one = F.neg(1)
    for tup in itertools.product(range(d), repeat=m + 1):
        col = index(tup)
        sign = 1
        for i in range(m):
            prod = A.const[tup[i], tup[i + 1]]
            for t in np.flatnonzero(prod):
                row = index(tup[:i] + (int(t),) + tup[i + 2 :])
                val = int(prod[t]) if sign == 1 else F.mul(int(prod[t]), minus_one)
                out[row, col] = F.add(int(out[row, col]), val)
            sign = -sign
        prod = A.const[tup[m], tup[0]]
        for t in np.flatnonzero(prod):
            row = index((int(t),) + tup[1:m])
            val = int(prod[t]) if sign == 1 else F.mul(int(prod[t]), minus_one)
            out[row, col] = F.add(int(out[row, col]), val)
    return Matrix(F, out, copy=False)


def full_bar_hh_dim(A, m):
    F = A.field
    if m == 0:
        cycles_dim = A.dim
    else:
        cycles_dim = row_reduce(full_bar_boundary(A, m)).kernel.dim
    image_rank = row_reduce(full_bar_boundary(A, m + 1)).rank
    return cycles_dim - image_rank


# -- boundary matrices ---------------------------------------------------------


def test_dual_numbers_b1_zero_b2_is_2eps():
    for F in (F3, F5):
        A = dual_numbers(F)
        assert boundary_matrix(A, 1).is_zero()
        b2 = boundary_matrix(A, 2)
        two_eps = (2 * A.left_mult_matrix(A.basis_vector(1))) % F.p
        assert np.array_equal(b2.data, two_eps)


def test_dual_numbers_b2_vanishes_in_char_two():
    A = dual_numbers(F2)
    assert boundary_matrix(A, 2).is_zero()


def test_field_algebra_chain_spaces_vanish():
    A = field_algebra(F3)
    for m in range(1, 5):
        assert chain_dim(A, m) == 0
    assert homology(A, 0).dimension == 1
    for m in range(1, 4):
        assert homology(A, m).dimension == 0
        assert cohomology(A, m).dimension == 0


def test_ut2_b1_image_is_commutator_space():
    A = upper_triangular(F2, 2)
    b1 = boundary_matrix(A, 1)
    img = Subspace(F2, A.dim, b1.data.T)
    assert img == commutator_space(A)


def test_b_squared_zero_within_budget():
    for name, A in CORPUS.items():
        top = max_budget_degree(A, 7)
        for m in range(2, top + 1):
            prod = boundary_matrix(A, m - 1) @ boundary_matrix(A, m)
            assert prod.is_zero(), (name, m)


def test_delta_squared_zero_within_budget():
    for name, A in CORPUS.items():
        top = max_budget_degree(A, 6)
        for m in range(0, top - 1):
            prod = coboundary_matrix(A, m + 1) @ coboundary_matrix(A, m)
            assert prod.is_zero(), (name, m)


# -- coboundaries ---------------------------------------------------------------


def test_degree_zero_cocycles_are_center():
    for name in ("dual_f3", "ut2_f2", "m2_f3"):
        A = CORPUS[name]
        ker = row_reduce(coboundary_matrix(A, 0)).kernel
        assert ker == center(A)


def test_dual_f2_delta1_zero_and_hh1_dim_two():
    A = dual_numbers(F2)
    assert coboundary_matrix(A, 1).is_zero()
    assert cohomology(A, 1).dimension == 2


# -- homology dimensions ----------------------------------------------------------


def test_dual_numbers_hh_dims_odd_char():
    for F in (F3, F5):
        A = dual_numbers(F)
        dims = [homology(A, m).dimension for m in range(7)]
        assert dims == [2, 1, 1, 1, 1, 1, 1]


def test_dual_numbers_hh_dims_char_two():
    A = dual_numbers(F2)
    dims = [homology(A, m).dimension for m in range(7)]
    assert dims == [2] * 7


def test_ut2_hh_dims():
    A = upper_triangular(F2, 2)
    dims = [homology(A, m).dimension for m in range(4)]
    assert dims == [2, 0, 0, 0]


def test_degree_zero_identifications():
    for name in ("dual_f3", "ut2_f2", "ut3_f3", "m2_f3"):
        A = CORPUS[name]
        hb = homology(A, 0)
        _, reps, _ = hh0_data(A)
        assert np.array_equal(np.stack(hb.representatives), reps.data)
        cb = cohomology(A, 0)
        assert Subspace(A.field, A.dim, np.stack(cb.representatives)) == center(A)


def test_normalized_matches_full_bar_complex():
    small = [
        CORPUS["dual_f2"],
        CORPUS["dual_f3"],
        CORPUS["ut2_f2"],
        CORPUS["m2_f3"],
        CORPUS["k_f2"],
    ]
    for A in small:
        for m in range(3):
            assert homology(A, m).dimension == full_bar_hh_dim(A, m), (A, m)


def test_symmetric_duality_dimensions():
    for name in SYMMETRIC:
        A = CORPUS[name]
        for m in range(4):
            assert homology(A, m).dimension == cohomology(A, m).dimension, (name, m)


# -- functoriality ----------------------------------------------------------------


def test_induced_chain_map_identity():
    A = dual_numbers(F3)
    for m in range(3):
        M = induced_chain_map(identity_morphism(A), m)
        assert M == Matrix.identity(F3, chain_dim(A, m))


def test_induced_chain_map_not_unital():
    A = dual_numbers(F2)
    theta = AlgebraMorphism(A, A, Matrix.zeros(F2, 2, 2))
    with pytest.raises(NotUnital):
        induced_chain_map(theta, 1)


def test_pi_iota_chain_level_identity():
    for name in ("dual_f3", "ut2_f2"):
        A = CORPUS[name]
        te = trivial_extension(A)
        for m in range(4):
            down = induced_chain_map(te.pi, m)
            up = induced_chain_map(te.iota, m)
            assert down @ up == Matrix.identity(A.field, chain_dim(A, m))


def test_chain_map_commutes_with_boundary():
    for name in ("dual_f3", "ut2_f2"):
        A = CORPUS[name]
        te = trivial_extension(A)
        TA = te.algebra
        top = max_budget_degree(TA, 5)
        for theta, src, tgt in ((te.iota, A, TA), (te.pi, TA, A)):
            for m in range(1, top + 1):
                lhs = boundary_matrix(tgt, m) @ induced_chain_map(theta, m)
                rhs = induced_chain_map(theta, m - 1) @ boundary_matrix(src, m)
                assert lhs == rhs, (name, m)


def test_boundary_matrix_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("KUELSH_CACHE_DIR", str(tmp_path))
    A1 = dual_numbers(F3)
    M1 = boundary_matrix(A1, 2)
    assert len(list(tmp_path.iterdir())) == 1
    A2 = dual_numbers(F3)  # fresh object, same content: hits the disk cache
    assert boundary_matrix(A2, 2) == M1


def test_iota_sends_eps_cycle_to_ta_tuple():
    A = dual_numbers(F3)
    te = trivial_extension(A)
    TA = te.algebra
    up = induced_chain_map(te.iota, 2)
    # cycle eps (x) eps (x) eps has chain index, in A, of tuple (1, 1, 1)
    src = np.zeros(chain_dim(A, 2), dtype=np.int64)
    src[1 * 1 + 0] = 0
    from kuelsh.hochschild import _chain_index

    src[_chain_index(A, 2, (1, 1, 1))] = 1
    img = up @ src
    expect = np.zeros(chain_dim(TA, 2), dtype=np.int64)
    expect[_chain_index(TA, 2, (1, 1, 1))] = 1
    assert np.array_equal(img, expect)


def test_hh_of_identity_map():
    A = dual_numbers(F3)
    for m in range(3):
        h = homology(A, m)
        M = hh_of_map(identity_morphism(A), m)
        assert M == Matrix.identity(F3, h.dimension)


def test_hh_pi_after_iota_identity():
    for name in ("dual_f3", "dual_f2", "ut2_f2", "trunc3_f3"):
        A = CORPUS[name]
        te = trivial_extension(A)
        for m in range(4):
            hA = homology(A, m)
            if hA.dimension == 0:
                continue
            hTA = homology(te.algebra, m)
            up = hh_of_map(te.iota, m, source_basis=hA, target_basis=hTA)
            down = hh_of_map(te.pi, m, source_basis=hTA, target_basis=hA)
            assert down @ up == Matrix.identity(A.field, hA.dimension), (name, m)


def test_hh0_of_iota_matches_degree0_route():
    for name in ("dual_f3", "ut2_f2", "m2_f3"):
        A = CORPUS[name]
        te = trivial_extension(A)
        TA = te.algebra
        M = hh_of_map(te.iota, 0)
        _, repsA, _ = hh0_data(A)
        _, repsTA, qmapTA = hh0_data(TA)
        expected = np.stack(
            [qmapTA @ (te.iota.matrix @ repsA.data[j]) for j in range(repsA.rows)],
            axis=1,
        )
        assert np.array_equal(M.data, expected)


# -- cup products -----------------------------------------------------------------


def test_cup_with_unit_cocycle():
    A = dual_numbers(F3)
    one = Cochain.unit(A)
    f = Cochain(A, 1, np.array([[1, 2], [0, 1]])[:1])
    assert cup_product(one, f) == f
    assert cup_product(f, one) == f


def test_cup_degree_zero_is_multiplication():
    A = truncated_polynomial(F3, 3)
    x = Cochain(A, 0, np.array([1, 2, 0]))
    y = Cochain(A, 0, np.array([0, 1, 1]))
    z = cup_product(x, y)
    assert np.array_equal(z.coeffs[0], A.multiply([1, 2, 0], [0, 1, 1]))


def test_cup_square_of_degree_one_generator_char_two():
    A = dual_numbers(F2)
    z = Cochain(A, 1, np.array([[1, 0]]))  # eps-bar maps to 1
    zz = cup_product(z, z)
    assert coboundary_apply(zz).is_zero()
    cls = cohomology(A, 2).express(zz.flat())
    assert cls.any()  # nonzero degree-2 class


def test_cup_power_by_squaring_matches_iterated():
    A = dual_numbers(F2)
    rng = random.Random(6)
    f = Cochain(A, 1, np.array([[rng.randrange(2), rng.randrange(2)]]))
    p4 = cup_power(f, 4)
    it = f
    for _ in range(3):
        it = cup_product(it, f)
    assert p4 == it


def test_leibniz_rule_random_cochains():
    rng = random.Random(41)
    for name in ("dual_f2", "dual_f3", "ut2_f2"):
        A = CORPUS[name]
        d = A.dim
        for _ in range(50):
            mf = rng.randrange(0, 3)
            mg = rng.randrange(0, 3)
            f = Cochain(
                A, mf, np.array([rng.randrange(A.field.q) for _ in range(cochain_dim(A, mf))])
            )
            g = Cochain(
                A, mg, np.array([rng.randrange(A.field.q) for _ in range(cochain_dim(A, mg))])
            )
            lhs = coboundary_apply(cup_product(f, g)).flat()
            t1 = cup_product(coboundary_apply(f), g).flat()
            t2 = cup_product(f, coboundary_apply(g)).flat()
            sign = 1 if mf % 2 == 0 else A.field.neg(1)
            rhs = A.field.vadd(t1, A.field.vscale(sign, t2))
            assert np.array_equal(lhs, rhs), (name, mf, mg)


def test_coboundary_apply_matches_matrix():
    for name in ("dual_f3", "ut2_f2"):
        A = CORPUS[name]
        rng = random.Random(9)
        for m in range(0, 3):
            delta = coboundary_matrix(A, m)
            vec = np.array([rng.randrange(A.field.q) for _ in range(cochain_dim(A, m))])
            f = Cochain(A, m, vec)
            assert np.array_equal(coboundary_apply(f).flat(), delta @ vec)


# -- pairing ----------------------------------------------------------------------


def lam_of(name):
    res = symmetrizing_form_search(CORPUS[name])
    assert res.status == "found"
    return res.form


def test_pairing_degree_zero_collapse():
    A = dual_numbers(F3)
    lam = lam_of("dual_f3")
    z = Cochain(A, 0, np.array([1, 2]))
    a = np.array([2, 1])
    assert pairing(lam, z, a) == F3.vdot(lam, A.multiply([1, 2], [2, 1]))


def test_pairing_rejects_noncocycle():
    A = upper_triangular(F2, 2)
    f = Cochain(A, 0, np.array([0, 1, 0]))  # e11 is not central
    with pytest.raises(NotACocycle):
        pairing(np.array([0, 0, 1]), f, np.zeros(3, dtype=np.int64))


def test_gram_dual_f2_degree_one_invertible():
    A = dual_numbers(F2)
    lam = lam_of("dual_f2")
    G = gram_matrix(A, lam, 1)
    assert G.rows == 2 and G.cols == 2
    assert row_reduce(G).rank == 2


def test_gram_invertible_for_symmetric_corpus():
    for name in SYMMETRIC:
        A = CORPUS[name]
        lam = lam_of(name)
        for m in range(4):
            h = homology(A, m).dimension
            G = gram_matrix(A, lam, m)
            assert G.rows == G.cols == h
            assert row_reduce(G).rank == h, (name, m)


def test_pairing_descends():
    # cocycle against boundary = 0, coboundary against cycle = 0, exhaustively
    for name in ("dual_f2", "dual_f3", "trunc3_f3"):
        A = CORPUS[name]
        lam = lam_of(name)
        for m in range(1, 4):
            coh = cohomology(A, m)
            hom = homology(A, m)
            bnd = boundary_matrix(A, m + 1)
            for zf in coh.representatives:
                z = Cochain.from_flat(A, m, zf)
                w = pairing_vector(lam, z)
                for col in range(bnd.cols):
                    assert A.field.vdot(w, bnd.data[:, col]) == 0
            delta = coboundary_matrix(A, m - 1)
            for col in range(delta.cols):
                cob = Cochain.from_flat(A, m, delta.data[:, col])
                w = pairing_vector(lam, cob)
                for x in hom.representatives:
                    assert A.field.vdot(w, x) == 0
