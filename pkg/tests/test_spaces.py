import random

import pytest
from hypothesis import given, settings, strategies as st

from trivspec import constructions, dmat
from trivspec.algebra import trivial_algebra
from trivspec.dmat import DMatrix
from trivspec.errors import NotTotallyOrdered, ZeroVector
from trivspec.flinalg import FSubspace
from trivspec.spaces import (
    OperatorSpace,
    alpha,
    d_subspaces,
    ev_D,
    evaluate,
    flag_decomposition,
    invariant_subspaces,
    is_source_reduced,
    is_target_reduced,
    joint,
    projective_representatives,
    socle,
    transitive_rank,
)


def test_alpha_values():
    assert alpha(2, 1) == 1
    assert alpha(2, 2) == 4
    assert alpha(2, 4) == 10


@given(st.integers(0, 20), st.integers(0, 20), st.integers(1, 8))
@settings(max_examples=200)
def test_alpha_additivity(m, n, d):
    assert alpha(m + n, d) == alpha(m, d) + alpha(n, d) + m * n * d


# -- operator space basics ---------------------------------------------------------


def test_canonical_equality(F5):
    A = trivial_algebra(F5)
    M1 = DMatrix(A, [[(1,), (2,)], [(0,), (1,)]])
    M2 = DMatrix(A, [[(2,), (4,)], [(0,), (2,)]])
    S1 = OperatorSpace(A, 2, 2, [M1])
    S2 = OperatorSpace(A, 2, 2, [M2])
    assert S1 == S2 and S1.dim == 1
    assert S1.contains(M2)


def test_full_space_dim(F9):
    S = OperatorSpace.full(F9, 2, 2)
    assert S.dim == 2 * 2 * 2


# -- joints ------------------------------------------------------------------------


def test_joint_of_zero_blocks(F3):
    A = trivial_algebra(F3)
    Z = OperatorSpace.zero_space(A, 1, 1)
    J = joint([Z, Z])
    assert J.dim == 1  # one free strictly-upper entry
    assert J.n == 2


def test_joint_dimension_formula(prof25):
    # n copies of the kernel hyperplane on the diagonal: dimension alpha(n, d)
    alg = prof25.algebra
    S = constructions.construct_triangular_model(alg, 3)
    assert S.dim == alpha(3, 2)


def test_joint_alpha_additivity(F25, prof25):
    SH1 = constructions.construct_SH(prof25, 1)
    J = joint([SH1, SH1])
    assert J.dim == alpha(1, 2) + alpha(1, 2) + 2 == alpha(2, 2)


# -- evaluation ----------------------------------------------------------------------


def test_evaluate_sh1_f9(F9, prof9):
    S = constructions.construct_SH(prof9, 1)
    sx = evaluate(S, (F9.one,))
    assert sx.dim == 1
    # S*1 = Ker tr
    t = F9.basis_element(1)
    assert sx.contains(list(t))
    assert not sx.contains(list(F9.one))


def test_evaluate_zero_space(F25):
    S = OperatorSpace.zero_space(F25, 2, 2)
    assert evaluate(S, dmat.standard_vector(F25, 2, 0)).dim == 0


def test_evaluate_sh2_f25(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    e1 = dmat.standard_vector(F25, 2, 0)
    sx = evaluate(S, e1)
    assert sx.dim == 3  # nd - 1, the kernel of e times the rest
    # S e1 = Ker(e) x D: membership checks
    t = F25.basis_element(1)
    assert sx.contains(dmat.vec_flat((t, F25.zero)))
    assert not sx.contains(dmat.vec_flat((F25.one, F25.zero)))
    assert sx.contains(dmat.vec_flat((F25.zero, F25.one)))


def test_evaluate_projectively_invariant(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    rng = random.Random(13)
    for _ in range(20):
        x = tuple(F25.random_element(rng) for _ in range(2))
        if dmat.vec_is_zero(F25, x):
            continue
        lam = F25.random_invertible(rng)
        xl = dmat.vec_right_scale(F25, x, lam)
        assert evaluate(S, x).dim == evaluate(S, xl).dim


# -- socle -----------------------------------------------------------------------------


def test_socle_full_space(F9):
    full = FSubspace(
        F9.field, 4, [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    )
    W = socle(F9, 2, full)
    assert W.dim == 2


def test_socle_of_trace_hyperplane(F9):
    # {(x, y) : tr(x) = 0} in F9^2 has socle {(0, y)}
    rows = []
    for idx in range(4):
        flat = [F9.field.zero] * 4
        flat[idx] = F9.field.one
        v = dmat.vec_from_flat(F9, flat)
        if F9.trace_TD(v[0]) == 0:
            rows.append(flat)
    H = FSubspace(F9.field, 4, rows)
    assert H.dim == 3
    W = socle(F9, 2, H)
    assert W.dim == 1
    assert W.contains((F9.zero, F9.one))
    assert not W.contains((F9.one, F9.zero))


def test_socle_of_hyperplane_in_D(F9):
    # any F-hyperplane of D = F9 (n = 1) has socle zero
    H = FSubspace(F9.field, 2, [[1, 1]])
    assert socle(F9, 1, H).dim == 0


def test_socle_idempotent_and_hyperplane_dimension(F9, F25):
    rng = random.Random(14)
    for alg in (F9, F25):
        F = alg.field
        for n in (1, 2, 3):
            N = alg.degree * n
            for _ in range(20):
                row = [F.random(rng) for _ in range(N)]
                if all(F.is_zero(c) for c in row):
                    continue
                import trivspec.flinalg as fl

                ker = fl.kernel_basis([row], F)
                H = FSubspace(F, N, ker)
                W = socle(alg, n, H)
                assert W.dim == n - 1
                # idempotence: socle of the socle's F-form is itself
                W2 = socle(alg, n, W.as_f_subspace())
                assert W2.dim == W.dim and W2.contains_space(W)


# -- transitive rank and reducedness -----------------------------------------------------


def test_transitive_rank_full(F9):
    S = OperatorSpace.full(F9, 2, 2)
    assert transitive_rank(S) == (4, "exact")


def test_transitive_rank_zero(F25):
    S = OperatorSpace.zero_space(F25, 2, 2)
    assert transitive_rank(S)[0] == 0


def test_transitive_rank_sh2(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    assert transitive_rank(S) == (3, "exact")


def test_reducedness(F25, prof25):
    full = OperatorSpace.full(F25, 2, 2)
    assert is_source_reduced(full) and is_target_reduced(full)
    S = constructions.construct_SH(prof25, 2)
    assert is_source_reduced(S) and is_target_reduced(S)
    # maps into a fixed hyperplane: target-reduced fails
    alg = F25
    mats = []
    for j in range(2):
        for k in range(2):
            mats.append(DMatrix.unit(alg, 2, 2, 0, j, alg.basis_element(k)))
    upper_row = OperatorSpace(alg, 2, 2, mats)
    assert not is_target_reduced(upper_row)


# -- invariant subspaces and flags ---------------------------------------------------------


def test_invariant_subspaces_strictly_upper(F3):
    A = trivial_algebra(F3)
    S = OperatorSpace(A, 2, 2, [DMatrix.unit(A, 2, 2, 0, 1)])
    invs = invariant_subspaces(S)
    dims = [W.dim for W in invs]
    assert dims == [0, 1, 2]
    assert invs[1].contains((A.one, A.zero))
    deco = flag_decomposition(S)
    assert deco.partition == (1, 1)


def test_sh2_f25_irreducible(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    invs = invariant_subspaces(S)
    assert [W.dim for W in invs] == [0, 2]


def test_full_space_invariants_are_a_chain(F3):
    # the full matrix space is irreducible: only 0 and V are invariant
    A = trivial_algebra(F3)
    S = OperatorSpace.full(A, 2, 2)
    assert [W.dim for W in invariant_subspaces(S)] == [0, 2]


def test_diagonal_space_not_chain(F3):
    # both coordinate axes are invariant under the diagonal matrices, so the
    # invariant lattice is not totally ordered
    A = trivial_algebra(F3)
    S = OperatorSpace(A, 2, 2, [DMatrix.unit(A, 2, 2, 0, 0), DMatrix.unit(A, 2, 2, 1, 1)])
    with pytest.raises(NotTotallyOrdered) as exc:
        flag_decomposition(S)
    assert exc.value.details


def test_flag_decomposition_recovers_joint(F25, prof25):
    SH1 = constructions.construct_SH(prof25, 1)
    J = joint([SH1, SH1])
    deco = flag_decomposition(J)
    assert deco.partition == (1, 1)
    for block in deco.blocks:
        assert block == SH1
    rebuilt = joint(deco.blocks, alg=F25)
    assert rebuilt == J.conjugate(deco.conjugator)


# -- EV spaces ----------------------------------------------------------------------------


def test_ev_contains_one_for_unital_spaces(F9):
    S = OperatorSpace(F9, 1, 1, [DMatrix.identity(F9, 1)])
    ev = ev_D(S, (F9.one,))
    assert ev.contains(list(F9.one))


def test_ev_trivial_spectrum_excludes_one(F9, prof9):
    S = constructions.construct_SH(prof9, 1)
    ev = ev_D(S, (F9.one,))
    assert not ev.contains(list(F9.one))
    # S*1 = Ker tr, so EV = Ker tr
    assert ev.contains(list(F9.basis_element(1)))
    assert ev.dim == 1


def test_ev_zero_vector_raises(F9, prof9):
    S = constructions.construct_SH(prof9, 1)
    with pytest.raises(ZeroVector):
        ev_D(S, (F9.zero,))


# -- enumeration orders ---------------------------------------------------------------------


def test_projective_count(F9):
    reps = list(projective_representatives(F9, 2))
    assert len(reps) == (81 - 1) // (9 - 1)  # 10
    flat = [tuple(c for e in v for c in e) for v in reps]
    assert flat == sorted(flat)


def test_d_subspace_enumeration_counts(F5):
    A = trivial_algebra(F5)
    lines = list(d_subspaces(A, 3, 1))
    planes = list(d_subspaces(A, 3, 2))
    assert len(lines) == 31 and len(planes) == 31
    assert len(set(W.key() for W in lines)) == 31
