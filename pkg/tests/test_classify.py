import random

import pytest

from trivspec import constructions, dmat
from trivspec.algebra import default_extension, standard_profile, trivial_algebra
from trivspec.classify import classify_optimal, verify_invariant_subspace_lemma
from trivspec.dmat import DMatrix
from trivspec.errors import (
    CardinalityHypothesisFails,
    HypothesisFails,
    NotOptimalDim,
    SpectrumNotTrivial,
)
from trivspec.spaces import DSubspace, OperatorSpace, alpha, joint
from trivspec.verdicts import Budget, CERTIFIED


def nonisotropic_gram_d1(F):
    """Anisotropic 2x2 Gram over F_5-like fields: x^2 - 2 y^2 for 2 a non-residue."""
    return DMatrix(
        trivial_algebra(F),
        [[(F.one,), (F.zero,)], [(F.zero,), (F.from_int(-2),)]],
    )


def test_classify_triangular_f343(F7):
    F343 = default_extension(F7, 3)
    S = constructions.construct_triangular_model(F343, 2)
    report = classify_optimal(S, budget=Budget(2**23))
    assert report.partition == (1, 1)
    assert [b.tag for b in report.blocks] == ["hyperplane", "hyperplane"]
    assert report.spectrum == CERTIFIED


def test_classify_quadratic_route_d1(F5):
    # P^-1 Mat_alt(F5) for an anisotropic P: irreducible optimal with d = 1
    A = trivial_algebra(F5)
    prof = standard_profile(A)
    P = nonisotropic_gram_d1(F5)
    S = constructions.twisted_SH(prof, P)
    assert S.dim == alpha(2, 1) == 1
    report = classify_optimal(S)
    assert report.partition == (2,)
    block = report.blocks[0]
    assert block.tag == "quadratic-type"
    assert block.profile["tag"] == "trivial"
    assert block.e_nonisotropy == CERTIFIED


def test_classify_round_trip_d1_conjugates(F5):
    A = trivial_algebra(F5)
    prof = standard_profile(A)
    rng = random.Random(32)
    P = nonisotropic_gram_d1(F5)
    for _ in range(10):
        Q = dmat.random_invertible_matrix(A, 2, rng)
        S = constructions.twisted_SH(prof, P).conjugate(Q)
        report = classify_optimal(S)
        assert report.partition == (2,)
        assert report.blocks[0].tag == "quadratic-type"


def test_classify_joint_partition(F25, prof25):
    SH1 = constructions.construct_SH(prof25, 1)
    J = joint([SH1, SH1])
    report = classify_optimal(J)
    assert report.partition == (1, 1)
    assert all(b.tag == "hyperplane" for b in report.blocks)


def test_classify_mixed_partition(F5):
    # joint of an irreducible 2-block with a 1-block, d = 1: partition (2, 1)
    A = trivial_algebra(F5)
    prof = standard_profile(A)
    big = constructions.twisted_SH(prof, nonisotropic_gram_d1(F5))
    line = constructions.construct_triangular_model(A, 1)  # the zero space
    J = joint([big, line])
    assert J.dim == alpha(3, 1) == 3
    report = classify_optimal(J)
    assert report.partition == (2, 1)
    assert [b.tag for b in report.blocks] == ["quadratic-type", "hyperplane"]


def test_classify_rejects_wrong_dim(F25):
    S = OperatorSpace.zero_space(F25, 2, 2)
    with pytest.raises(NotOptimalDim):
        classify_optimal(S)


def test_classify_rejects_bad_spectrum(F25, prof25):
    S = constructions.construct_SH(prof25, 2)  # refuted spectrum over F25
    with pytest.raises(SpectrumNotTrivial):
        classify_optimal(S)


def test_classify_cardinality_guard(F3, prof9, F9):
    S = constructions.construct_SH(prof9, 2)
    with pytest.raises(CardinalityHypothesisFails):
        classify_optimal(S)


def test_classify_deterministic(F7):
    F343 = default_extension(F7, 3)
    S = constructions.construct_triangular_model(F343, 2)
    r1 = classify_optimal(S, budget=Budget(2**23))
    r2 = classify_optimal(S, budget=Budget(2**23))
    assert r1.to_json() == r2.to_json()


# -- invariant subspace lemma -------------------------------------------------------


def block_space(alg, n, t):
    """All operators vanishing on W = span(e_1..e_t) and mapping into W."""
    mats = []
    for i in range(t):
        for j in range(t, n):
            for k in range(alg.degree):
                mats.append(DMatrix.unit(alg, n, n, i, j, alg.basis_element(k)))
    return OperatorSpace(alg, n, n, mats)


def test_lemma_minimal_block_space(F3):
    A = trivial_algebra(F3)
    W = DSubspace(A, 2, [dmat.standard_vector(A, 2, 0)])
    S = block_space(A, 2, 1)
    v = verify_invariant_subspace_lemma(S, W)
    assert v.kind == CERTIFIED


def test_lemma_fuzzed_extensions(F3):
    # the block space plus random extra matrices that keep trivial spectrum
    A = trivial_algebra(F3)
    rng = random.Random(33)
    W = DSubspace(A, 2, [dmat.standard_vector(A, 2, 0)])
    base = block_space(A, 2, 1)
    found = 0
    for _ in range(100):
        M = dmat.random_matrix(A, 2, 2, rng)
        S = OperatorSpace(A, 2, 2, base.basis + [M])
        if not constructions.has_trivial_spectrum(S).is_certified:
            continue
        found += 1
        v = verify_invariant_subspace_lemma(S, W)
        assert v.kind == CERTIFIED
    assert found > 0


def test_lemma_missing_block_raises(F3):
    A = trivial_algebra(F3)
    W = DSubspace(A, 2, [dmat.standard_vector(A, 2, 0)])
    S = OperatorSpace.zero_space(A, 2, 2)  # lacks the block operators
    with pytest.raises(HypothesisFails):
        verify_invariant_subspace_lemma(S, W)
