import random

import pytest

from trivspec import constructions, dmat
from trivspec.algebra import trivial_algebra
from trivspec.dmat import DMatrix
from trivspec.errors import (
    HypothesisViolated,
    InputError,
    NotCollinear,
    NotTargetReduced,
    SpanningRankTooLow,
)
from trivspec.genmat import (
    PolyMatrix,
    alternator_catcher_check,
    catchers,
    factor_collinear,
    flanders_atkinson_check,
    generic_of,
    poly_rank,
    spanning_rank,
)
from trivspec.mpoly import MPoly
from trivspec.oracle import random_space_fuzzer

from factories import random_compression_space
from trivspec.spaces import OperatorSpace, is_target_reduced, transitive_rank


def test_generic_of_alternating_line(F3):
    # span(E12 - E21): the evaluation map sends z to (z2, -z1)
    A = trivial_algebra(F3)
    M = DMatrix(A, [[(0,), (1,)], [(F3.from_int(-1),), (0,)]])
    S = OperatorSpace(A, 2, 2, [M])
    pm = generic_of(S)
    assert (pm.nrows, pm.ncols) == (2, 1)
    z1 = MPoly.variable(F3, 2, 0)
    z2 = MPoly.variable(F3, 2, 1)
    assert pm.entry(0, 0).eq(z2)
    assert pm.entry(1, 0).eq(z1.neg())


def test_generic_of_zero_space(F25):
    S = OperatorSpace.zero_space(F25, 2, 2)
    pm = generic_of(S)
    assert pm.ncols == 0


def test_generic_of_full_mat1_f9(F9):
    S = OperatorSpace.full(F9, 1, 1)
    pm = generic_of(S)
    assert (pm.nrows, pm.ncols) == (2, 2)
    assert poly_rank(pm).value == 2


def test_specialization_matches_evaluation(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    pm = generic_of(S)
    rng = random.Random(21)
    from trivspec import flinalg
    from trivspec.spaces import evaluate

    for _ in range(10):
        x = tuple(F25.random_element(rng) for _ in range(2))
        point = dmat.vec_flat(x)
        spec = pm.specialize(point)
        assert flinalg.rank(spec, F25.field) == evaluate(S, x).dim


def test_poly_rank_values(F25, prof25, F5):
    S = constructions.construct_SH(prof25, 2)
    assert poly_rank(generic_of(S)).value == 3
    Z = OperatorSpace.zero_space(F25, 2, 2)
    assert poly_rank(generic_of(Z)).value == 0
    full = OperatorSpace.full(trivial_algebra(F5), 2, 2)
    assert poly_rank(generic_of(full)).value == 2


def test_poly_rank_matches_transitive_rank(F5, F9, prof9):
    alg = trivial_algebra(F5)
    for S in random_space_fuzzer(alg, 2, 2, 2, 10, seed=22):
        assert poly_rank(generic_of(S)).value == transitive_rank(S)[0]
    for S in random_space_fuzzer(F9, 2, 2, 3, 5, seed=23):
        assert poly_rank(generic_of(S)).value == transitive_rank(S)[0]


def test_spanning_rank_examples(F5):
    z1 = MPoly.variable(F5, 3, 0)
    z2 = MPoly.variable(F5, 3, 1)
    assert spanning_rank([z1, z2]) == 2
    assert spanning_rank([z1, z1]) == 1
    assert spanning_rank([z2, z1.neg()]) == 2


def test_catchers_column(F5):
    # M = (x, y)^T: catchers are spanned by (y, -x)
    x = MPoly.variable(F5, 2, 0)
    y = MPoly.variable(F5, 2, 1)
    pm = PolyMatrix(F5, 2, [[x], [y]], homogeneous_degree=1)
    rows = catchers(pm)
    assert len(rows) == 1
    L = rows[0]
    # proportional to (y, -x)
    assert L[0].mul(x.neg()).sub(L[1].mul(y)).is_zero()


def test_catchers_of_sh2(F25, prof25):
    S = constructions.construct_SH(prof25, 2)
    assert len(catchers(generic_of(S))) == 1


def test_catchers_with_zero_row(F5):
    x = MPoly.variable(F5, 2, 0)
    zero = MPoly.zero(F5, 2)
    pm = PolyMatrix(F5, 2, [[x], [zero]], homogeneous_degree=1)
    rows = catchers(pm)
    # rows supported on the zero row are free: dimension at least nvars = 2
    assert len(rows) >= 2


def test_alternator_catcher_iso(F25, prof25, F9, prof9):
    for prof, n in ((prof25, 2), (prof9, 1)):
        S = constructions.construct_SH(prof, n)
        report = alternator_catcher_check(S)
        assert report.passed and report.alt_dim == report.catch_dim == 1


def test_alternator_catcher_on_fuzz(F5):
    alg = trivial_algebra(F5)
    hits = 0
    for S in random_space_fuzzer(alg, 2, 2, 2, 12, seed=24):
        if not is_target_reduced(S):
            continue
        report = alternator_catcher_check(S)
        assert report.dims_equal and report.forward_ok and report.backward_ok
        hits += 1
    assert hits > 0


def test_alternator_catcher_needs_target_reduced(F5):
    alg = trivial_algebra(F5)
    S = OperatorSpace(alg, 2, 2, [DMatrix.unit(alg, 2, 2, 0, 0)])
    with pytest.raises(NotTargetReduced):
        alternator_catcher_check(S)


# -- Flanders-Atkinson ---------------------------------------------------------------


def _jr(alg, n, p, r):
    return DMatrix(
        alg,
        [[alg.one if (i == j and i < r) else alg.zero for j in range(p)] for i in range(n)],
    )


def test_fa_two_matrix_pencil(F5):
    alg = trivial_algebra(F5)
    J1 = _jr(alg, 2, 2, 1)
    M2 = DMatrix(alg, [[(1,), (0,)], [(1,), (0,)]])
    S = OperatorSpace(alg, 2, 2, [J1, M2])
    report = flanders_atkinson_check(S, 1)
    assert report.passed and report.maxrank <= 1


def test_fa_jr_alone(F7):
    alg = trivial_algebra(F7)
    S = OperatorSpace(alg, 3, 3, [_jr(alg, 3, 3, 2)])
    report = flanders_atkinson_check(S, 2)
    assert report.passed


def test_fa_rejects_rank_overflow(F7):
    alg = trivial_algebra(F7)
    # compression-like space with an arbitrary lower-right block: rank exceeds r
    mats = [_jr(alg, 3, 3, 1)]
    mats.append(DMatrix.unit(alg, 3, 3, 1, 1))
    mats.append(DMatrix.unit(alg, 3, 3, 2, 2))
    S = OperatorSpace(alg, 3, 3, mats)
    with pytest.raises(HypothesisViolated):
        flanders_atkinson_check(S, 1)


def test_fa_needs_jr(F7):
    alg = trivial_algebra(F7)
    S = OperatorSpace(alg, 2, 2, [DMatrix.unit(alg, 2, 2, 0, 1)])
    with pytest.raises(InputError):
        flanders_atkinson_check(S, 1)


def test_fa_on_random_compression_spaces(F7):
    alg = trivial_algebra(F7)
    rng = random.Random(25)
    for _ in range(20):
        n, p = rng.randint(2, 3), rng.randint(2, 3)
        r = rng.randint(1, min(n, p) - 0) if min(n, p) > 1 else 1
        r = min(r, min(n, p))
        S = random_compression_space(alg, n, p, r, rng)
        report = flanders_atkinson_check(S, r, rng=rng)
        assert report.passed


# -- collinearity factorization ----------------------------------------------------------


def test_factor_collinear_examples(F5):
    z1 = MPoly.variable(F5, 3, 0)
    z2 = MPoly.variable(F5, 3, 1)
    z3 = MPoly.variable(F5, 3, 2)
    p = factor_collinear([z1, z2], [z1.mul(z3), z2.mul(z3)])
    assert p.eq(z3)
    p2 = factor_collinear([z1, z2], [z1.mul(z1), z1.mul(z2)])
    assert p2.eq(z1)


def test_factor_collinear_low_spanning_rank(F5):
    z1 = MPoly.variable(F5, 2, 0)
    with pytest.raises(SpanningRankTooLow):
        factor_collinear([z1, z1], [z1.mul(z1), z1.mul(z1)])


def test_factor_collinear_rejects_independent(F5):
    z1 = MPoly.variable(F5, 2, 0)
    z2 = MPoly.variable(F5, 2, 1)
    with pytest.raises(NotCollinear):
        factor_collinear([z1, z2], [z2.mul(z2), z1.mul(z1)])
