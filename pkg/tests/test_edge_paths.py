"""Paths off the exhaustive happy path: randomized ranks, verdict
degradations over infinite fields, and budget fallbacks."""

import random

import pytest

from trivspec import dmat
from trivspec.algebra import standard_profile, trivial_algebra
from trivspec.alternators import SesquilinearForm, alternating_maps
from trivspec.constructions import construct_SH, has_trivial_spectrum, twisted_SH
from trivspec.dmat import DMatrix
from trivspec.errors import BudgetExceeded
from trivspec.genmat import generic_of, poly_rank
from trivspec.intransitivity import is_deeply_intransitive
from trivspec.oracle import random_space_fuzzer
from trivspec.spaces import OperatorSpace, transitive_rank
from trivspec.verdicts import (
    Budget,
    CERTIFIED,
    CERTIFIED_BY_ALTERNATOR,
    PROBABLE,
    UNKNOWN,
)


def test_poly_rank_probabilistic_matches_exhaustive(F7):
    # 5 x 8 generic matrices have more than 36 cells and |F| = 7 exceeds the
    # largest possible rank, so the randomized route runs; it must agree with
    # the exact finite-field transitive rank
    A = trivial_algebra(F7)
    for S in random_space_fuzzer(A, 5, 5, 8, 3, seed=41):
        pm = generic_of(S)
        assert pm.nrows * pm.ncols > 36
        res = poly_rank(pm, rng=random.Random(1))
        assert res.kind == "probabilistic"
        assert res.failure_bound
        exact, tag = transitive_rank(S)
        assert tag == "exact"
        assert res.value == exact


def test_poly_rank_small_field_falls_back_to_exact(F25):
    # over F_5 a 6 x 7 matrix may have rank 6 > |F| - 1: sampling would be
    # unsound, so the fraction-free elimination runs instead
    for S in random_space_fuzzer(F25, 3, 3, 7, 2, seed=44):
        pm = generic_of(S)
        assert pm.nrows * pm.ncols > 36
        res = poly_rank(pm, rng=random.Random(1))
        assert res.kind == "exact"
        assert res.value == transitive_rank(S)[0]


def test_poly_rank_probabilistic_over_Q(QQ):
    A = trivial_algebra(QQ)
    rng = random.Random(42)
    mats = [dmat.random_matrix(A, 5, 8, rng) for _ in range(8)]
    S = OperatorSpace(A, 5, 8, mats)
    pm = generic_of(S)
    res = poly_rank(pm, rng=rng)
    assert res.kind == "probabilistic"
    assert res.value == 5  # random spaces of wide matrices are transitive


def test_transitive_rank_over_Q_is_tagged(QI, profQI):
    S = construct_SH(profQI, 2)
    value, tag = transitive_rank(S)
    assert value == 3  # nd - 1
    assert tag in ("exact", "probabilistic")


def test_deep_intransitivity_unknown_over_Q(QQ):
    # full Mat_2(Q) has no alternator and no finite enumeration: Unknown
    A = trivial_algebra(QQ)
    S = OperatorSpace.full(A, 2, 2)
    v = is_deeply_intransitive(S)
    assert v.kind == UNKNOWN


def test_deep_intransitivity_budget_falls_back_to_alternator(F25, prof25):
    S = construct_SH(prof25, 2)
    v = is_deeply_intransitive(S, budget=Budget(5))
    assert v.kind == CERTIFIED_BY_ALTERNATOR


def test_spectrum_budget_degrades_to_sampling(F25, prof25):
    S = twisted_SH(prof25, DMatrix.identity(F25, 2))
    v = has_trivial_spectrum(S, budget=Budget(5), samples=30)
    # either a sampled witness shows up or the verdict stays honest
    assert v.kind in (PROBABLE, "Refuted", CERTIFIED)
    if v.kind == PROBABLE:
        assert v.checked == 30


def test_transitive_rank_budget_error(F25, prof25):
    S = construct_SH(prof25, 2)
    with pytest.raises(BudgetExceeded):
        transitive_rank(S, budget=Budget(1))


def test_detect_quadratic_type_over_qi(QI, profQI):
    from trivspec.alternators import detect_quadratic_type

    S = construct_SH(profQI, 2)
    det = detect_quadratic_type(S)
    assert det.profile.tag == "separable-quadratic"
    assert det.q_coeffs == profQI.norm_coeffs
    lam = QI.as_scalar(det.B.gram.entry(0, 0))
    assert lam is not None and lam != 0


def test_alternating_maps_of_twisted_gram_over_quaternions(HQ, profH):
    # A_{b,D} for b = e(X* P Y) equals P^-1 SH_n over the quaternions too
    rng = random.Random(43)
    P = dmat.random_invertible_matrix(HQ, 2, rng)
    b = SesquilinearForm(profH, P).as_f_bilinear()
    S = alternating_maps(b, restrict_to_D=True)
    assert S == twisted_SH(profH, P)


def test_fuzzer_rejects_oversized_requests(F5):
    A = trivial_algebra(F5)
    from trivspec.errors import InputError

    with pytest.raises(InputError):
        random_space_fuzzer(A, 1, 1, 5, 1, seed=0)
