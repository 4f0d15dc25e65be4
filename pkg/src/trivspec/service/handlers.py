"""Shared execution layer behind the HTTP routes and the CLI.

Each handler takes a parsed request model and returns a ServiceResponse; the
CLI calls these in-process by default, the FastAPI app exposes them over
HTTP.  All randomness flows from the request seed; probabilistic verdicts
carry their failure bounds inside the result payload.
"""

from __future__ import annotations

import random

from .. import (
    alternators,
    applications,
    classify,
    constructions,
    dmat,
    genmat,
    intransitivity,
    oracle,
    serialization as ser,
)
from ..algebra import (
    classify_composition_form,
    default_extension,
    standard_profile,
    verify_division_algebra,
)
from ..errors import InputError, ToolkitError
from ..fields import field_from_json
from ..spaces import alpha
from ..verdicts import Budget
from .models import ServiceResponse

_VERDICT_STATUS = {
    "Certified": ("verified", 0),
    "CertifiedProbabilistic": ("verified", 0),
    "CertifiedByAlternator": ("verified", 0),
    "Refuted": ("refuted", 1),
    "Probable": ("unknown", 2),
    "Unknown": ("unknown", 2),
    "BudgetExceeded": ("unknown", 2),
}


def _ok(command, result, status="ok", exit_code=0):
    return ServiceResponse(command=command, status=status, exit_code=exit_code, result=result)


def _from_verdict(command, verdict, extra=None):
    status, code = _VERDICT_STATUS.get(verdict.kind, ("unknown", 2))
    result = {"verdict": verdict.to_json()}
    if extra:
        result.update(extra)
    return ServiceResponse(command=command, status=status, exit_code=code, result=result)


def _error(command, exc):
    if isinstance(exc, ToolkitError):
        code = exc.exit_code
        payload = exc.payload()
    else:
        code = 4
        payload = {"type": type(exc).__name__, "message": str(exc)}
    status = {1: "refuted", 2: "unknown", 3: "error", 4: "error"}[code]
    return ServiceResponse(command=command, status=status, exit_code=code, result={}, error=payload)


def _algebra_of(req):
    if getattr(req, "algebra_spec", None):
        return ser.parse_algebra_spec(req.algebra_spec)
    if getattr(req, "algebra", None) is not None:
        return ser.algebra_from_json(req.algebra)
    raise InputError("request needs 'algebra' or 'algebra_spec'", at="algebra")


def _rng(req):
    return random.Random(req.seed)


def _budget(req):
    return Budget(req.budget)


def guard(command):
    def wrap(fn):
        def inner(req):
            try:
                return fn(req)
            except ToolkitError as exc:
                return _error(command, exc)
            except Exception as exc:  # internal bug: exit 4
                return _error(command, exc)

        inner.command = command
        inner.__name__ = fn.__name__
        return inner

    return wrap


# -- algebra ------------------------------------------------------------------


@guard("algebra verify")
def algebra_verify(req):
    alg = _algebra_of(req)
    verdict = verify_division_algebra(alg, budget=_budget(req), rng=_rng(req))
    return _from_verdict("algebra verify", verdict, {"algebra": ser.algebra_to_json(alg)})


@guard("algebra profile")
def algebra_profile(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    prof.validate()
    return _ok("algebra profile", {"profile": prof.describe()})


@guard("algebra classify-form")
def algebra_classify_form(req):
    alg = _algebra_of(req)
    F = alg.field
    q = [[F.from_str(c) for c in row] for row in req.q_coeffs]
    prof = classify_composition_form(alg, q, budget=_budget(req))
    return _ok("algebra classify-form", {"profile": prof.describe()})


# -- constructs ------------------------------------------------------------------


@guard("construct triangular")
def construct_triangular(req):
    alg = _algebra_of(req)
    hyperplanes = None
    if req.hyperplanes is not None:
        F = alg.field
        hyperplanes = [
            [tuple(F.from_str(c) for c in v) for v in H] for H in req.hyperplanes
        ]
    space = constructions.construct_triangular_model(alg, req.n, hyperplanes)
    return _ok(
        "construct triangular",
        {"space": ser.space_to_json(space), "dim": space.dim, "alpha": alpha(req.n, alg.degree)},
    )


@guard("construct sh")
def construct_sh(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    space = constructions.construct_SH(prof, req.n)
    return _ok(
        "construct sh",
        {"space": ser.space_to_json(space), "dim": space.dim, "alpha": alpha(req.n, alg.degree)},
    )


@guard("construct twisted-sh")
def construct_twisted_sh(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    if req.p_matrix is not None:
        P = ser.matrix_from_json(alg, req.p_matrix, at="p_matrix")
    else:
        P = dmat.random_invertible_matrix(alg, req.n, _rng(req))
    space = constructions.twisted_SH(prof, P)
    return _ok(
        "construct twisted-sh",
        {
            "space": ser.space_to_json(space),
            "dim": space.dim,
            "twist": ser.matrix_to_json(P),
            "alpha": alpha(req.n, alg.degree),
        },
    )


@guard("construct hermitian")
def construct_hermitian(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    space = applications.hermitian_space(prof, req.n)
    return _ok("construct hermitian", {"space": ser.space_to_json(space), "dim": space.dim})


@guard("construct affine-minrank")
def construct_affine_minrank(req):
    alg = _algebra_of(req)
    aff = applications.build_affine_minrank(alg, req.n, req.p, req.r)
    codim = alg.degree * req.n * req.p - aff.direction.dim
    return _ok(
        "construct affine-minrank",
        {"affine": ser.affine_to_json(aff), "codim": codim},
    )


@guard("construct affine-nonsingular")
def construct_affine_nonsingular(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    from ..dmat import DMatrix

    if req.grams is not None:
        grams = [
            ser.matrix_from_json(alg, g, at=f"grams[{i}]") for i, g in enumerate(req.grams)
        ]
    else:
        grams = [DMatrix.identity(alg, size) for size in req.partition]
    aff = applications.build_affine_nonsingular(prof, req.partition, grams, budget=_budget(req))
    return _ok(
        "construct affine-nonsingular",
        {
            "affine": ser.affine_to_json(aff),
            "dim": aff.direction.dim,
            "nonisotropy": [v.to_json() for v in aff.nonisotropy_verdicts],
        },
    )


@guard("construct diag-model")
def construct_diag_model(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    space = applications.diag_model_C(prof, req.n)
    return _ok("construct diag-model", {"space": ser.space_to_json(space), "dim": space.dim})


@guard("construct sb")
def construct_sb(req):
    F = field_from_json(req.field)
    gram = [[F.from_str(c) for c in row] for row in req.gram]
    space = applications.semisimple_space_Sb(F, gram, budget=_budget(req))
    return _ok(
        "construct sb",
        {
            "space": ser.space_to_json(space),
            "dim": space.dim,
            "nonisotropy": space.nonisotropy_verdict.to_json(),
        },
    )


# -- verification ------------------------------------------------------------------


@guard("verify spectrum")
def verify_spectrum(req):
    space = ser.space_from_json(req.space)
    verdict = constructions.has_trivial_spectrum(space, budget=_budget(req), rng=_rng(req))
    return _from_verdict("verify spectrum", verdict, {"dim": space.dim})


@guard("verify minrank")
def verify_minrank(req):
    aff = ser.affine_from_json(req.affine)
    verdict = applications.verify_minrank(aff, req.r, budget=_budget(req), rng=_rng(req))
    return _from_verdict("verify minrank", verdict)


@guard("verify deep-intransitive")
def verify_deep_intransitive(req):
    space = ser.space_from_json(req.space)
    verdict = intransitivity.is_deeply_intransitive(space, budget=_budget(req), rng=_rng(req))
    return _from_verdict("verify deep-intransitive", verdict)


@guard("verify primitive")
def verify_primitive(req):
    space = ser.space_from_json(req.space)
    verdict = intransitivity.is_primitively_intransitive(space, budget=_budget(req))
    return _from_verdict("verify primitive", verdict)


@guard("verify atkinson")
def verify_atkinson(req):
    space = ser.space_from_json(req.space)
    report = intransitivity.verify_atkinson_bounds(space, budget=_budget(req), rng=_rng(req))
    status = "verified" if report.passed else "refuted"
    return ServiceResponse(
        command="verify atkinson",
        status=status,
        exit_code=0 if report.passed else 1,
        result={"report": report.to_json()},
    )


@guard("verify idempotent-property")
def verify_idempotent_property(req):
    space = ser.space_from_json(req.space)
    verdict = applications.has_full_rank1_idempotent_property(
        space, budget=_budget(req), rng=_rng(req)
    )
    return _from_verdict("verify idempotent-property", verdict)


@guard("verify equivalence")
def verify_equivalence(req):
    alg = _algebra_of(req)
    prof = standard_profile(alg)
    P = ser.matrix_from_json(alg, req.p_matrix, at="p_matrix")
    P2 = ser.matrix_from_json(alg, req.p2_matrix, at="p2_matrix")
    Q = ser.matrix_from_json(alg, req.q_matrix, at="q_matrix")
    alpha_scalar = alg.field.from_str(req.alpha)
    ok = applications.verify_equivalence_certificate(prof, P, P2, alpha_scalar, Q)
    return ServiceResponse(
        command="verify equivalence",
        status="verified" if ok else "refuted",
        exit_code=0 if ok else 1,
        result={"equivalent": ok},
    )


# -- alternators ----------------------------------------------------------------


@guard("alternator compute")
def alternator_compute(req):
    space = ser.space_from_json(req.space)
    alts = alternators.alternator_space(space)
    return _ok(
        "alternator compute",
        {"dim": len(alts), "basis": [ser.form_to_json(b) for b in alts]},
    )


@guard("alternator detect-type")
def alternator_detect_type(req):
    space = ser.space_from_json(req.space)
    det = alternators.detect_quadratic_type(space, budget=_budget(req))
    return _ok(
        "alternator detect-type",
        {
            "profile": det.profile.describe(),
            "bilinear": ser.form_to_json(det.b),
            "gram_over_D": det.B.gram.to_strs(),
        },
    )


# -- generic matrices --------------------------------------------------------------


@guard("generic rank")
def generic_rank(req):
    space = ser.space_from_json(req.space)
    pm = genmat.generic_of(space)
    res = genmat.poly_rank(pm, rng=_rng(req))
    return _ok(
        "generic rank",
        {
            "rank": res.value,
            "kind": res.kind,
            "failure_bound": res.failure_bound,
            "fraction_field_only": res.fraction_field_only,
        },
    )


@guard("generic catchers")
def generic_catchers(req):
    space = ser.space_from_json(req.space)
    pm = genmat.generic_of(space)
    rows = genmat.catchers(pm)
    return _ok(
        "generic catchers",
        {
            "dim": len(rows),
            "rows": [[e.to_str() for e in row] for row in rows],
        },
    )


@guard("generic fa-check")
def generic_fa_check(req):
    space = ser.space_from_json(req.space)
    report = genmat.flanders_atkinson_check(space, req.r, budget=_budget(req), rng=_rng(req))
    return ServiceResponse(
        command="generic fa-check",
        status="verified",
        exit_code=0,
        result={
            "r": report.r,
            "maxrank": report.maxrank,
            "rank_kind": report.rank_kind,
            "identities_checked": report.identities_checked,
        },
    )


# -- classification -----------------------------------------------------------------


@guard("classify optimal")
def classify_optimal(req):
    space = ser.space_from_json(req.space)
    report = classify.classify_optimal(space, budget=_budget(req), rng=_rng(req))
    return _ok("classify optimal", {"report": report.to_json()})


# -- oracles ---------------------------------------------------------------------


def _search_algebra(req):
    if getattr(req, "algebra", None) is not None or getattr(req, "algebra_spec", None):
        return _algebra_of(req)
    if req.field:
        alg = ser.parse_algebra_spec(req.field)
        if alg.degree != 1:
            raise InputError("use --field for the base prime field only", at="field")
        if req.degree == 1:
            return alg
        return default_extension(alg.field, req.degree)
    raise InputError("search needs an algebra or a field spec", at="field")


@guard("search maxdim-trivspec")
def search_maxdim_trivspec(req):
    alg = _search_algebra(req)
    res = oracle.exhaustive_max_trivspec(alg, req.n, budget=_budget(req))
    code = 0 if res.exhausted else 2
    return ServiceResponse(
        command="search maxdim-trivspec",
        status="verified" if res.exhausted else "unknown",
        exit_code=code,
        result=res.to_json() | {"alpha": alpha(req.n, alg.degree), "seed": req.seed, "budget": req.budget},
    )


@guard("search maxdim-diag")
def search_maxdim_diag(req):
    alg = _search_algebra(req)
    res = oracle.exhaustive_max_diagonalisable(alg, req.n, budget=_budget(req))
    return ServiceResponse(
        command="search maxdim-diag",
        status="verified" if res.exhausted else "unknown",
        exit_code=0 if res.exhausted else 2,
        result=res.to_json() | {"seed": req.seed, "budget": req.budget},
    )


@guard("search maxdim-semisimple")
def search_maxdim_semisimple(req):
    alg = _search_algebra(req)
    res = oracle.exhaustive_max_semisimple(alg, req.n, budget=_budget(req))
    return ServiceResponse(
        command="search maxdim-semisimple",
        status="verified" if res.exhausted else "unknown",
        exit_code=0 if res.exhausted else 2,
        result=res.to_json() | {"seed": req.seed, "budget": req.budget},
    )


# -- bundles ---------------------------------------------------------------------


def run_bundle(req):
    from .dispatch import dispatch_command

    responses = []
    worst = 0
    for job in req.jobs:
        args = dict(job.args)
        args.setdefault("seed", req.seed)
        args.setdefault("budget", req.budget)
        resp = dispatch_command(job.command, args)
        worst = max(worst, resp.exit_code)
        responses.append(resp.payload())
    return ServiceResponse(
        command="report bundle",
        status="ok" if worst == 0 else "error",
        exit_code=worst,
        result={"jobs": responses},
    )
