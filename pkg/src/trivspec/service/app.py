"""FastAPI application exposing the toolkit as a verification service.

Every route mirrors one CLI subcommand; the CLI is a thin client over the
same handlers.  Run with `uvicorn trivspec.service.app:app`.
"""

from __future__ import annotations

from fastapi import FastAPI

from . import handlers
from .dispatch import COMMANDS
from .models import (
    AlgebraRequest,
    BundleRequest,
    ClassifyCompositionRequest,
    ConstructAffineMinrankRequest,
    ConstructAffineNonsingularRequest,
    ConstructDiagModelRequest,
    ConstructHermitianRequest,
    ConstructSbRequest,
    ConstructShRequest,
    ConstructTriangularRequest,
    ConstructTwistedShRequest,
    GenericFaRequest,
    SearchRequest,
    SpaceRequest,
    VerifyEquivalenceRequest,
    VerifyMinrankRequest,
)

app = FastAPI(
    title="trivspec",
    description="Exact verification service for trivial-spectrum matrix spaces "
    "over division algebras",
    version="0.1.0",
)


def _route_path(command):
    return "/v1/" + command.replace(" ", "/")


@app.get("/v1/health")
def health():
    return {"schema": "trivspec/1", "status": "ok", "commands": sorted(COMMANDS)}


@app.post(_route_path("algebra verify"))
def algebra_verify(req: AlgebraRequest):
    return handlers.algebra_verify(req).payload()


@app.post(_route_path("algebra profile"))
def algebra_profile(req: AlgebraRequest):
    return handlers.algebra_profile(req).payload()


@app.post(_route_path("algebra classify-form"))
def algebra_classify_form(req: ClassifyCompositionRequest):
    return handlers.algebra_classify_form(req).payload()


@app.post(_route_path("construct triangular"))
def construct_triangular(req: ConstructTriangularRequest):
    return handlers.construct_triangular(req).payload()


@app.post(_route_path("construct sh"))
def construct_sh(req: ConstructShRequest):
    return handlers.construct_sh(req).payload()


@app.post(_route_path("construct twisted-sh"))
def construct_twisted_sh(req: ConstructTwistedShRequest):
    return handlers.construct_twisted_sh(req).payload()


@app.post(_route_path("construct hermitian"))
def construct_hermitian(req: ConstructHermitianRequest):
    return handlers.construct_hermitian(req).payload()


@app.post(_route_path("construct affine-minrank"))
def construct_affine_minrank(req: ConstructAffineMinrankRequest):
    return handlers.construct_affine_minrank(req).payload()


@app.post(_route_path("construct affine-nonsingular"))
def construct_affine_nonsingular(req: ConstructAffineNonsingularRequest):
    return handlers.construct_affine_nonsingular(req).payload()


@app.post(_route_path("construct diag-model"))
def construct_diag_model(req: ConstructDiagModelRequest):
    return handlers.construct_diag_model(req).payload()


@app.post(_route_path("construct sb"))
def construct_sb(req: ConstructSbRequest):
    return handlers.construct_sb(req).payload()


@app.post(_route_path("verify spectrum"))
def verify_spectrum(req: SpaceRequest):
    return handlers.verify_spectrum(req).payload()


@app.post(_route_path("verify minrank"))
def verify_minrank(req: VerifyMinrankRequest):
    return handlers.verify_minrank(req).payload()


@app.post(_route_path("verify deep-intransitive"))
def verify_deep_intransitive(req: SpaceRequest):
    return handlers.verify_deep_intransitive(req).payload()


@app.post(_route_path("verify primitive"))
def verify_primitive(req: SpaceRequest):
    return handlers.verify_primitive(req).payload()


@app.post(_route_path("verify atkinson"))
def verify_atkinson(req: SpaceRequest):
    return handlers.verify_atkinson(req).payload()


@app.post(_route_path("verify idempotent-property"))
def verify_idempotent_property(req: SpaceRequest):
    return handlers.verify_idempotent_property(req).payload()


@app.post(_route_path("verify equivalence"))
def verify_equivalence(req: VerifyEquivalenceRequest):
    return handlers.verify_equivalence(req).payload()


@app.post(_route_path("alternator compute"))
def alternator_compute(req: SpaceRequest):
    return handlers.alternator_compute(req).payload()


@app.post(_route_path("alternator detect-type"))
def alternator_detect_type(req: SpaceRequest):
    return handlers.alternator_detect_type(req).payload()


@app.post(_route_path("generic rank"))
def generic_rank(req: SpaceRequest):
    return handlers.generic_rank(req).payload()


@app.post(_route_path("generic catchers"))
def generic_catchers(req: SpaceRequest):
    return handlers.generic_catchers(req).payload()


@app.post(_route_path("generic fa-check"))
def generic_fa_check(req: GenericFaRequest):
    return handlers.generic_fa_check(req).payload()


@app.post(_route_path("classify optimal"))
def classify_optimal(req: SpaceRequest):
    return handlers.classify_optimal(req).payload()


@app.post(_route_path("search maxdim-trivspec"))
def search_maxdim_trivspec(req: SearchRequest):
    return handlers.search_maxdim_trivspec(req).payload()


@app.post(_route_path("search maxdim-diag"))
def search_maxdim_diag(req: SearchRequest):
    return handlers.search_maxdim_diag(req).payload()


@app.post(_route_path("search maxdim-semisimple"))
def search_maxdim_semisimple(req: SearchRequest):
    return handlers.search_maxdim_semisimple(req).payload()


@app.post(_route_path("report bundle"))
def report_bundle(req: BundleRequest):
    return handlers.run_bundle(req).payload()
