"""Command-name dispatch shared by the CLI and the bundle runner."""

from __future__ import annotations

from . import handlers
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
    ServiceResponse,
    SpaceRequest,
    VerifyEquivalenceRequest,
    VerifyMinrankRequest,
)

COMMANDS = {
    "algebra verify": (AlgebraRequest, handlers.algebra_verify),
    "algebra profile": (AlgebraRequest, handlers.algebra_profile),
    "algebra classify-form": (ClassifyCompositionRequest, handlers.algebra_classify_form),
    "construct triangular": (ConstructTriangularRequest, handlers.construct_triangular),
    "construct sh": (ConstructShRequest, handlers.construct_sh),
    "construct twisted-sh": (ConstructTwistedShRequest, handlers.construct_twisted_sh),
    "construct hermitian": (ConstructHermitianRequest, handlers.construct_hermitian),
    "construct affine-minrank": (
        ConstructAffineMinrankRequest,
        handlers.construct_affine_minrank,
    ),
    "construct affine-nonsingular": (
        ConstructAffineNonsingularRequest,
        handlers.construct_affine_nonsingular,
    ),
    "construct diag-model": (ConstructDiagModelRequest, handlers.construct_diag_model),
    "construct sb": (ConstructSbRequest, handlers.construct_sb),
    "verify spectrum": (SpaceRequest, handlers.verify_spectrum),
    "verify minrank": (VerifyMinrankRequest, handlers.verify_minrank),
    "verify deep-intransitive": (SpaceRequest, handlers.verify_deep_intransitive),
    "verify primitive": (SpaceRequest, handlers.verify_primitive),
    "verify atkinson": (SpaceRequest, handlers.verify_atkinson),
    "verify idempotent-property": (SpaceRequest, handlers.verify_idempotent_property),
    "verify equivalence": (VerifyEquivalenceRequest, handlers.verify_equivalence),
    "alternator compute": (SpaceRequest, handlers.alternator_compute),
    "alternator detect-type": (SpaceRequest, handlers.alternator_detect_type),
    "generic rank": (SpaceRequest, handlers.generic_rank),
    "generic catchers": (SpaceRequest, handlers.generic_catchers),
    "generic fa-check": (GenericFaRequest, handlers.generic_fa_check),
    "classify optimal": (SpaceRequest, handlers.classify_optimal),
    "search maxdim-trivspec": (SearchRequest, handlers.search_maxdim_trivspec),
    "search maxdim-diag": (SearchRequest, handlers.search_maxdim_diag),
    "search maxdim-semisimple": (SearchRequest, handlers.search_maxdim_semisimple),
}


def dispatch_command(command, args):
    """Run a named command on raw argument dicts (in-process)."""
    if command == "report bundle":
        req = BundleRequest.model_validate(args)
        return handlers.run_bundle(req)
    if command not in COMMANDS:
        return ServiceResponse(
            command=command,
            status="error",
            exit_code=3,
            result={},
            error={"type": "InputError", "message": f"unknown command {command!r}"},
        )
    model, fn = COMMANDS[command]
    try:
        req = model.model_validate(args)
    except Exception as exc:
        return ServiceResponse(
            command=command,
            status="error",
            exit_code=3,
            result={},
            error={"type": "InputError", "message": str(exc)},
        )
    return fn(req)
