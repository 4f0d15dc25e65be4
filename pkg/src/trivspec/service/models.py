"""Pydantic request/response models for the verification service.

Requests carry either inline JSON objects (matching the library's canonical
schemas) or compact algebra spec strings; responses wrap the result payload
with a status and the exit code the CLI will use.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class ServiceRequest(BaseModel):
    seed: int = 0
    budget: int = 2**22
    deterministic: bool = False


class AlgebraRequest(ServiceRequest):
    algebra: Any = None  # JSON descriptor object
    algebra_spec: Optional[str] = None  # compact string, e.g. "fq:5:2"


class ConstructTriangularRequest(AlgebraRequest):
    n: int = 1
    hyperplanes: Optional[list] = None


class ConstructShRequest(AlgebraRequest):
    n: int = 1


class ConstructTwistedShRequest(AlgebraRequest):
    n: int = 1
    p_matrix: Any = None  # JSON matrix; random invertible when omitted


class ConstructHermitianRequest(AlgebraRequest):
    n: int = 1


class ConstructAffineMinrankRequest(AlgebraRequest):
    n: int = 1
    p: int = 1
    r: int = 1


class ConstructAffineNonsingularRequest(AlgebraRequest):
    partition: list[int] = Field(default_factory=lambda: [1])
    grams: Optional[list] = None  # JSON matrices; identity blocks when omitted


class ConstructDiagModelRequest(AlgebraRequest):
    n: int = 1


class ConstructSbRequest(ServiceRequest):
    field: Any = None  # field descriptor
    gram: list[list[str]] = Field(default_factory=list)


class SpaceRequest(ServiceRequest):
    space: Any = None


class VerifyMinrankRequest(ServiceRequest):
    affine: Any = None
    r: int = 1


class VerifyEquivalenceRequest(AlgebraRequest):
    p_matrix: Any = None
    p2_matrix: Any = None
    alpha: str = "1"
    q_matrix: Any = None


class GenericFaRequest(SpaceRequest):
    r: int = 1


class ClassifyCompositionRequest(AlgebraRequest):
    q_coeffs: list[list[str]] = Field(default_factory=list)


class SearchRequest(AlgebraRequest):
    field: Optional[str] = None  # e.g. "fp:3"
    degree: int = 1
    n: int = 1


class BundleJob(BaseModel):
    command: str
    args: dict = Field(default_factory=dict)


class BundleRequest(ServiceRequest):
    jobs: list[BundleJob] = Field(default_factory=list)


class ServiceResponse(BaseModel):
    schema_id: str = Field(default="trivspec/1", alias="schema")
    command: str
    status: str  # "verified" | "refuted" | "unknown" | "error" | "ok"
    exit_code: int
    result: dict = Field(default_factory=dict)
    error: Optional[dict] = None

    model_config = {"populate_by_name": True}

    def payload(self):
        return self.model_dump(by_alias=True, exclude_none=True)
