"""Canonical JSON encoding of every wire-visible object.

Scalars are decimal strings (rationals as "p/q", rational functions as
polynomial fractions in the field variable); all maps are emitted with
sorted keys by the callers, so identical inputs and seeds give identical
bytes.  Decoders raise InputError with a JSON-pointer-style path.
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    QuadraticTypeProfile,
    default_extension,
    extension_algebra,
    quaternion_algebra,
    standard_profile,
    trivial_algebra,
)
from .applications import AffineSpace
from .dmat import DMatrix
from .errors import InputError
from .fields import (
    PrimeField,
    RationalField,
    RationalFunctionField,
    field_from_json,
)
from .spaces import DSubspace, OperatorSpace

SCHEMA = "trivspec/1"


# -- fields ------------------------------------------------------------------


def field_to_json(F):
    return F.describe()


# -- algebras ----------------------------------------------------------------


def algebra_to_json(alg):
    F = alg.field
    out = {
        "field": field_to_json(F),
        "degree": alg.degree,
        "structure": [
            [[F.to_str(c) for c in row] for row in block] for block in alg.structure
        ],
        "unit": [F.to_str(c) for c in alg.unit],
    }
    if alg.family:
        fam = {"kind": alg.family.get("kind")}
        if "minpoly" in alg.family:
            fam["minpoly"] = [F.to_str(c) for c in alg.family["minpoly"]]
        if "a" in alg.family:
            fam["a"] = F.to_str(alg.family["a"])
            fam["b"] = F.to_str(alg.family["b"])
        out["family"] = fam
    return out


def algebra_from_json(obj, at="algebra"):
    if not isinstance(obj, dict):
        raise InputError("algebra descriptor must be an object", at=at)
    try:
        F = field_from_json(obj["field"])
        d = int(obj["degree"])
        structure = [
            [[F.from_str(c) for c in row] for row in block] for block in obj["structure"]
        ]
        unit = [F.from_str(c) for c in obj["unit"]]
    except KeyError as exc:
        raise InputError(f"missing key {exc}", at=at)
    family = {}
    fam = obj.get("family") or {}
    if fam.get("kind"):
        family["kind"] = fam["kind"]
        if "minpoly" in fam:
            family["minpoly"] = tuple(F.from_str(c) for c in fam["minpoly"])
        if "a" in fam:
            family["a"] = F.from_str(fam["a"])
            family["b"] = F.from_str(fam["b"])
    alg = Algebra(F, structure, unit, family=family)
    if len(structure) != d:
        raise InputError("declared degree differs from structure constants", at=f"{at}.degree")
    if obj.get("profile") is not None:
        # optional embedded associated pair: validate it against the algebra
        profile_for(alg, obj["profile"])
    return alg


def profile_to_json(profile):
    return profile.describe()


def profile_for(alg, obj=None):
    """Profile from JSON (matrix data) or the standard one for the family."""
    if obj is None:
        return standard_profile(alg)
    F = alg.field
    sigma = [[F.from_str(c) for c in row] for row in obj["sigma"]]
    e_row = [F.from_str(c) for c in obj["e"]]
    prof = QuadraticTypeProfile(alg, obj.get("tag", "custom"), sigma, e_row)
    prof.validate()
    return prof


ALGEBRA_SPEC_HELP = (
    "fp:P | fq:P:D | rat | qi | qsqrt:C | quat:A:B | hyper:P | a JSON file path"
)


def parse_algebra_spec(spec):
    """Compact named descriptors for the built-in families."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "fp":
            return trivial_algebra(PrimeField(int(parts[1])))
        if kind == "fq":
            return default_extension(PrimeField(int(parts[1])), int(parts[2]))
        if kind == "rat":
            return trivial_algebra(RationalField())
        if kind == "qi":
            return extension_algebra(RationalField(), [1, 0, 1], name="Q(i)")
        if kind == "qsqrt":
            from fractions import Fraction

            c = Fraction(parts[1])
            return extension_algebra(RationalField(), [-c, 0, 1], name=f"Q(sqrt {c})")
        if kind == "quat":
            from fractions import Fraction

            a, b = Fraction(parts[1]), Fraction(parts[2])
            return quaternion_algebra(RationalField(), a, b)
        if kind == "hyper":
            p = int(parts[1])
            F = RationalFunctionField(p, "s")
            return extension_algebra(
                F, [F.variable_element(), F.zero, F.one], name=f"F{p}(s)(sqrt s)"
            )
    except (IndexError, ValueError) as exc:
        raise InputError(f"bad algebra spec {spec!r}: {exc}", at="algebra")
    raise InputError(
        f"unknown algebra spec {spec!r}; use {ALGEBRA_SPEC_HELP}", at="algebra"
    )


# -- matrices, vectors, spaces ------------------------------------------------


def matrix_to_json(M):
    return {"rows": M.n, "cols": M.p, "entries": M.to_strs()}


def matrix_from_json(alg, obj, at="matrix"):
    try:
        n, p = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed matrix: {exc}", at=at)
    F = alg.field
    rows = []
    if len(entries) != n:
        raise InputError("row count mismatch", at=f"{at}.entries")
    for i, row in enumerate(entries):
        if len(row) != p:
            raise InputError("column count mismatch", at=f"{at}.entries[{i}]")
        out = []
        for j, coords in enumerate(row):
            if len(coords) != alg.degree:
                raise InputError(
                    "coordinate length differs from the algebra degree",
                    at=f"{at}.entries[{i}][{j}]",
                )
            out.append(tuple(F.from_str(c) for c in coords))
        rows.append(out)
    return DMatrix(alg, rows)


def vector_to_json(alg, v):
    return [alg.to_strs(c) for c in v]


def vector_from_json(alg, obj, at="vector"):
    F = alg.field
    out = []
    for i, coords in enumerate(obj):
        if len(coords) != alg.degree:
            raise InputError("coordinate length mismatch", at=f"{at}[{i}]")
        out.append(tuple(F.from_str(c) for c in coords))
    return tuple(out)


def space_to_json(space):
    return {
        "ambient": {
            "algebra": algebra_to_json(space.alg),
            "rows": space.n,
            "cols": space.p,
        },
        "basis": [matrix_to_json(M) for M in space.basis],
    }


def space_from_json(obj, at="space"):
    try:
        amb = obj["ambient"]
        alg = algebra_from_json(amb["algebra"], at=f"{at}.ambient.algebra")
        n, p = int(amb["rows"]), int(amb["cols"])
        basis = obj["basis"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed space: {exc}", at=at)
    mats = [
        matrix_from_json(alg, m, at=f"{at}.basis[{i}]") for i, m in enumerate(basis)
    ]
    return OperatorSpace(alg, n, p, mats)


def subspace_to_json(W):
    return {"ambient": W.ambient_n, "basis": [vector_to_json(W.alg, v) for v in W.rows]}


def subspace_from_json(alg, obj, at="subspace"):
    vecs = [
        vector_from_json(alg, v, at=f"{at}.basis[{i}]")
        for i, v in enumerate(obj.get("basis", []))
    ]
    return DSubspace(alg, int(obj["ambient"]), vecs)


def affine_to_json(A):
    return {"base": matrix_to_json(A.base), "direction": space_to_json(A.direction)}


def affine_from_json(obj, at="affine"):
    direction = space_from_json(obj["direction"], at=f"{at}.direction")
    base = matrix_from_json(direction.alg, obj["base"], at=f"{at}.base")
    return AffineSpace(base, direction)


def form_to_json(b):
    F = b.alg.field
    return {
        "gram_F": [[F.to_str(c) for c in row] for row in b.gram],
        "source_cols": b.p,
        "target_rows": b.n,
    }


def form_from_json(alg, obj, at="form"):
    from .alternators import FBilinearForm

    F = alg.field
    gram = [[F.from_str(c) for c in row] for row in obj["gram_F"]]
    p = int(obj.get("source_cols", len(gram) // alg.degree))
    n = int(obj.get("target_rows", (len(gram[0]) if gram else 0) // alg.degree))
    return FBilinearForm(alg, p, n, gram)
