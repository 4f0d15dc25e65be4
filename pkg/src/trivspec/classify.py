"""Classification pipeline for optimal trivial-spectrum spaces.

The pipeline mirrors the structure theory: invariant subspaces must form a
chain, the space decomposes as the joint of irreducible blocks along the
flag, size-1 blocks are F-hyperplanes of D avoiding 1, and larger blocks are
alternating spaces of a recovered sesquilinear form of quadratic type.
Reports are canonical: same input, same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dmat
from .alternators import alternating_maps, detect_quadratic_type
from .constructions import has_trivial_spectrum, is_e_nonisotropic
from .dmat import DMatrix
from .errors import (
    CardinalityHypothesisFails,
    HypothesisFails,
    InputError,
    InternalInvariantViolation,
    NotOptimalDim,
    SpectrumNotTrivial,
)
from .spaces import alpha, flag_decomposition, joint
from .verdicts import Budget, Verdict, CERTIFIED


@dataclass
class BlockReport:
    size: int
    tag: str  # "hyperplane" | "quadratic-type"
    dim: int
    profile: dict = field(default_factory=dict)
    bilinear_gram: list = field(default_factory=list)
    sesquilinear_gram: list = field(default_factory=list)
    e_nonisotropy: str = ""
    block_matches_alternating_space: bool = True

    def to_json(self):
        out = {"size": self.size, "tag": self.tag, "dim": self.dim}
        if self.profile:
            out["profile"] = self.profile
        if self.bilinear_gram:
            out["bilinear_gram"] = self.bilinear_gram
        if self.sesquilinear_gram:
            out["sesquilinear_gram"] = self.sesquilinear_gram
        if self.e_nonisotropy:
            out["e_nonisotropy"] = self.e_nonisotropy
        out["block_matches_alternating_space"] = self.block_matches_alternating_space
        return out


@dataclass
class ClassificationReport:
    n: int
    d: int
    dim: int
    partition: tuple
    flag_keys: list
    blocks: list
    spectrum: str
    verdict: str

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "dim": self.dim,
            "partition": list(self.partition),
            "flag": self.flag_keys,
            "blocks": [b.to_json() for b in self.blocks],
            "spectrum": self.spectrum,
            "verdict": self.verdict,
        }


def classify_optimal(space, budget=None, rng=None):
    """Classify an optimal trivial-spectrum endomorphism space.

    Preconditions: square ambient, |F| >= nd, dimension exactly alpha(n, d)
    and certified trivial spectrum.  The block structure is recovered through
    the invariant flag; per-block verification follows the quadratic-type or
    hyperplane route depending on the block size.
    """
    alg = space.alg
    if space.n != space.p:
        raise InputError("classification needs an endomorphism space")
    n, d = space.n, alg.degree
    budget = budget or Budget()
    card = alg.field.cardinality
    if card is not None and card < n * d:
        raise CardinalityHypothesisFails(
            "classification requires |F| >= nd; refusing to extrapolate",
            card=card,
            nd=n * d,
        )
    if space.dim != alpha(n, d):
        raise NotOptimalDim("dimension differs from alpha(n, d)", dim=space.dim)
    spectrum = has_trivial_spectrum(space, budget=budget, rng=rng)
    if not spectrum.is_certified:
        raise SpectrumNotTrivial(
            "trivial spectrum is not certified",
            verdict=spectrum.kind,
            witness=spectrum.witness,
        )

    deco = flag_decomposition(space, budget=budget)
    partition = deco.partition
    blocks = []
    for size, block in zip(partition, deco.blocks):
        if size == 1:
            blocks.append(_classify_line_block(alg, block))
        else:
            blocks.append(_classify_big_block(alg, block, budget))
    reconstructed = joint(deco.blocks, alg=alg)
    conjugated = space.conjugate(deco.conjugator)
    if reconstructed != conjugated:
        raise InternalInvariantViolation(
            "flag blocks do not reconstruct the space as their joint",
            at="joint-reconstruction",
        )
    verdict = "classified"
    report = ClassificationReport(
        n=n,
        d=d,
        dim=space.dim,
        partition=partition,
        flag_keys=[list(map(list, W.key())) for W in deco.flag.subspaces],
        blocks=blocks,
        spectrum=spectrum.kind,
        verdict=verdict,
    )
    return report


def _classify_line_block(alg, block):
    """A 1x1 block must be an F-hyperplane of D that avoids the identity."""
    d = alg.degree
    if block.dim != d - 1:
        raise InternalInvariantViolation(
            "size-1 block is not a hyperplane of D", dim=block.dim
        )
    one = DMatrix.identity(alg, 1)
    if block.contains(one):
        raise InternalInvariantViolation("size-1 block contains the identity")
    return BlockReport(size=1, tag="hyperplane", dim=block.dim)


def _classify_big_block(alg, block, budget):
    detection = detect_quadratic_type(block, budget=budget)
    expected = alternating_maps(detection.b, restrict_to_D=True)
    matches = expected == block
    if not matches:
        raise InternalInvariantViolation(
            "block is not the alternating space of its recovered form"
        )
    noniso = is_e_nonisotropic(detection.profile, detection.B.gram, budget=budget)
    return BlockReport(
        size=block.n,
        tag="quadratic-type",
        dim=block.dim,
        profile=detection.profile.describe(),
        bilinear_gram=[[alg.field.to_str(c) for c in row] for row in detection.b.gram],
        sesquilinear_gram=detection.B.gram.to_strs(),
        e_nonisotropy=noniso.kind,
        block_matches_alternating_space=matches,
    )


def verify_invariant_subspace_lemma(space, W, budget=None, rng=None):
    """Check the invariant-subspace conclusion on a verified instance.

    Hypotheses: the space has (certified) trivial spectrum and contains every
    operator u with im u inside W inside Ker u.  On such instances W must be
    invariant; a failure would contradict the lemma and raises an internal
    invariant violation.
    """
    alg = space.alg
    if space.n != space.p:
        raise InputError("the lemma concerns endomorphism spaces")
    n, t = space.n, W.dim
    budget = budget or Budget()
    spectrum = has_trivial_spectrum(space, budget=budget, rng=rng)
    if not spectrum.is_certified:
        raise HypothesisFails(
            "trivial spectrum is not certified", verdict=spectrum.kind,
            witness=spectrum.witness,
        )
    if t == 0 or t == n:
        return Verdict(CERTIFIED, reason="trivial subspace is always invariant")
    # basis of {u : im u inside W inside Ker u} in ambient coordinates
    cols = list(W.rows)
    col_rows, col_piv = dmat.right_rref(alg, cols)
    for i in range(n):
        v = dmat.standard_vector(alg, n, i)
        red = dmat.right_reduce(alg, v, col_rows, col_piv)
        if not dmat.vec_is_zero(alg, red):
            cols.append(v)
            col_rows, col_piv = dmat.right_rref(alg, cols)
        if len(cols) == n:
            break
    Q = DMatrix(alg, [[cols[j][i] for j in range(n)] for i in range(n)])
    Qinv = dmat.invert(Q)
    for r in range(t):
        for c in range(n - t):
            for k in range(alg.degree):
                inner = DMatrix.unit(alg, n, n, r, t + c, alg.basis_element(k))
                u = Q.matmul(inner).matmul(Qinv)
                if not space.contains(u):
                    raise HypothesisFails(
                        "space misses an operator with im u in W in Ker u",
                        block_entry=(r, c, k),
                    )
    for M in space.basis:
        for v in W.rows:
            if not W.contains(M.apply(v)):
                raise InternalInvariantViolation(
                    "hypotheses certified but W is not invariant (lemma violated)"
                )
    return Verdict(CERTIFIED, reason="W is invariant under every basis operator")
