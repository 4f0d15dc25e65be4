"""Intransitivity hierarchy checks and the dimension-bound report.

Intransitive: S x never fills the target.  Deeply intransitive: the same
after restricting the target to every nonzero D-subspace.  Primitively
intransitive: no quotient projection of S is intransitive.  The bound
report asserts the critical-dimension inequalities and the 1-dimensional
alternator conclusion on instances whose hypotheses are certified, and
treats any violation as an internal bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dmat, flinalg
from .alternators import alternator_space, detect_quadratic_type
from .dmat import DMatrix
from .errors import (
    BoundViolated,
    BudgetExceeded,
    CardinalityHypothesisFails,
    InputError,
)
from .spaces import OperatorSpace, alpha, d_subspaces, transitive_rank
from .verdicts import (
    Budget,
    CERTIFIED,
    CERTIFIED_BY_ALTERNATOR,
    REFUTED,
    UNKNOWN,
    Verdict,
)


def is_intransitive(space, target=None, budget=None, rng=None):
    """S x != V for every x, where V defaults to the full target space."""
    target_f_dim = (
        space.alg.degree * space.n if target is None else space.alg.degree * target.dim
    )
    if target_f_dim == 0:
        return False
    value, _ = transitive_rank(space, budget=budget, rng=rng)
    return value < target_f_dim


def restrict_target(space, subspace):
    """S^{V'} = {u in S : im u inside V'}, as a space with the same ambient."""
    alg = space.alg
    F = alg.field
    WF = subspace.as_f_subspace()
    rows = []
    residuals = []
    for M in space.basis:
        cols = []
        for j in range(space.p):
            cols.append(WF.residual(dmat.vec_flat(M.column(j))))
        residuals.append([c for col in cols for c in col])
    nunk = space.dim
    if not residuals:
        return space
    for coord in range(len(residuals[0])):
        rows.append([residuals[k][coord] for k in range(nunk)])
    kernel = flinalg.kernel_basis(rows, F)
    mats = [space.element_from_coeffs(coeffs) for coeffs in kernel]
    return OperatorSpace(alg, space.n, space.p, mats)


def quotient_space(space, subspace):
    """pi S inside Hom(U, V / V') in adapted coordinates.

    Returns the operator space of (n - t) x p matrices of the compositions
    pi o u, where pi drops onto the quotient along an adapted basis.
    """
    alg = space.alg
    n, t = space.n, subspace.dim
    if t >= n:
        raise InputError("quotient by the full space is empty")
    cols = list(subspace.rows)
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
    mats = []
    for M in space.basis:
        T = Qinv.matmul(M)
        mats.append(DMatrix(alg, [list(T.rows[i]) for i in range(t, n)]))
    return OperatorSpace(alg, n - t, space.p, mats)


def _charge_subspace_scan(space, budget, dims):
    alg = space.alg
    q = alg.cardinality
    if q is None:
        return None
    total = 0
    from .spaces import count_projective_points

    per_point = count_projective_points(alg, space.p)
    for k in dims:
        if k == 0 or k == space.n:
            count = 1
        else:
            count = _gaussian_binomial(q, space.n, k)
        total += count * (per_point + space.dim)
    if not budget.affords(total):
        raise BudgetExceeded("D-subspace scan exceeds budget", needed=total)
    budget.charge(total)
    return total


def _gaussian_binomial(q, n, k):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def is_deeply_intransitive(space, budget=None, rng=None):
    """Verdict on deep intransitivity.

    Finite fields enumerate every nonzero D-subspace of the target within
    budget.  Over infinite fields a right-nondegenerate alternator certifies
    the property; otherwise the verdict degrades to Unknown.
    """
    alg = space.alg
    budget = budget or Budget()
    if space.n == 0:
        return Verdict(REFUTED, reason="the target space is zero")
    if alg.cardinality is not None:
        try:
            _charge_subspace_scan(space, budget, range(1, space.n + 1))
        except BudgetExceeded as exc:
            alt = _alternator_certificate(space)
            if alt is not None:
                return alt
            return Verdict(UNKNOWN, reason=str(exc))
        for k in range(1, space.n + 1):
            for W in d_subspaces(alg, space.n, k):
                restricted = restrict_target(space, W)
                if not is_intransitive(restricted, target=W, budget=budget, rng=rng):
                    return Verdict(
                        REFUTED,
                        reason="restriction is transitive onto the subspace",
                        witness={"subspace": W.key()},
                    )
        return Verdict(CERTIFIED, reason="exhaustive D-subspace scan")
    alt = _alternator_certificate(space)
    if alt is not None:
        return alt
    return Verdict(UNKNOWN, reason="no right-nondegenerate alternator found")


def _alternator_certificate(space):
    for b in alternator_space(space):
        if b.is_right_nondegenerate():
            return Verdict(
                CERTIFIED_BY_ALTERNATOR,
                reason="right-nondegenerate alternator",
            )
    return None


def is_primitively_intransitive(space, budget=None):
    """Intransitive, and no nonzero target subspace makes the projection intransitive."""
    alg = space.alg
    if alg.cardinality is None:
        raise InputError("primitive intransitivity scan needs a finite field")
    budget = budget or Budget()
    if not is_intransitive(space, budget=budget):
        return Verdict(REFUTED, reason="the space itself is transitive")
    _charge_subspace_scan(space, budget, range(1, space.n))
    for k in range(1, space.n):
        for W in d_subspaces(alg, space.n, k):
            projected = quotient_space(space, W)
            if is_intransitive(projected, budget=budget):
                return Verdict(
                    REFUTED,
                    reason="a projection is intransitive",
                    witness={"subspace": W.key()},
                )
    return Verdict(CERTIFIED, reason="all proper projections are transitive")


def is_weakly_primitively_intransitive(space, budget=None):
    """No D-line in the target drops the transitive rank by d under projection."""
    alg = space.alg
    if alg.cardinality is None:
        raise InputError("weak primitivity scan needs a finite field")
    budget = budget or Budget()
    base_rank, _ = transitive_rank(space, budget=budget)
    _charge_subspace_scan(space, budget, [1])
    for W in d_subspaces(alg, space.n, 1):
        projected = quotient_space(space, W)
        rank, _ = transitive_rank(projected, budget=budget)
        if rank <= base_rank - alg.degree:
            return Verdict(
                REFUTED,
                reason="a line projection drops the transitive rank by d",
                witness={"subspace": W.key(), "rank": rank, "base_rank": base_rank},
            )
    return Verdict(CERTIFIED, reason="no line projection drops the rank by d")


@dataclass
class AtkinsonReport:
    n: int
    d: int
    dim: int
    trk: int
    alpha_bound: int
    clause_a: bool = False
    clause_b_applies: bool = False
    clause_b: bool = True
    clause_c_applies: bool = False
    alt_dim: int = -1
    alt_right_nondegenerate: bool = False
    profile_tag: str = ""
    gram_over_D: list = field(default_factory=list)

    @property
    def passed(self):
        ok = self.clause_a and self.clause_b
        if self.clause_c_applies:
            ok = ok and self.alt_dim == 1 and self.alt_right_nondegenerate and self.profile_tag
        return bool(ok)

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "dim": self.dim,
            "trk": self.trk,
            "alpha": self.alpha_bound,
            "clause_a": self.clause_a,
            "clause_b_applies": self.clause_b_applies,
            "clause_b": self.clause_b,
            "clause_c_applies": self.clause_c_applies,
            "alt_dim": self.alt_dim,
            "alt_right_nondegenerate": self.alt_right_nondegenerate,
            "profile_tag": self.profile_tag,
            "passed": self.passed,
        }


def verify_atkinson_bounds(space, deep_verdict=None, budget=None, rng=None):
    """Assert the dimension bounds and the alternator structure clause.

    Requires a certified deep-intransitivity verdict and |F| >= nd; a failed
    inequality on such an instance would falsify the bound theorem and is
    raised as an internal invariant violation.
    """
    alg = space.alg
    n, d = space.n, alg.degree
    budget = budget or Budget()
    card = alg.field.cardinality
    if card is not None and card < n * d:
        raise CardinalityHypothesisFails(
            "the bound theorem needs |F| >= nd", card=card, nd=n * d
        )
    if deep_verdict is None:
        deep_verdict = is_deeply_intransitive(space, budget=budget, rng=rng)
    if deep_verdict.kind not in (CERTIFIED, CERTIFIED_BY_ALTERNATOR):
        raise InputError(
            "deep intransitivity must be certified before asserting the bounds",
            verdict=deep_verdict.kind,
        )
    bound = alpha(n, d)
    trk, _ = transitive_rank(space, budget=budget, rng=rng)
    report = AtkinsonReport(n=n, d=d, dim=space.dim, trk=trk, alpha_bound=bound)
    report.clause_a = space.dim <= bound
    if not report.clause_a:
        raise BoundViolated("dimension exceeds the critical bound", dim=space.dim, bound=bound)
    if trk < n * d - 1:
        report.clause_b_applies = True
        cap = bound - n + max(2 - d, 0)
        report.clause_b = space.dim <= cap
        if not report.clause_b:
            raise BoundViolated(
                "low transitive rank bound violated", dim=space.dim, cap=cap
            )
    if space.dim >= bound - n + max(4 - d, 2):
        report.clause_c_applies = True
        alts = alternator_space(space)
        report.alt_dim = len(alts)
        if len(alts) != 1:
            raise BoundViolated("alternator space is not a line", alt_dim=len(alts))
        report.alt_right_nondegenerate = alts[0].is_right_nondegenerate()
        if not report.alt_right_nondegenerate:
            raise BoundViolated("the alternator is right-degenerate")
        detection = detect_quadratic_type(space, budget=budget)
        report.profile_tag = detection.profile.tag
        report.gram_over_D = detection.B.gram.to_strs()
    return report
