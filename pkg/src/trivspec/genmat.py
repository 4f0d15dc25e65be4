"""Generic matrices, generic rank, catchers and the rank-identity checkers.

The generic matrix of an operator space S is taken on the dual side: its
specialization at a source vector x is the F-matrix of the evaluation map
sending each basis operator to its value at x.  The fraction-field rank of
that matrix is the transitive rank; its catcher space (1-homogeneous left
annihilators) is isomorphic to the alternator space for target-reduced
spaces, and both facts are exposed as checkable reports.
"""

from __future__ import annotations

import math
import random as _random
from dataclasses import dataclass, field

from . import flinalg
from .errors import (
    HypothesisViolated,
    IdentityViolated,
    InputError,
    NotCollinear,
    NotTargetReduced,
    SpanningRankTooLow,
)
from .mpoly import MPoly
from .spaces import is_target_reduced


class PolyMatrix:
    """A matrix of multivariate polynomials with a declared homogeneity degree."""

    def __init__(self, ctx, nvars, rows, homogeneous_degree=None):
        self.ctx = ctx
        self.nvars = nvars
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise InputError("ragged polynomial matrix")
            for e in r:
                if e.nvars != nvars:
                    raise InputError("mixed variable counts in polynomial matrix")
                if homogeneous_degree is not None and not e.is_homogeneous(homogeneous_degree):
                    raise InputError(
                        f"entry is not {homogeneous_degree}-homogeneous"
                    )
        self.homogeneous_degree = homogeneous_degree

    def entry(self, i, j):
        return self.rows[i][j]

    def specialize(self, point):
        return [[e.eval(point) for e in row] for row in self.rows]

    def block(self, r0, r1, c0, c1):
        return PolyMatrix(
            self.ctx, self.nvars, [row[c0:c1] for row in self.rows[r0:r1]]
        )

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)

    def to_json(self):
        ctx = self.ctx
        return {
            "nvars": self.nvars,
            "entries": [
                [
                    [
                        {"monomial": list(e_), "coeff": ctx.to_str(c)}
                        for e_, c in entry.sorted_terms()
                    ]
                    for entry in row
                ]
                for row in self.rows
            ],
        }

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {self.nvars} vars)"


def poly_mat_mul(A, B):
    if A.ncols != B.nrows:
        raise InputError("polynomial matrix shapes do not compose")
    ctx, nv = A.ctx, A.nvars
    out = []
    for i in range(A.nrows):
        row = []
        for j in range(B.ncols):
            acc = MPoly.zero(ctx, nv)
            for k in range(A.ncols):
                if not A.rows[i][k].is_zero() and not B.rows[k][j].is_zero():
                    acc = acc.add(A.rows[i][k].mul(B.rows[k][j]))
            row.append(acc)
        out.append(row)
    return PolyMatrix(ctx, nv, out)


def generic_of(space):
    """Generic matrix of the dual operator space, shape (dn) x (dim S).

    Parameters are the dp F-coordinates of the source vector; specializing at
    x gives exactly the matrix of the evaluation map u -> u(x) in the space's
    canonical basis, so the specializations sweep the dual space.
    """
    alg = space.alg
    F = alg.field
    nvars = alg.degree * space.p
    fmats = [M.f_matrix() for M in space.basis]
    rows = []
    for i in range(alg.degree * space.n):
        row = []
        for j in range(space.dim):
            row.append(MPoly.linear(F, fmats[j][i]))
        rows.append(row)
    return PolyMatrix(F, nvars, rows, homogeneous_degree=1 if space.dim else None)


@dataclass
class RankResult:
    value: int
    kind: str  # "exact" | "probabilistic"
    failure_bound: str = ""
    fraction_field_only: bool = False
    witness_point: list = field(default_factory=list)


def poly_rank(pm, rng=None, budget=None, trials=None):
    """Rank over the fraction field of the polynomial ring.

    Exact fraction-free elimination runs when the matrix has at most 36
    cells; otherwise the rank is sampled at random points, with a reported
    Schwartz-Zippel failure bound below 2^-30.  When the base field has at
    most max-rank elements the specialization maximum may undershoot, so the
    result is flagged fraction_field_only.
    """
    F = pm.ctx
    if pm.nrows * pm.ncols <= 36:
        value = _bareiss_rank(pm)
        result = RankResult(value, "exact")
    else:
        rng = rng or _random.Random(0)
        delta = min(pm.nrows, pm.ncols)
        if F.cardinality is not None:
            q = F.cardinality
            if q <= delta:
                value = _bareiss_rank(pm)
                result = RankResult(value, "exact")
                result.fraction_field_only = q <= value
                return result
            per_trial = delta / q
        else:
            per_trial = delta / 2**31
        k = trials or max(1, math.ceil(30 / max(1e-9, -math.log2(per_trial))))
        best, best_point = 0, None
        for _ in range(k):
            point = _random_point(F, pm.nvars, rng)
            r = flinalg.rank(pm.specialize(point), F)
            if r > best:
                best, best_point = r, point
        result = RankResult(
            best,
            "probabilistic",
            failure_bound=f"<=({per_trial:.3g})^{k}",
            witness_point=[F.to_str(c) for c in best_point] if best_point else [],
        )
    q = F.cardinality
    if q is not None and q <= result.value:
        result.fraction_field_only = True
    return result


def _random_point(F, nvars, rng):
    if F.cardinality is not None:
        return [F.random(rng) for _ in range(nvars)]
    return [F.from_int(rng.randrange(2**31)) for _ in range(nvars)]


def _bareiss_rank(pm):
    """Fraction-free elimination; exact divisions are asserted."""
    ctx = pm.ctx
    W = [[MPoly(ctx, pm.nvars, dict(e.terms)) for e in row] for row in pm.rows]
    nrows, ncols = pm.nrows, pm.ncols
    prev = MPoly.constant(ctx, pm.nvars, ctx.one)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not W[i][c].is_zero()), None)
        if piv is None:
            continue
        W[r], W[piv] = W[piv], W[r]
        pivot = W[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = W[i][j].mul(pivot).sub(W[i][c].mul(W[r][j]))
                quot = num.divide_exact(prev)
                assert quot is not None, "Bareiss divisibility failed"
                W[i][j] = quot
            W[i][c] = MPoly.zero(ctx, pm.nvars)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r


def spanning_rank(row_polys, ctx=None):
    """Dimension of the F-span of all specializations of a 1-homogeneous row."""
    if not row_polys:
        return 0
    ctx = ctx or row_polys[0].ctx
    for e in row_polys:
        if not e.is_homogeneous(1):
            raise InputError("spanning rank needs 1-homogeneous entries")
    coeff_rows = []
    nvars = row_polys[0].nvars
    for v in range(nvars):
        coeff_rows.append([e.linear_coeffs()[v] for e in row_polys])
    return flinalg.rank(coeff_rows, ctx)


def catchers(pm):
    """Canonical basis of the 1-homogeneous left annihilators of pm.

    Solved by matching coefficients of every degree-2 monomial in the entries
    of L * pm; returns rows of linear polynomials.
    """
    F = pm.ctx
    m = pm.nvars
    R = pm.nrows
    # unknowns lambda[i][v]: coefficient of z_v in L_i
    nunk = R * m
    # coefficient arrays of pm entries
    coeff = [[pm.rows[i][j].linear_coeffs() if not pm.rows[i][j].is_zero() else [F.zero] * m
              for j in range(pm.ncols)] for i in range(R)]
    rows = []
    for j in range(pm.ncols):
        for v in range(m):
            for w in range(v, m):
                row = [F.zero] * nunk
                for i in range(R):
                    cv, cw = coeff[i][j][v], coeff[i][j][w]
                    if v == w:
                        row[i * m + v] = F.add(row[i * m + v], cv)
                    else:
                        row[i * m + v] = F.add(row[i * m + v], cw)
                        row[i * m + w] = F.add(row[i * m + w], cv)
                rows.append(row)
    kernel = flinalg.kernel_basis(rows, F)
    kernel, _ = flinalg.rref(kernel, F)
    out = []
    for flat in kernel:
        out.append([MPoly.linear(F, flat[i * m:(i + 1) * m]) for i in range(R)])
    return out


def row_times_matrix(row_polys, pm):
    ctx, nv = pm.ctx, pm.nvars
    out = []
    for j in range(pm.ncols):
        acc = MPoly.zero(ctx, nv)
        for i in range(pm.nrows):
            if not row_polys[i].is_zero() and not pm.rows[i][j].is_zero():
                acc = acc.add(row_polys[i].mul(pm.rows[i][j]))
        out.append(acc)
    return out


@dataclass
class CatcherReport:
    alt_dim: int
    catch_dim: int
    dims_equal: bool
    forward_ok: bool
    backward_ok: bool

    @property
    def passed(self):
        return self.dims_equal and self.forward_ok and self.backward_ok


def alternator_catcher_check(space):
    """Verify the alternator <-> catcher isomorphism for a target-reduced space.

    The forward map sends b to the row of linear forms z -> b(z, e_i); the
    backward map reads a bilinear form off a catcher's coefficients.  Both
    directions are checked explicitly against the solved bases.
    """
    from .alternators import FBilinearForm, alternator_space

    if not is_target_reduced(space):
        raise NotTargetReduced("catcher correspondence needs a target-reduced space")
    alg = space.alg
    F = alg.field
    alts = alternator_space(space)
    pm = generic_of(space)
    catch = catchers(pm)
    dims_equal = len(alts) == len(catch)

    # forward: alternators to catchers, checking annihilation and independence
    forward_rows = []
    forward_ok = True
    for b in alts:
        # L_i(z) = b(z, e_i): coefficients are the i-th column of the Gram
        row = [
            MPoly.linear(F, [b.gram[s][t] for s in range(len(b.gram))])
            for t in range(len(b.gram[0]) if b.gram else 0)
        ]
        prod = row_times_matrix(row, pm)
        if any(not e.is_zero() for e in prod):
            forward_ok = False
        forward_rows.append([c for e in row for c in e.linear_coeffs()])
    if forward_rows and flinalg.rank(forward_rows, F) != len(alts):
        forward_ok = False

    # backward: catchers to alternators, checking membership in Alt(S)
    alt_flats = [b.flat() for b in alts]
    alt_rows, alt_piv = flinalg.rref(alt_flats, F)
    backward_ok = True
    for L in catch:
        gram = [[F.zero] * len(L) for _ in range(pm.nvars)]
        for t, e in enumerate(L):
            for v, c in enumerate(e.linear_coeffs()):
                gram[v][t] = c
        b = FBilinearForm(alg, space.p, space.n, gram)
        if not flinalg.in_row_space(b.flat(), alt_rows, alt_piv, F):
            backward_ok = False
    return CatcherReport(len(alts), len(catch), dims_equal, forward_ok, backward_ok)


@dataclass
class FAReport:
    r: int
    maxrank: int
    rank_kind: str
    d_block_zero: bool
    identities_checked: int

    @property
    def passed(self):
        return self.d_block_zero


def flanders_atkinson_check(space, r, budget=None, rng=None):
    """Rank-bounded identity checks for a space containing the rank-r cutoff.

    For a space of F-matrices containing J_r with maximum rank at most r
    (|F| > r), the generic matrix has a zero lower-right block and satisfies
    B A^k C = 0 for all k; powers of A obey a linear recurrence of degree at
    most r over the fraction field, so k = 0..r suffices and is what is
    verified, as exact polynomial identities.
    """
    from .dmat import DMatrix

    alg = space.alg
    F = alg.field
    if alg.degree != 1:
        raise InputError("the identity checker works on spaces of F-matrices (d = 1)")
    n, p = space.n, space.p
    if not (0 < r <= min(n, p)):
        raise InputError("rank cutoff out of range")
    if F.cardinality is not None and F.cardinality <= r:
        raise HypothesisViolated("the base field must have more than r elements")
    jr = DMatrix(
        alg,
        [
            [alg.one if (i == j and i < r) else alg.zero for j in range(p)]
            for i in range(n)
        ],
    )
    if not space.contains(jr):
        raise InputError("the space does not contain the rank-r cutoff matrix")

    # generic matrix of the space itself: sum of z_k * (basis matrix)
    m = space.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(p):
            coeffs = [space.basis[k].entry(i, j)[0] for k in range(m)]
            row.append(MPoly.linear(F, coeffs))
        rows.append(row)
    pm = PolyMatrix(F, m, rows, homogeneous_degree=1 if m else None)

    rank_res = poly_rank(pm, rng=rng)
    if rank_res.value > r:
        witness = list(rank_res.witness_point)
        if not witness:
            witness = _max_rank_witness(space, r, rng)
        raise HypothesisViolated(
            "maximum rank exceeds the cutoff", rank=rank_res.value, witness_point=witness
        )

    A = pm.block(0, r, 0, r)
    B = pm.block(r, n, 0, r)
    C = pm.block(0, r, r, p)
    D = pm.block(r, n, r, p)
    for i in range(D.nrows):
        for j in range(D.ncols):
            if not D.rows[i][j].is_zero():
                raise IdentityViolated("lower-right block is not zero", entry=(r + i, r + j))
    checked = 0
    power = PolyMatrix(
        F, m, [[MPoly.constant(F, m, F.one) if i == j else MPoly.zero(F, m)
                for j in range(r)] for i in range(r)]
    )
    for k in range(r + 1):
        if B.nrows and C.ncols:
            prod = poly_mat_mul(poly_mat_mul(B, power), C)
            for i in range(prod.nrows):
                for j in range(prod.ncols):
                    if not prod.rows[i][j].is_zero():
                        raise IdentityViolated(
                            "rank identity fails", k=k, entry=(i, j)
                        )
        checked += 1
        power = poly_mat_mul(power, A)
    return FAReport(r, rank_res.value, rank_res.kind, True, checked)


def _max_rank_witness(space, r, rng):
    rng = rng or _random.Random(0)
    F = space.alg.field
    for _ in range(64):
        coeffs = [F.random(rng) for _ in range(space.dim)]
        M = space.element_from_coeffs(coeffs)
        rows = [[e[0] for e in row] for row in M.rows]
        if flinalg.rank(rows, F) > r:
            return [F.to_str(c) for c in coeffs]
    return []


def factor_collinear(X, Y):
    """Exact quotient p with Y = p X for collinear homogeneous rows.

    X must be 1-homogeneous with spanning rank above 1, Y homogeneous of some
    degree delta; collinearity is certified by vanishing 2x2 minors and the
    quotient is verified entrywise.
    """
    if not X:
        raise InputError("empty row")
    ctx = X[0].ctx
    for e in X:
        if not e.is_homogeneous(1):
            raise InputError("X must be 1-homogeneous")
    delta = None
    for e in Y:
        if not e.is_zero():
            d = e.degree()
            if not e.is_homogeneous(d) or (delta is not None and d != delta):
                raise InputError("Y must be homogeneous of one degree")
            delta = d
    if delta is None:
        return MPoly.zero(ctx, X[0].nvars)
    if spanning_rank(X, ctx) <= 1:
        raise SpanningRankTooLow("spanning rank of X must exceed 1")
    n = len(X)
    for i in range(n):
        for j in range(i + 1, n):
            minor = X[i].mul(Y[j]).sub(X[j].mul(Y[i]))
            if not minor.is_zero():
                raise NotCollinear("2x2 minor does not vanish", entry=(i, j))
    idx = next(i for i in range(n) if not X[i].is_zero())
    quotient = Y[idx].divide_exact(X[idx])
    if quotient is None:
        raise NotCollinear("entrywise division failed", entry=idx)
    for i in range(n):
        if not Y[i].eq(quotient.mul(X[i])):
            raise NotCollinear("quotient fails on an entry", entry=i)
    if not (quotient.is_zero() or quotient.is_homogeneous(delta - 1)):
        raise NotCollinear("quotient is not homogeneous of degree delta - 1")
    return quotient
