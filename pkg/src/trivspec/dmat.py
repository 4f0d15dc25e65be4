"""Exact matrices over a structure-constant algebra.

Vectors of D^n are right-module columns: matrices act on the left, scalars on
the right, so row reduction for ranks and kernels uses left multiplications
only, and the canonical form of a right-D-span uses right multiplications.
Nothing here touches determinants over D; minimal polynomials go through the
left regular representation over F instead.
"""

from __future__ import annotations

import itertools

from . import flinalg, unipoly
from .errors import InputError, SingularMatrix
from .fields import PrimeField, RationalField


class DMatrix:
    """An n x p matrix over an algebra; entries are coordinate tuples."""

    __slots__ = ("alg", "n", "p", "rows")

    def __init__(self, alg, rows):
        self.alg = alg
        self.rows = tuple(tuple(tuple(e) for e in r) for r in rows)
        self.n = len(self.rows)
        self.p = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.p:
                raise InputError("ragged matrix rows")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, alg, n, p):
        return cls(alg, [[alg.zero] * p for _ in range(n)])

    @classmethod
    def identity(cls, alg, n):
        return cls(alg, [[alg.one if i == j else alg.zero for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, alg, n, p, i, j, coords=None):
        e = coords if coords is not None else alg.one
        rows = [[alg.zero] * p for _ in range(n)]
        rows[i][j] = e
        return cls(alg, rows)

    @classmethod
    def from_flat(cls, alg, n, p, flat):
        d = alg.degree
        if len(flat) != d * n * p:
            raise InputError("flat vector length mismatch")
        rows = []
        for i in range(n):
            row = []
            for j in range(p):
                base = (i * p + j) * d
                row.append(tuple(flat[base:base + d]))
            rows.append(row)
        return cls(alg, rows)

    # -- views --------------------------------------------------------------------

    def entry(self, i, j):
        return self.rows[i][j]

    def flat(self):
        """Row-major F-coordinates: entry (i, j) occupies block (i*p + j)*d."""
        out = []
        for row in self.rows:
            for e in row:
                out.extend(e)
        return out

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.n))

    def columns(self):
        return [self.column(j) for j in range(self.p)]

    def is_zero(self):
        return all(self.alg.is_zero(e) for row in self.rows for e in row)

    def to_strs(self):
        return [[self.alg.to_strs(e) for e in row] for row in self.rows]

    def f_matrix(self):
        """The (d n) x (d p) F-matrix of x -> M x acting on F-coordinates."""
        alg, F = self.alg, self.alg.field
        d = alg.degree
        out = [[F.zero] * (d * self.p) for _ in range(d * self.n)]
        for i in range(self.n):
            for j in range(self.p):
                block = alg.left_mult_matrix(self.rows[i][j])
                for a in range(d):
                    for b in range(d):
                        out[i * d + a][j * d + b] = block[a][b]
        return out

    # -- arithmetic ------------------------------------------------------------------

    def add(self, other):
        self.alg.require_same(other.alg)
        return DMatrix(
            self.alg,
            [
                [self.alg.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def sub(self, other):
        self.alg.require_same(other.alg)
        return DMatrix(
            self.alg,
            [
                [self.alg.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def neg(self):
        return DMatrix(self.alg, [[self.alg.neg(e) for e in r] for r in self.rows])

    def smul(self, c):
        """Multiply every entry by the field payload c."""
        return DMatrix(self.alg, [[self.alg.smul(c, e) for e in r] for r in self.rows])

    def left_mul_element(self, a):
        return DMatrix(self.alg, [[self.alg.mul(a, e) for e in r] for r in self.rows])

    def right_mul_element(self, a):
        return DMatrix(self.alg, [[self.alg.mul(e, a) for e in r] for r in self.rows])

    def matmul(self, other):
        self.alg.require_same(other.alg)
        if self.p != other.n:
            raise InputError("matrix shapes do not compose")
        alg = self.alg
        rows = []
        for i in range(self.n):
            row = []
            for j in range(other.p):
                acc = alg.zero
                for k in range(self.p):
                    acc = alg.add(acc, alg.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            rows.append(row)
        return DMatrix(alg, rows)

    def apply(self, vec):
        """M x for a column vector (tuple of coordinate tuples)."""
        alg = self.alg
        out = []
        for i in range(self.n):
            acc = alg.zero
            for k in range(self.p):
                acc = alg.add(acc, alg.mul(self.rows[i][k], vec[k]))
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return DMatrix(self.alg, [[self.rows[i][j] for i in range(self.n)] for j in range(self.p)])

    def star(self, profile):
        """Sigma-conjugate transpose for a quadratic-type profile."""
        return DMatrix(
            self.alg,
            [[profile.sigma(self.rows[i][j]) for i in range(self.n)] for j in range(self.p)],
        )

    def eq(self, other):
        return self.alg.same(other.alg) and self.n == other.n and self.p == other.p and all(
            self.alg.eq(a, b)
            for r1, r2 in zip(self.rows, other.rows)
            for a, b in zip(r1, r2)
        )

    def __eq__(self, other):
        return isinstance(other, DMatrix) and self.eq(other)

    def __hash__(self):
        return hash((self.n, self.p, self.rows))

    def __repr__(self):
        return f"DMatrix({self.n}x{self.p} over {self.alg!r})"


# -- vectors ------------------------------------------------------------------------


def vec_zero(alg, n):
    return (alg.zero,) * n


def vec_is_zero(alg, v):
    return all(alg.is_zero(e) for e in v)


def vec_add(alg, u, v):
    return tuple(alg.add(a, b) for a, b in zip(u, v))


def vec_sub(alg, u, v):
    return tuple(alg.sub(a, b) for a, b in zip(u, v))


def vec_right_scale(alg, v, a):
    """v * a with the scalar acting on the right."""
    return tuple(alg.mul(e, a) for e in v)


def vec_flat(v):
    out = []
    for e in v:
        out.extend(e)
    return out


def vec_from_flat(alg, flat):
    d = alg.degree
    return tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(len(flat) // d))


def standard_vector(alg, n, i):
    v = [alg.zero] * n
    v[i] = alg.one
    return tuple(v)


# -- rank and kernels over D -----------------------------------------------------------


def left_rref(matrix):
    """Reduced row echelon form via left row operations.

    Returns (rows, pivots) with pivot entries equal to 1.  Left operations
    are invertible left multiplications, so the column relations (and hence
    the rank and right kernel) are preserved.
    """
    alg = matrix.alg
    m = [list(r) for r in matrix.rows]
    nrows, ncols = matrix.n, matrix.p
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not alg.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = alg.inv(m[r][c])
        m[r] = [alg.mul(inv, e) for e in m[r]]
        for i in range(nrows):
            if i != r and not alg.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [alg.sub(x, alg.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [m[i] for i in range(r)], pivots


def rank_D(matrix):
    """Rank of the matrix as a D-linear map."""
    return len(left_rref(matrix)[0])


def solve_right_null(matrix):
    """D-basis of {X : M X = 0}; dimension is p - rank."""
    alg = matrix.alg
    rows, pivots = left_rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.p):
        if free in pivot_set:
            continue
        v = [alg.zero] * matrix.p
        v[free] = alg.one
        for row, c in zip(rows, pivots):
            v[c] = alg.neg(row[free])
        basis.append(tuple(v))
    return basis


def invert(matrix):
    """Inverse of a square matrix over D, or raise SingularMatrix."""
    if matrix.n != matrix.p:
        raise InputError("only square matrices invert")
    alg = matrix.alg
    n = matrix.n
    aug = DMatrix(
        alg,
        [list(matrix.rows[i]) + list(DMatrix.identity(alg, n).rows[i]) for i in range(n)],
    )
    rows, pivots = left_rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular over D")
    return DMatrix(alg, [row[n:] for row in rows])


def right_rref(alg, vectors):
    """Canonical basis of a right-D-span of column vectors.

    Vectors are reduced with right scalar multiplications, which preserve the
    right span.  Returns (rows, pivots); membership tests reduce against it.
    """
    m = [list(v) for v in vectors]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not alg.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = alg.inv(m[r][c])
        m[r] = [alg.mul(e, inv) for e in m[r]]
        for i in range(len(m)):
            if i != r and not alg.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [alg.sub(x, alg.mul(y, f)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def right_reduce(alg, v, rows, pivots):
    """Residual of v modulo the right-D-span held as a right RREF."""
    v = list(v)
    for row, c in zip(rows, pivots):
        f = v[c]
        if not alg.is_zero(f):
            v = [alg.sub(x, alg.mul(y, f)) for x, y in zip(v, row)]
    return tuple(v)


# -- minimal polynomials over F -----------------------------------------------------------


def min_poly_over_F(matrix):
    """Monic minimal polynomial of the matrix as an F-endomorphism of F^(dn).

    Computed by Krylov iteration on the left regular representation; the
    result is the lcm of the local minimal polynomials of the standard basis
    vectors, so it divides any annihilating F-polynomial.
    """
    if matrix.n != matrix.p:
        raise InputError("minimal polynomial needs a square matrix")
    F = matrix.alg.field
    A = matrix.f_matrix()
    return min_poly_f_matrix(A, F)


def min_poly_f_matrix(A, F):
    m = len(A)
    mu = (F.one,)
    covered_rows, covered_piv = [], []
    for start in range(m):
        v = [F.one if i == start else F.zero for i in range(m)]
        if flinalg.in_row_space(v, covered_rows, covered_piv, F):
            continue
        local = _local_min_poly(A, v, F)
        mu = unipoly.lcm(mu, local, F)
        # fold the whole Krylov space of v into the covered span
        w = v
        for _ in range(unipoly.deg(local)):
            covered_rows, covered_piv = _absorb(covered_rows, covered_piv, w, F)
            w = flinalg.mat_vec(A, w, F)
        covered_rows, covered_piv = _absorb(covered_rows, covered_piv, w, F)
        if unipoly.deg(mu) == m:
            break
    return mu


def _absorb(rows, pivots, v, F):
    res = flinalg.reduce_against(v, rows, pivots, F)
    if flinalg.vec_is_zero(res, F):
        return rows, pivots
    merged = rows + [res]
    return flinalg.rref(merged, F)


def _local_min_poly(A, v, F):
    """Minimal monic poly with p(A) v = 0, by incremental echelon."""
    m = len(A)
    basis_rows, basis_piv, history = [], [], []
    w = list(v)
    while True:
        res = flinalg.reduce_against(w, basis_rows, basis_piv, F)
        if flinalg.vec_is_zero(res, F):
            # express w over history: solve sum c_k A^k v = w
            cols = flinalg.transpose(history)
            sol = flinalg.solve(cols, w, F)
            coeffs = [F.neg(c) for c in sol] + [F.one]
            return unipoly.trim(coeffs, F)
        history.append(list(w))
        basis_rows, basis_piv = _absorb(basis_rows, basis_piv, w, F)
        w = flinalg.mat_vec(A, w, F)
        if len(history) > m:
            raise AssertionError("Krylov iteration exceeded the space dimension")


# -- spectral predicates ----------------------------------------------------------------


def roots_in_field(poly, F):
    """All roots in F, with multiplicity stripping; None when undecided.

    Finite fields evaluate exhaustively.  Over the rationals, roots are read
    off by rational-root extraction; the caller treats residual factors of
    positive degree as evidence that the polynomial does not split.
    """
    if unipoly.deg(poly) <= 0:
        return []
    if isinstance(F, PrimeField):
        return [x for x in F.elements() if F.is_zero(unipoly.eval_at(poly, x, F))]
    if isinstance(F, RationalField):
        return _rational_roots(poly)
    # rational function fields: fall back to linear-factor peeling via gcd with
    # derivative only; root search is not supported
    return None


def _rational_roots(poly):
    from fractions import Fraction

    F = RationalField()
    den_lcm = 1
    for c in poly:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    work = [int(c * den_lcm) for c in poly]
    roots = []
    if work and work[0] == 0:
        roots.append(Fraction(0))
        while work and work[0] == 0:
            work = work[1:]
    if not work or len(work) == 1:
        return sorted(set(roots))
    lead, const = work[-1], work[0]
    cands = set()
    for a in _divisors(abs(const)):
        for b in _divisors(abs(lead)):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        if F.is_zero(unipoly.eval_at(poly, r, F)):
            roots.append(r)
    return sorted(set(roots))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def splits_with_distinct_roots(poly, F):
    """True when poly equals a product of distinct monic linear factors over F."""
    roots = roots_in_field(poly, F)
    if roots is None:
        return False
    roots = list(dict.fromkeys(roots))
    prod = unipoly.from_roots(roots, F)
    return unipoly.deg(prod) == unipoly.deg(poly) and unipoly.monic(poly, F) == prod


def is_F_diagonalisable(matrix):
    """Split minimal polynomial with simple roots over F."""
    F = matrix.alg.field
    if isinstance(F, PrimeField):
        # annihilated by t^q - t  <=>  A^q = A for the regular representation
        return _mat_pow_eq(matrix.f_matrix(), F)
    return splits_with_distinct_roots(min_poly_over_F(matrix), F)


def _mat_pow_eq(A, F):
    q = F.cardinality
    P = _mat_pow(A, q, F)
    return all(F.eq(P[i][j], A[i][j]) for i in range(len(A)) for j in range(len(A)))


def _mat_pow(A, k, F):
    n = len(A)
    result = flinalg.identity(n, F)
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = flinalg.mat_mul(result, base, F)
        base = flinalg.mat_mul(base, base, F)
        k >>= 1
    return result


def is_semisimple(matrix):
    """Squarefree minimal polynomial over F."""
    F = matrix.alg.field
    mu = min_poly_over_F(matrix)
    return unipoly.is_squarefree(mu, F)


# -- element enumeration -------------------------------------------------------------------


def all_matrices(alg, n, p):
    d = alg.degree
    F = alg.field
    for flat in itertools.product(F.elements(), repeat=d * n * p):
        yield DMatrix.from_flat(alg, n, p, list(flat))


def random_matrix(alg, n, p, rng):
    return DMatrix(alg, [[alg.random_element(rng) for _ in range(p)] for _ in range(n)])


def random_invertible_matrix(alg, n, rng):
    while True:
        M = random_matrix(alg, n, n, rng)
        if rank_D(M) == n:
            return M
