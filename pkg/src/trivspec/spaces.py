"""F-linear subspaces of Mat_{n,p}(D) and D-subspace machinery.

An :class:`OperatorSpace` keeps its basis echelonized in flattened
F-coordinates, so equality, membership and every derived report are
canonical.  :class:`DSubspace` is a right-D-span in canonical right-RREF
form.  Enumeration orders (projective points, subspaces) are fixed and
documented so that witnesses are reproducible.
"""

from __future__ import annotations

import itertools

from . import dmat, flinalg
from .dmat import DMatrix
from .errors import (
    BudgetExceeded,
    DescriptorMismatch,
    InputError,
    NotTotallyOrdered,
    ZeroVector,
)
from .flinalg import FSubspace
from .verdicts import Budget


def alpha(n, d):
    """Critical dimension n(d-1) + d n(n-1)/2 of optimal trivial-spectrum spaces."""
    if n < 0 or d < 1:
        raise InputError("alpha needs n >= 0 and d >= 1")
    return n * (d - 1) + d * (n * (n - 1) // 2)


class OperatorSpace:
    """An F-linear subspace of Mat_{n,p}(D), canonically echelonized."""

    def __init__(self, alg, n, p, mats):
        self.alg = alg
        self.n = n
        self.p = p
        F = alg.field
        flats = []
        for M in mats:
            if isinstance(M, DMatrix):
                alg.require_same(M.alg)
                if (M.n, M.p) != (n, p):
                    raise InputError("basis matrix shape mismatch")
                flats.append(M.flat())
            else:
                flats.append(list(M))
        rows, pivots = flinalg.rref(flats, F)
        self._rows = rows
        self._pivots = pivots
        self.basis = [DMatrix.from_flat(alg, n, p, row) for row in rows]

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero_space(cls, alg, n, p):
        return cls(alg, n, p, [])

    @classmethod
    def full(cls, alg, n, p):
        mats = []
        for i in range(n):
            for j in range(p):
                for k in range(alg.degree):
                    mats.append(DMatrix.unit(alg, n, p, i, j, alg.basis_element(k)))
        return cls(alg, n, p, mats)

    # -- basic queries ------------------------------------------------------------

    @property
    def dim(self):
        return len(self._rows)

    @property
    def ambient_f_dim(self):
        return self.alg.degree * self.n * self.p

    def contains(self, M):
        return flinalg.in_row_space(M.flat(), self._rows, self._pivots, self.alg.field)

    def contains_space(self, other):
        return all(self.contains(M) for M in other.basis)

    def coefficients_of(self, M):
        return flinalg.coords_in_row_space(
            M.flat(), self._rows, self._pivots, self.alg.field
        )

    def element_from_coeffs(self, coeffs):
        F = self.alg.field
        flat = [F.zero] * self.ambient_f_dim
        for c, row in zip(coeffs, self._rows):
            if F.is_zero(c):
                continue
            flat = [F.add(x, F.mul(c, y)) for x, y in zip(flat, row)]
        return DMatrix.from_flat(self.alg, self.n, self.p, flat)

    def element_count(self):
        q = self.alg.field.cardinality
        return None if q is None else q**self.dim

    def elements(self):
        """All elements, ordered by coefficient tuples (finite F only)."""
        F = self.alg.field
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            yield self.element_from_coeffs(coeffs)

    def random_element(self, rng):
        F = self.alg.field
        return self.element_from_coeffs([F.random(rng) for _ in range(self.dim)])

    def key(self):
        F = self.alg.field
        return tuple(tuple(F.to_str(c) for c in row) for row in self._rows)

    def __eq__(self, other):
        return (
            isinstance(other, OperatorSpace)
            and self.alg.same(other.alg)
            and (self.n, self.p) == (other.n, other.p)
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.n, self.p, self.key()))

    def __repr__(self):
        return f"OperatorSpace(dim={self.dim} in Mat_{{{self.n},{self.p}}}({self.alg!r}))"

    def conjugate(self, Q):
        """Q^-1 S Q for invertible Q (square spaces)."""
        if self.n != self.p:
            raise InputError("conjugation needs endomorphism spaces")
        Qinv = dmat.invert(Q)
        return OperatorSpace(
            self.alg, self.n, self.p, [Qinv.matmul(M).matmul(Q) for M in self.basis]
        )

    def left_multiply(self, P):
        return OperatorSpace(self.alg, P.n, self.p, [P.matmul(M) for M in self.basis])

    def add_space(self, other):
        return OperatorSpace(self.alg, self.n, self.p, self.basis + other.basis)

    def translate_basis(self, mats):
        """Replacement space on explicit generators (same ambient)."""
        return OperatorSpace(self.alg, self.n, self.p, mats)


def joint(spaces, alg=None):
    """Block upper-triangular assembly with free strictly-upper blocks."""
    if not spaces:
        raise InputError("joint of an empty list")
    alg = alg or spaces[0].alg
    for S in spaces:
        alg.require_same(S.alg)
        if S.n != S.p:
            raise DescriptorMismatch("joint needs square diagonal blocks")
    sizes = [S.n for S in spaces]
    n = sum(sizes)
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    mats = []
    for b, S in enumerate(spaces):
        off = offsets[b]
        for M in S.basis:
            big = [[alg.zero] * n for _ in range(n)]
            for i in range(S.n):
                for j in range(S.n):
                    big[off + i][off + j] = M.entry(i, j)
            mats.append(DMatrix(alg, big))
    for bi in range(len(sizes)):
        for bj in range(bi + 1, len(sizes)):
            for i in range(sizes[bi]):
                for j in range(sizes[bj]):
                    for k in range(alg.degree):
                        mats.append(
                            DMatrix.unit(
                                alg, n, n, offsets[bi] + i, offsets[bj] + j,
                                alg.basis_element(k),
                            )
                        )
    return OperatorSpace(alg, n, n, mats)


# -- D-subspaces ------------------------------------------------------------------


class DSubspace:
    """A right-D-linear subspace of D^n in canonical right-RREF form."""

    def __init__(self, alg, ambient_n, vectors=()):
        self.alg = alg
        self.ambient_n = ambient_n
        vecs = [v for v in vectors if not dmat.vec_is_zero(alg, v)]
        self.rows, self.pivots = dmat.right_rref(alg, vecs)

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, v):
        return dmat.vec_is_zero(
            self.alg, dmat.right_reduce(self.alg, v, self.rows, self.pivots)
        )

    def contains_space(self, other):
        return all(self.contains(v) for v in other.rows)

    def basis_vectors(self):
        return list(self.rows)

    def as_f_subspace(self):
        """The same set as an F-subspace of F^(dn)."""
        alg = self.alg
        vecs = []
        for v in self.rows:
            for k in range(alg.degree):
                vecs.append(dmat.vec_flat(dmat.vec_right_scale(alg, v, alg.basis_element(k))))
        return FSubspace(alg.field, alg.degree * self.ambient_n, vecs)

    def key(self):
        alg = self.alg
        return tuple(tuple(tuple(alg.field.to_str(c) for c in e) for e in v) for v in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, DSubspace)
            and self.alg.same(other.alg)
            and self.ambient_n == other.ambient_n
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.ambient_n, self.key()))

    def __repr__(self):
        return f"DSubspace(dim={self.dim} in D^{self.ambient_n})"


class Flag:
    """A strictly increasing list of D-subspaces from 0 to the full space."""

    def __init__(self, alg, ambient_n, subspaces):
        chain = sorted(subspaces, key=lambda W: W.dim)
        if not chain or chain[0].dim != 0:
            chain = [DSubspace(alg, ambient_n)] + chain
        if chain[-1].dim != ambient_n:
            full = DSubspace(
                alg, ambient_n, [dmat.standard_vector(alg, ambient_n, i) for i in range(ambient_n)]
            )
            chain = chain + [full]
        for a, b in zip(chain, chain[1:]):
            if not (a.dim < b.dim and b.contains_space(a)):
                raise NotTotallyOrdered("flag members are not strictly nested", dims=(a.dim, b.dim))
        self.alg = alg
        self.ambient_n = ambient_n
        self.subspaces = chain

    @property
    def gaps(self):
        dims = [W.dim for W in self.subspaces]
        return [b - a for a, b in zip(dims, dims[1:])]

    def __len__(self):
        return len(self.subspaces)


def socle(alg, n, f_subspace):
    """Greatest D-subspace inside an F-subspace of D^n, as one F-linear kernel.

    x belongs to the socle iff x * a stays in the subspace for every F-basis
    element a of D.
    """
    F = alg.field
    d = alg.degree
    N = d * n
    if f_subspace.ambient_dim != N:
        raise InputError("F-subspace lives in the wrong ambient space")
    # constraint matrix: residual of (x * a_k) modulo the subspace must vanish
    rows = []
    for k in range(d):
        a = alg.basis_element(k)
        cols = []
        for idx in range(N):
            flat = [F.zero] * N
            flat[idx] = F.one
            v = dmat.vec_from_flat(alg, flat)
            image = dmat.vec_flat(dmat.vec_right_scale(alg, v, a))
            cols.append(f_subspace.residual(image))
        for r in range(N):
            rows.append([cols[c][r] for c in range(N)])
    kernel = flinalg.kernel_basis(rows, F)
    return DSubspace(alg, n, [dmat.vec_from_flat(alg, v) for v in kernel])


def evaluate(space, x):
    """The F-subspace S x of D^n (flattened coordinates)."""
    alg = space.alg
    vecs = [dmat.vec_flat(M.apply(x)) for M in space.basis]
    return FSubspace(alg.field, alg.degree * space.n, vecs)


def ev_D(space, x):
    """EV(S, x) = {a in D : x a lies in span_F(S x)}, an F-subspace of D.

    Shipped as a diagnostic generalization of the complex-case eigenvalue
    space; x must be nonzero.
    """
    alg = space.alg
    if dmat.vec_is_zero(alg, x):
        raise ZeroVector("EV is undefined at the zero vector")
    sx = evaluate(space, x)
    rows = []
    d = alg.degree
    cols = []
    for k in range(d):
        image = dmat.vec_flat(dmat.vec_right_scale(alg, x, alg.basis_element(k)))
        cols.append(sx.residual(image))
    N = alg.degree * space.n
    for r in range(N):
        rows.append([cols[c][r] for c in range(d)])
    kernel = flinalg.kernel_basis(rows, alg.field)
    return FSubspace(alg.field, d, kernel)


def projective_representatives(alg, p):
    """One representative per right-D-projective class of D^p \\ {0}.

    Representatives have their last nonzero coordinate normalized to 1 and
    are emitted in lexicographic order of their flattened F-coordinates; the
    order is part of the witness contract.
    """
    F = alg.field
    reps = []
    for last in range(p):
        for prefix in itertools.product(alg.elements(), repeat=last):
            reps.append(tuple(prefix) + (alg.one,) + (alg.zero,) * (p - last - 1))
    reps.sort(key=lambda v: tuple(F.sort_key(c) for e in v for c in e))
    yield from reps


def count_projective_points(alg, p):
    q = alg.cardinality
    return (q**p - 1) // (q - 1)


def d_subspaces(alg, n, dim=None):
    """All D-subspaces of D^n of the given dimension (all dims when None).

    Enumerated through canonical right-RREF row patterns: pivot columns
    ascending, pivot entries 1, zeros above/below pivots, free entries
    running over D in coordinate order.
    """
    dims = range(0, n + 1) if dim is None else [dim]
    for k in dims:
        if k == 0:
            yield DSubspace(alg, n)
            continue
        for pivots in itertools.combinations(range(n), k):
            free_cells = []
            for r in range(k):
                for c in range(pivots[r] + 1, n):
                    if c not in pivots:
                        free_cells.append((r, c))
            for values in itertools.product(alg.elements(), repeat=len(free_cells)):
                rows = []
                for r in range(k):
                    v = [alg.zero] * n
                    v[pivots[r]] = alg.one
                    rows.append(v)
                for (r, c), val in zip(free_cells, values):
                    rows[r][c] = val
                W = DSubspace(alg, n, [tuple(v) for v in rows])
                yield W


def transitive_rank(space, budget=None, rng=None):
    """Maximum of dim_F(S x) over x; exact over finite F, else via generic rank.

    Returns (value, kind) with kind "exact" or "probabilistic".  Over finite
    fields one representative per projective class is enumerated, since the
    evaluation dimension is constant on classes.  Over infinite fields the
    value equals the rank of the generic matrix of the dual operator space.
    """
    alg = space.alg
    budget = budget or Budget()
    if space.dim == 0:
        return 0, "exact"
    if alg.cardinality is not None:
        npts = count_projective_points(alg, space.p)
        if not budget.affords(npts):
            raise BudgetExceeded(
                "projective enumeration too large", needed=npts, budget=budget.limit
            )
        budget.charge(npts)
        best = 0
        nd = alg.degree * space.n
        for x in projective_representatives(alg, space.p):
            dim = evaluate(space, x).dim
            if dim > best:
                best = dim
                if best == nd:
                    break
        return best, "exact"
    from . import genmat

    result = genmat.poly_rank(genmat.generic_of(space), rng=rng)
    return result.value, result.kind


def is_source_reduced(space):
    """No nonzero vector killed by every operator."""
    alg = space.alg
    if not space.basis:
        return space.p == 0
    stacked = DMatrix(alg, [row for M in space.basis for row in M.rows])
    return dmat.rank_D(stacked) == space.p


def target_span(space):
    """The D-subspace sum of all operator ranges."""
    alg = space.alg
    cols = []
    for M in space.basis:
        cols.extend(M.columns())
    return DSubspace(alg, space.n, cols)


def is_target_reduced(space):
    return target_span(space).dim == space.n


def invariant_subspaces(space, budget=None, candidates=None):
    """All S-invariant D-subspaces (finite enumeration, or given candidates).

    Over infinite fields a candidate list must be supplied: enumeration is
    impossible and the search stays certificate-driven.
    """
    alg = space.alg
    if space.n != space.p:
        raise InputError("invariant subspaces need endomorphism spaces")
    n = space.n
    budget = budget or Budget()
    if candidates is None:
        if alg.cardinality is None:
            raise InputError(
                "invariant-subspace enumeration over an infinite field needs candidates"
            )
        total = sum(
            count_projective_points(alg, n) if 0 < k < n else 1 for k in range(n + 1)
        )
        if not budget.affords(total * max(1, space.dim)):
            raise BudgetExceeded("subspace enumeration exceeds budget")
        budget.charge(total * max(1, space.dim))
        candidates = d_subspaces(alg, n)
    found = []
    for W in candidates:
        if _is_invariant(space, W):
            found.append(W)
    found.sort(key=lambda W: (W.dim, W.key()))
    return found


def _is_invariant(space, W):
    for M in space.basis:
        for v in W.rows:
            if not W.contains(M.apply(v)):
                return False
    return True


class FlagDecomposition:
    def __init__(self, flag, conjugator, blocks):
        self.flag = flag
        self.conjugator = conjugator
        self.blocks = blocks

    @property
    def partition(self):
        return tuple(self.flag.gaps)


def flag_decomposition(space, budget=None, candidates=None):
    """Invariant flag plus induced quotient blocks, with joint reconstruction.

    Raises NotTotallyOrdered (with two incomparable witnesses) when the
    invariant subspaces do not form a chain, which signals that the input is
    not an optimal trivial-spectrum space.
    """
    alg = space.alg
    n = space.n
    invs = invariant_subspaces(space, budget=budget, candidates=candidates)
    invs_sorted = sorted(invs, key=lambda W: (W.dim, W.key()))
    for A, B in itertools.combinations(invs_sorted, 2):
        small, big = (A, B) if A.dim <= B.dim else (B, A)
        if not big.contains_space(small):
            raise NotTotallyOrdered(
                "two incomparable invariant subspaces",
                witness_dims=(A.dim, B.dim),
                witnesses=(A.key(), B.key()),
            )
    # drop duplicate dims (equal spaces) and build the chain
    chain = []
    for W in invs_sorted:
        if not chain or W.dim > chain[-1].dim:
            chain.append(W)
    flag = Flag(alg, n, chain)
    # adapted basis: columns fill each flag member in turn
    cols = []
    col_space_rows, col_space_piv = [], []
    for W in flag.subspaces:
        for v in W.rows:
            red = dmat.right_reduce(alg, v, col_space_rows, col_space_piv)
            if not dmat.vec_is_zero(alg, red):
                cols.append(v)
                col_space_rows, col_space_piv = dmat.right_rref(alg, cols)
    Q = DMatrix(alg, [[cols[j][i] for j in range(n)] for i in range(n)])
    Qinv = dmat.invert(Q)
    sizes = flag.gaps
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    block_mats = [[] for _ in sizes]
    for M in space.basis:
        T = Qinv.matmul(M).matmul(Q)
        for b, size in enumerate(sizes):
            off = offsets[b]
            block_mats[b].append(
                DMatrix(alg, [[T.entry(off + i, off + j) for j in range(size)] for i in range(size)])
            )
        # block lower parts must vanish by invariance
        for i in range(n):
            for j in range(n):
                bi = _block_of(offsets, sizes, i)
                bj = _block_of(offsets, sizes, j)
                if bi > bj and not alg.is_zero(T.entry(i, j)):
                    raise NotTotallyOrdered("conjugated matrix is not block upper-triangular")
    blocks = [
        OperatorSpace(alg, size, size, mats) for size, mats in zip(sizes, block_mats)
    ]
    return FlagDecomposition(flag, Q, blocks)


def _block_of(offsets, sizes, i):
    for b in range(len(sizes)):
        if offsets[b] <= i < offsets[b] + sizes[b]:
            return b
    raise IndexError(i)
