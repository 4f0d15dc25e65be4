"""Exact linear algebra over a scalar context (lists of payload rows).

Everything here is plain Gauss-Jordan over a field context.  Canonical
reduced row echelon forms make subspace equality and membership decidable
and deterministic, which the classification reports rely on.
"""

from __future__ import annotations


def mat_copy(rows):
    return [list(r) for r in rows]


def identity(n, ctx):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def zeros(n, m, ctx):
    return [[ctx.zero] * m for _ in range(n)]


def transpose(rows):
    if not rows:
        return []
    return [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]


def mat_mul(a, b, ctx):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m, ctx)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if ctx.is_zero(c):
                continue
            bt = b[t]
            for j in range(m):
                oi[j] = ctx.add(oi[j], ctx.mul(c, bt[j]))
    return out


def mat_vec(a, v, ctx):
    out = []
    for row in a:
        acc = ctx.zero
        for c, x in zip(row, v):
            if not ctx.is_zero(c):
                acc = ctx.add(acc, ctx.mul(c, x))
        out.append(acc)
    return out


def vec_add(u, v, ctx):
    return [ctx.add(a, b) for a, b in zip(u, v)]


def vec_sub(u, v, ctx):
    return [ctx.sub(a, b) for a, b in zip(u, v)]


def vec_scale(v, c, ctx):
    return [ctx.mul(c, x) for x in v]


def vec_is_zero(v, ctx):
    return all(ctx.is_zero(x) for x in v)


def rref(rows, ctx):
    """Canonical reduced row echelon form.

    Returns (rref_rows, pivot_columns); zero rows are dropped.
    """
    m = mat_copy(rows)
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not ctx.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not ctx.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [m[i] for i in range(r)], pivots


def rank(rows, ctx):
    return len(rref(rows, ctx)[0])


def reduce_against(v, rref_rows, pivots, ctx):
    """Residual of v modulo the row space of an RREF."""
    v = list(v)
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        if not ctx.is_zero(f):
            v = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(v, row)]
    return v


def in_row_space(v, rref_rows, pivots, ctx):
    return vec_is_zero(reduce_against(v, rref_rows, pivots, ctx), ctx)


def coords_in_row_space(v, rref_rows, pivots, ctx):
    """Coefficients expressing v over RREF rows, or None if not a member."""
    res = reduce_against(v, rref_rows, pivots, ctx)
    if not vec_is_zero(res, ctx):
        return None
    return [v[c] for c in pivots]


def kernel_basis(rows, ctx):
    """Canonical basis of {x : A x = 0}, one vector per free column."""
    ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows, ctx)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ctx.zero] * ncols
        v[free] = ctx.one
        for row, c in zip(red, pivots):
            v[c] = ctx.neg(row[free])
        basis.append(v)
    return basis


def solve(rows, rhs, ctx):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return None if any(not ctx.is_zero(b) for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ctx)
    for row, c in zip(red, pivots):
        if c == ncols:
            return None
    x = [ctx.zero] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def invert(rows, ctx):
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity(n, ctx))]
    red, pivots = rref(aug, ctx)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


class FSubspace:
    """A subspace of F^N held as a canonical RREF basis."""

    def __init__(self, ctx, ambient_dim, vectors=()):
        self.ctx = ctx
        self.ambient_dim = ambient_dim
        rows = [list(v) for v in vectors if not vec_is_zero(v, ctx)]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        self.basis, self.pivots = rref(rows, ctx)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return in_row_space(v, self.basis, self.pivots, self.ctx)

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def residual(self, v):
        return reduce_against(v, self.basis, self.pivots, self.ctx)

    def key(self):
        return tuple(tuple(self.ctx.to_str(x) for x in row) for row in self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, FSubspace)
            and other.ctx == self.ctx
            and other.ambient_dim == self.ambient_dim
            and other.key() == self.key()
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.key()))

    def __repr__(self):
        return f"FSubspace(dim={self.dim}, ambient={self.ambient_dim})"
