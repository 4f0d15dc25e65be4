"""Vectorized exhaustive checks over prime fields (internal plumbing).

These are integer-exact numpy versions of the scalar element loops, used for
the large enumerations (about 10^6 elements).  They only engage over a
PrimeField with a commutative algebra and matrices of size at most 3; every
caller keeps a scalar fallback, and the test suite cross-checks the two
routes on small instances.  Enumeration order matches the scalar path:
coefficient tuples in lexicographic order, first coefficient most
significant.
"""

from __future__ import annotations

import numpy as np

from .fields import PrimeField

_CHUNK = 1 << 18


def supports(space):
    return (
        isinstance(space.alg.field, PrimeField)
        and space.n == space.p
        and space.n <= 3
        and space.alg.is_commutative()
    )


def _structure_tensor(alg):
    d = alg.degree
    C = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                C[i, j, k] = alg.structure[i][j][k]
    return C


def _basis_tensor(space):
    d = space.alg.degree
    k = space.dim
    n, p = space.n, space.p
    B = np.zeros((k, n, p, d), dtype=np.int64)
    for idx, M in enumerate(space.basis):
        for i in range(n):
            for j in range(p):
                B[idx, i, j, :] = M.entry(i, j)
    return B


def _digits(indices, q, k):
    """Coefficient tuples in the same order as itertools.product(range(q), repeat=k)."""
    out = np.empty((indices.shape[0], k), dtype=np.int64)
    rest = indices.copy()
    for pos in range(k - 1, -1, -1):
        out[:, pos] = rest % q
        rest //= q
    return out


def _dmul(x, y, C, p):
    return np.einsum("...i,...j,ijk->...k", x, y, C) % p


def _batch_det(E, C, p, n):
    """Determinant over a commutative algebra for n <= 3; shape (..., d)."""
    if n == 1:
        return E[:, 0, 0, :] % p
    if n == 2:
        ad = _dmul(E[:, 0, 0], E[:, 1, 1], C, p)
        bc = _dmul(E[:, 0, 1], E[:, 1, 0], C, p)
        return (ad - bc) % p
    pos = (
        _dmul(_dmul(E[:, 0, 0], E[:, 1, 1], C, p), E[:, 2, 2], C, p)
        + _dmul(_dmul(E[:, 0, 1], E[:, 1, 2], C, p), E[:, 2, 0], C, p)
        + _dmul(_dmul(E[:, 0, 2], E[:, 1, 0], C, p), E[:, 2, 1], C, p)
    )
    neg = (
        _dmul(_dmul(E[:, 0, 2], E[:, 1, 1], C, p), E[:, 2, 0], C, p)
        + _dmul(_dmul(E[:, 0, 1], E[:, 1, 0], C, p), E[:, 2, 2], C, p)
        + _dmul(_dmul(E[:, 0, 0], E[:, 1, 2], C, p), E[:, 2, 1], C, p)
    )
    return (pos - neg) % p


def singular_element_index(space, offset):
    """Index of the first element M with det(offset + M) = 0, or None.

    Indices follow the scalar coefficient enumeration, so the witness matches
    the scalar route exactly.
    """
    alg = space.alg
    p_char = alg.field.p
    n = space.n
    k = space.dim
    C = _structure_tensor(alg)
    B = _basis_tensor(space)
    off = np.zeros((n, n, alg.degree), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            off[i, j, :] = offset.entry(i, j)
    total = p_char**k
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = _digits(idx, p_char, k) if k else np.zeros((stop - start, 0), dtype=np.int64)
        E = (np.tensordot(coeffs, B, axes=(1, 0)) + off) % p_char
        det = _batch_det(E, C, p_char, n)
        sing = np.all(det == 0, axis=-1)
        hits = np.nonzero(sing)[0]
        if hits.size:
            return int(start + hits[0])
    return None


def count_singular(space, offset):
    """Number of elements M with det(offset + M) = 0."""
    alg = space.alg
    p_char = alg.field.p
    n = space.n
    k = space.dim
    C = _structure_tensor(alg)
    B = _basis_tensor(space)
    off = np.zeros((n, n, alg.degree), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            off[i, j, :] = offset.entry(i, j)
    total = p_char**k
    count = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = _digits(idx, p_char, k) if k else np.zeros((stop - start, 0), dtype=np.int64)
        E = (np.tensordot(coeffs, B, axes=(1, 0)) + off) % p_char
        det = _batch_det(E, C, p_char, n)
        count += int(np.all(det == 0, axis=-1).sum())
    return count


def supports_minrank(space):
    return (
        isinstance(space.alg.field, PrimeField)
        and space.alg.degree == 1
        and space.n <= 4
        and space.p <= 4
    )


def low_rank_element_index(space, offset, r):
    """Index of the first element with rank(offset + M) < r, or None (d = 1)."""
    from itertools import combinations

    alg = space.alg
    p_char = alg.field.p
    n, pc = space.n, space.p
    k = space.dim
    B = _basis_tensor(space)[:, :, :, 0]
    off = np.zeros((n, pc), dtype=np.int64)
    for i in range(n):
        for j in range(pc):
            off[i, j] = offset.entry(i, j)[0]
    row_sets = list(combinations(range(n), r))
    col_sets = list(combinations(range(pc), r))
    total = p_char**k
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = _digits(idx, p_char, k) if k else np.zeros((stop - start, 0), dtype=np.int64)
        E = (np.tensordot(coeffs, B, axes=(1, 0)) + off) % p_char
        ok = np.zeros(stop - start, dtype=bool)
        for rows in row_sets:
            for cols in col_sets:
                sub = E[:, rows][:, :, cols]
                ok |= _det_mod(sub, p_char) != 0
        misses = np.nonzero(~ok)[0]
        if misses.size:
            return int(start + misses[0])
    return None


def _det_mod(E, p):
    r = E.shape[1]
    if r == 1:
        return E[:, 0, 0] % p
    if r == 2:
        return (E[:, 0, 0] * E[:, 1, 1] - E[:, 0, 1] * E[:, 1, 0]) % p
    if r == 3:
        return (
            E[:, 0, 0] * E[:, 1, 1] * E[:, 2, 2]
            + E[:, 0, 1] * E[:, 1, 2] * E[:, 2, 0]
            + E[:, 0, 2] * E[:, 1, 0] * E[:, 2, 1]
            - E[:, 0, 2] * E[:, 1, 1] * E[:, 2, 0]
            - E[:, 0, 1] * E[:, 1, 0] * E[:, 2, 2]
            - E[:, 0, 0] * E[:, 1, 2] * E[:, 2, 1]
        ) % p
    raise ValueError("minor size above 3 not supported")
