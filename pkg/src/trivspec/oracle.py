"""Independent brute-force oracles over finite fields.

The maximizers run a DFS over canonical reduced-row-echelon chains: a
subspace is extended one basis row at a time, each new pivot strictly after
the previous ones and only when the existing rows vanish on the new pivot
column, so every RREF (hence every subspace) is visited exactly once and can
be pruned as soon as one element fails the predicate.  Element checks are
incremental on the new coset layer.  Every satisfying space is visited, so
the returned witness is the lexicographically least basis among the spaces
of maximum dimension, independent of traversal details.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field

from . import dmat
from .dmat import DMatrix
from .errors import BudgetExceeded, InputError
from .spaces import OperatorSpace
from .verdicts import Budget


@dataclass
class OracleResult:
    max_dim: int
    witness: list = field(default_factory=list)
    spaces_visited: int = 0
    elements_checked: int = 0
    exhausted: bool = True

    def to_json(self):
        return {
            "max": self.max_dim,
            "witness": self.witness,
            "spaces_visited": self.spaces_visited,
            "elements_checked": self.elements_checked,
            "exhausted": self.exhausted,
        }


def _vec_scaled_add(F, base, v, lam):
    return tuple(F.add(x, F.mul(lam, y)) for x, y in zip(base, v))


class _DFS:
    def __init__(self, ctx, N, predicate, budget):
        self.F = ctx
        self.N = N
        self.predicate = predicate
        self.budget = budget
        self.best_dim = 0
        self.best_witness = []
        self.best_key = None
        self.spaces = 0
        self.checked = 0
        self.exhausted = True

    def run(self):
        self._extend([], [], [self._zero()])
        return OracleResult(
            self.best_dim,
            self.best_witness,
            self.spaces,
            self.checked,
            self.exhausted,
        )

    def _offer(self, rows):
        key = tuple(self.F.sort_key(c) for r in rows for c in r)
        if len(rows) > self.best_dim or (len(rows) == self.best_dim and key < self.best_key):
            self.best_dim = len(rows)
            self.best_key = key
            self.best_witness = [[self.F.to_str(c) for c in r] for r in rows]

    def _zero(self):
        return (self.F.zero,) * self.N

    def _extend(self, rows, pivots, elements):
        """rows: current RREF; elements: every vector of the current space."""
        F = self.F
        start = pivots[-1] + 1 if pivots else 0
        for pivot in range(start, self.N):
            if any(not F.is_zero(r[pivot]) for r in rows):
                continue
            free_cols = [
                c
                for c in range(pivot + 1, self.N)
                if c not in pivots
            ]
            for tail in itertools.product(F.elements(), repeat=len(free_cols)):
                new_row = [F.zero] * self.N
                new_row[pivot] = F.one
                for c, val in zip(free_cols, tail):
                    new_row[c] = val
                new_row = tuple(new_row)
                # new coset layer: w + lam * new_row, lam != 0
                layer = []
                ok = True
                nonzero = [lam for lam in F.elements() if not F.is_zero(lam)]
                for w in elements:
                    for lam in nonzero:
                        v = _vec_scaled_add(F, w, new_row, lam)
                        cost_stop = not self.budget.affords(1)
                        if cost_stop:
                            self.exhausted = False
                            return
                        self.budget.charge(1)
                        self.checked += 1
                        if not self.predicate(v):
                            ok = False
                            break
                        layer.append(v)
                    if not ok:
                        break
                if not ok:
                    continue
                new_rows = rows + [new_row]
                new_pivots = pivots + [pivot]
                self.spaces += 1
                self._offer(new_rows)
                self._extend(new_rows, new_pivots, elements + layer)


def exhaustive_max_trivspec(alg, n, budget=None):
    """Greatest dimension of a trivial-spectrum subspace of Mat_n(D), by DFS."""
    budget = budget or Budget()
    N = alg.degree * n * n
    if alg.cardinality is None:
        raise InputError("the oracle needs a finite field")
    I = DMatrix.identity(alg, n)

    def predicate(flat):
        M = DMatrix.from_flat(alg, n, n, list(flat))
        return not dmat.solve_right_null(M.sub(I))

    return _DFS(alg.field, N, predicate, budget).run()


def exhaustive_max_diagonalisable(alg, n, budget=None):
    budget = budget or Budget()
    N = alg.degree * n * n

    def predicate(flat):
        M = DMatrix.from_flat(alg, n, n, list(flat))
        return dmat.is_F_diagonalisable(M)

    return _DFS(alg.field, N, predicate, budget).run()


def exhaustive_max_semisimple(alg, n, budget=None):
    budget = budget or Budget()
    N = alg.degree * n * n

    def predicate(flat):
        M = DMatrix.from_flat(alg, n, n, list(flat))
        return dmat.is_semisimple(M)

    return _DFS(alg.field, N, predicate, budget).run()


def enumerate_subspaces(ctx, N, k):
    """All k-dimensional subspaces of F^N as RREF row lists (plain enumeration).

    An independent second algorithm against the DFS: pivot supports are
    chosen directly and free cells swept, with no pruning or chaining.
    """
    for pivots in itertools.combinations(range(N), k):
        free_cells = []
        for r in range(k):
            for c in range(pivots[r] + 1, N):
                if c not in pivots:
                    free_cells.append((r, c))
        for values in itertools.product(ctx.elements(), repeat=len(free_cells)):
            rows = []
            for r in range(k):
                v = [ctx.zero] * N
                v[pivots[r]] = ctx.one
                rows.append(v)
            for (r, c), val in zip(free_cells, values):
                rows[r][c] = val
            yield [tuple(r) for r in rows]


def count_trivspec_subspaces(alg, n, k, budget=None):
    """(total, satisfying) count of k-dim subspaces of Mat_n(D) with trivial spectrum."""
    budget = budget or Budget()
    F = alg.field
    N = alg.degree * n * n
    I = DMatrix.identity(alg, n)
    total = good = 0
    nonzero = [lam for lam in F.elements() if not F.is_zero(lam)]
    for rows in enumerate_subspaces(F, N, k):
        total += 1
        ok = True
        # scan the nonzero elements, one representative set per span
        for coeffs in itertools.product(F.elements(), repeat=k):
            if all(F.is_zero(c) for c in coeffs):
                continue
            if not budget.affords(1):
                raise BudgetExceeded("subspace element scan exceeds budget")
            budget.charge(1)
            flat = [F.zero] * N
            for c, row in zip(coeffs, rows):
                if not F.is_zero(c):
                    flat = [F.add(x, F.mul(c, y)) for x, y in zip(flat, row)]
            M = DMatrix.from_flat(alg, n, n, flat)
            if dmat.solve_right_null(M.sub(I)):
                ok = False
                break
        if ok:
            good += 1
    return total, good


def random_space_fuzzer(alg, n, p, dim, count, seed):
    """Seeded stream of uniformly random dim-dimensional operator spaces.

    Uniformity over subspaces comes from rejection-sampling full-rank
    coefficient matrices (every subspace has the same number of ordered
    bases) and canonicalizing.  Same seed, same stream.
    """
    from . import flinalg

    rng = _random.Random(seed)
    F = alg.field
    if F.cardinality is None:
        raise InputError("the fuzzer draws over finite fields")
    N = alg.degree * n * p
    if dim > N:
        raise InputError("requested dimension exceeds the ambient")
    out = []
    while len(out) < count:
        rows = [[F.random(rng) for _ in range(N)] for _ in range(dim)]
        if flinalg.rank(rows, F) != dim:
            continue
        out.append(OperatorSpace(alg, n, p, rows))
    return out
