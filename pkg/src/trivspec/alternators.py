"""Alternator spaces, radicals, trace-form duality and sesquilinear recovery.

An alternator of a space S of D-linear maps U -> V is an F-bilinear form b
with b(x, f(x)) = 0 for every x and f.  Forms are held by their Gram matrix
in flattened F-coordinates: b(x, y) = x^T G y with x in F^(dp), y in F^(dn).
"""

from __future__ import annotations

import itertools

from . import dmat, flinalg
from .algebra import classify_composition_form, trivial_algebra
from .dmat import DMatrix
from .errors import (
    AltNotOneDimensional,
    InputError,
    NotProportional,
    NotSesquilinear,
    SingularDuality,
)
from .flinalg import FSubspace
from .spaces import OperatorSpace


class FBilinearForm:
    """An F-valued bilinear form on D^p x D^n via its F-Gram matrix."""

    def __init__(self, alg, p, n, gram):
        self.alg = alg
        self.p = p
        self.n = n
        d = alg.degree
        self.gram = [list(r) for r in gram]
        if len(self.gram) != d * p or any(len(r) != d * n for r in self.gram):
            raise InputError("Gram matrix shape mismatch")

    def value_flat(self, xflat, yflat):
        F = self.alg.field
        acc = F.zero
        for s, xs in enumerate(xflat):
            if F.is_zero(xs):
                continue
            row = self.gram[s]
            for t, yt in enumerate(yflat):
                if not F.is_zero(yt) and not F.is_zero(row[t]):
                    acc = F.add(acc, F.mul(xs, F.mul(row[t], yt)))
        return acc

    def value(self, x, y):
        return self.value_flat(dmat.vec_flat(x), dmat.vec_flat(y))

    def flat(self):
        return [c for row in self.gram for c in row]

    def left_radical(self):
        """{x : b(x, -) = 0} as an F-subspace of F^(dp)."""
        ker = flinalg.kernel_basis(flinalg.transpose(self.gram), self.alg.field)
        return FSubspace(self.alg.field, self.alg.degree * self.p, ker)

    def right_radical(self):
        """{y : b(-, y) = 0} as an F-subspace of F^(dn)."""
        ker = flinalg.kernel_basis(self.gram, self.alg.field)
        return FSubspace(self.alg.field, self.alg.degree * self.n, ker)

    def is_right_nondegenerate(self):
        return self.right_radical().dim == 0

    def is_nonzero(self):
        F = self.alg.field
        return any(not F.is_zero(c) for row in self.gram for c in row)

    def scaled(self, c):
        F = self.alg.field
        return FBilinearForm(
            self.alg, self.p, self.n, [[F.mul(c, x) for x in row] for row in self.gram]
        )

    def key(self):
        F = self.alg.field
        return tuple(tuple(F.to_str(c) for c in row) for row in self.gram)

    def __eq__(self, other):
        return (
            isinstance(other, FBilinearForm)
            and self.alg.same(other.alg)
            and (self.p, self.n) == (other.p, other.n)
            and self.key() == other.key()
        )

    def __repr__(self):
        return f"FBilinearForm(D^{self.p} x D^{self.n} over {self.alg!r})"


class SesquilinearForm:
    """A sigma-sesquilinear D-valued form B(X, Y) = X* P Y with Gram P over D."""

    def __init__(self, profile, gram):
        self.profile = profile
        self.gram = gram  # DMatrix, p x n

    def value(self, x, y):
        alg = self.profile.algebra
        acc = alg.zero
        for i, xi in enumerate(x):
            sxi = self.profile.sigma(xi)
            for j, yj in enumerate(y):
                acc = alg.add(acc, alg.mul(sxi, alg.mul(self.gram.entry(i, j), yj)))
        return acc

    def as_f_bilinear(self):
        """The F-valued form e(B(x, y)) on flattened coordinates."""
        alg = self.profile.algebra
        d = alg.degree
        p, n = self.gram.n, self.gram.p
        rows = []
        for i in range(p):
            for l in range(d):
                x = [alg.zero] * p
                x[i] = alg.basis_element(l)
                row = []
                for j in range(n):
                    for m in range(d):
                        y = [alg.zero] * n
                        y[j] = alg.basis_element(m)
                        row.append(self.profile.e_of(self.value(tuple(x), tuple(y))))
                rows.append(row)
        return FBilinearForm(alg, p, n, rows)

    def is_e_nonisotropic_at(self, x):
        F = self.profile.algebra.field
        return not F.is_zero(self.profile.e_of(self.value(x, x)))


def _f2_vectors(F, n):
    for bits in itertools.product((0, 1), repeat=n):
        yield [F.one if b else F.zero for b in bits]


def alternator_space(space):
    """Canonical F-basis of Alt(S), the forms with b(x, u(x)) = 0 throughout.

    The polarized linear system over F-basis vectors is used; over F_2 the
    quadratic conditions b(x, u x) = 0 are imposed pointwise over the whole
    coordinate space instead, since polarization alone is too coarse there.
    """
    alg = space.alg
    F = alg.field
    d = alg.degree
    dp, dn = d * space.p, d * space.n
    nunk = dp * dn
    u_mats = [M.f_matrix() for M in space.basis]
    rows = []
    if F.cardinality == 2:
        for U in u_mats:
            for x in _f2_vectors(F, dp):
                ux = flinalg.mat_vec(U, x, F)
                row = [F.zero] * nunk
                for s in range(dp):
                    if F.is_zero(x[s]):
                        continue
                    for t in range(dn):
                        if not F.is_zero(ux[t]):
                            row[s * dn + t] = F.add(row[s * dn + t], F.mul(x[s], ux[t]))
                rows.append(row)
    else:
        for U in u_mats:
            cols = [[U[t][s] for t in range(dn)] for s in range(dp)]  # u(e_s)
            for s in range(dp):
                row = [F.zero] * nunk
                for t in range(dn):
                    row[s * dn + t] = cols[s][t]
                rows.append(row)
            for s1 in range(dp):
                for s2 in range(s1 + 1, dp):
                    row = [F.zero] * nunk
                    for t in range(dn):
                        row[s1 * dn + t] = F.add(row[s1 * dn + t], cols[s2][t])
                        row[s2 * dn + t] = F.add(row[s2 * dn + t], cols[s1][t])
                    rows.append(row)
    if not rows:
        rows = [[F.zero] * nunk]
    kernel = flinalg.kernel_basis(rows, F)
    kernel, _ = flinalg.rref(kernel, F)
    out = []
    for flat in kernel:
        gram = [flat[s * dn:(s + 1) * dn] for s in range(dp)]
        out.append(FBilinearForm(alg, space.p, space.n, gram))
    return out


def alternating_maps(b, shape=None, restrict_to_D=True):
    """The space of maps u with b(x, u(x)) = 0 for all x.

    With restrict_to_D the unknowns run over Mat_{n,p}(D); otherwise over all
    F-linear maps, returned as an operator space over the trivial algebra on
    F with ambient shape (dn, dp).
    """
    alg = b.alg
    F = alg.field
    p, n = b.p, b.n
    if restrict_to_D:
        ambient_alg, amb_n, amb_p = alg, n, p
        unit_basis = []
        for i in range(n):
            for j in range(p):
                for k in range(alg.degree):
                    unit_basis.append(DMatrix.unit(alg, n, p, i, j, alg.basis_element(k)))
    else:
        ambient_alg = trivial_algebra(F)
        amb_n, amb_p = alg.degree * n, alg.degree * p
        unit_basis = []
        for i in range(amb_n):
            for j in range(amb_p):
                unit_basis.append(DMatrix.unit(ambient_alg, amb_n, amb_p, i, j))
    d = alg.degree
    dp, dn = d * p, d * n
    # each unknown coefficient multiplies a fixed matrix; build the linear system
    u_mats = []
    for E in unit_basis:
        if restrict_to_D:
            u_mats.append(E.f_matrix())
        else:
            u_mats.append([[x[0] for x in row] for row in E.rows])
    nunk = len(unit_basis)
    rows = []
    if F.cardinality == 2:
        for x in _f2_vectors(F, dp):
            row = [F.zero] * nunk
            for idx, U in enumerate(u_mats):
                ux = flinalg.mat_vec(U, x, F)
                row[idx] = b.value_flat(x, ux)
            rows.append(row)
    else:
        basis_vecs = []
        for s in range(dp):
            v = [F.zero] * dp
            v[s] = F.one
            basis_vecs.append(v)
        images = [[flinalg.mat_vec(U, v, F) for v in basis_vecs] for U in u_mats]
        for s in range(dp):
            rows.append([b.value_flat(basis_vecs[s], images[idx][s]) for idx in range(nunk)])
        for s1 in range(dp):
            for s2 in range(s1 + 1, dp):
                rows.append(
                    [
                        F.add(
                            b.value_flat(basis_vecs[s1], images[idx][s2]),
                            b.value_flat(basis_vecs[s2], images[idx][s1]),
                        )
                        for idx in range(nunk)
                    ]
                )
    kernel = flinalg.kernel_basis(rows, F)
    mats = []
    for coeffs in kernel:
        M = DMatrix.zero(ambient_alg, amb_n, amb_p)
        for c, E in zip(coeffs, unit_basis):
            if not F.is_zero(c):
                M = M.add(E.smul(c))
        mats.append(M)
    return OperatorSpace(ambient_alg, amb_n, amb_p, mats)


def radicals(b):
    """(left radical, right radical) of an F-bilinear form."""
    return b.left_radical(), b.right_radical()


def induced_D_form(b, e_row):
    """The unique right-D-linear lift with b = e o B.

    Returns the matrix of values B(x_s, eps_j) in D for x_s running over the
    F-basis of U = D^p and eps_j over the D-basis of V = D^n.  The lift
    exists and is unique because f -> e o f is an isomorphism onto the
    F-linear forms.
    """
    alg = b.alg
    F = alg.field
    d = alg.degree
    # duality matrix: M[k][l] = e(a_l * a_k)
    M_e = [
        [
            _e_apply(e_row, alg.mul(alg.basis_element(l), alg.basis_element(k)), F)
            for l in range(d)
        ]
        for k in range(d)
    ]
    if flinalg.invert(M_e, F) is None:
        raise SingularDuality("the form e does not induce a duality", e=[F.to_str(c) for c in e_row])
    dp = d * b.p
    out = []
    for s in range(dp):
        x = [F.zero] * dp
        x[s] = F.one
        row = []
        for j in range(b.n):
            rhs = []
            for k in range(d):
                y = [alg.zero] * b.n
                y[j] = alg.basis_element(k)
                rhs.append(b.value_flat(x, dmat.vec_flat(tuple(y))))
            z = flinalg.solve(M_e, rhs, F)
            row.append(tuple(z))
        out.append(row)
    return out


def _e_apply(e_row, element, F):
    acc = F.zero
    for c, x in zip(e_row, element):
        acc = F.add(acc, F.mul(c, x))
    return acc


def recover_sesquilinear(b, profile):
    """Gram matrix over D of the sesquilinear form with b = e o B.

    Computes the right-D-linear lift and checks left sigma-quasilinearity
    B(x a, y) = sigma(a) B(x, y) on all basis triples; a failing triple is
    reported as the witness.
    """
    alg = profile.algebra
    if not alg.same(b.alg):
        raise InputError("form and profile live over different algebras")
    F = alg.field
    d = alg.degree
    lift = induced_D_form(b, profile.e_row)
    # P[i][j] = B(eps_i, eps_j) via F-linearity over the unit coordinates
    P = []
    for i in range(b.p):
        row = []
        for j in range(b.n):
            acc = alg.zero
            for l in range(d):
                c = alg.unit[l]
                if not F.is_zero(c):
                    acc = alg.add(acc, alg.smul(c, lift[i * d + l][j]))
            row.append(acc)
        P.append(row)
    for i in range(b.p):
        for l in range(d):
            sig = profile.sigma(alg.basis_element(l))
            for j in range(b.n):
                expected = alg.mul(sig, P[i][j])
                if not alg.eq(lift[i * d + l][j], expected):
                    raise NotSesquilinear(
                        "left sigma-quasilinearity fails",
                        witness={"vector": i, "algebra_basis": l, "column": j},
                    )
    return SesquilinearForm(profile, DMatrix(alg, P))


class QuadraticTypeDetection:
    def __init__(self, profile, b, B, q_coeffs):
        self.profile = profile
        self.b = b
        self.B = B
        self.q_coeffs = q_coeffs


def detect_quadratic_type(space, budget=None):
    """Quadratic-type profile from a 1-dimensional alternator space.

    Picks the canonical generator b of Alt(S), forms the twisted Grams
    b^a(x,y) = b(xa, ya), solves the proportionality b^a = q(a) b for the
    quadratic form q, classifies q as a composition form, and recovers the
    sesquilinear lift.  Requires |F| > 2; the two-element field is excluded
    from classification throughout.
    """
    alg = space.alg
    F = alg.field
    if F.cardinality == 2:
        raise InputError("quadratic-type detection needs |F| > 2")
    alts = alternator_space(space)
    if len(alts) != 1:
        raise AltNotOneDimensional(
            "alternator space dimension must be 1", dim=len(alts)
        )
    b = alts[0]
    d = alg.degree
    G = b.gram
    rmats = [alg.right_mult_matrix(alg.basis_element(k)) for k in range(d)]
    RU = [_block_diag(rmats[k], space.p, F) for k in range(d)]
    RV = [_block_diag(rmats[k], space.n, F) for k in range(d)]
    T = {}
    for k in range(d):
        GT = flinalg.mat_mul(flinalg.transpose(RU[k]), G, F)
        for l in range(d):
            T[(k, l)] = flinalg.mat_mul(GT, RV[l], F)
    # symmetrized coefficient Grams: S_kl = T_kl + T_lk (k < l), S_kk = T_kk
    s0, t0 = _first_nonzero(G, F)
    q_coeffs = [[F.zero] * d for _ in range(d)]
    pivot = G[s0][t0]
    for k in range(d):
        for l in range(k, d):
            if k == l:
                S = T[(k, k)]
            else:
                S = [
                    [F.add(a, bb) for a, bb in zip(r1, r2)]
                    for r1, r2 in zip(T[(k, l)], T[(l, k)])
                ]
            lam = F.div(S[s0][t0], pivot)
            q_coeffs[k][l] = lam
            for s in range(len(G)):
                for t in range(len(G[0])):
                    if not F.eq(S[s][t], F.mul(lam, G[s][t])):
                        raise NotProportional(
                            "twisted form is not proportional to the alternator",
                            witness={"basis_pair": (k, l), "entry": (s, t)},
                        )
    profile = classify_composition_form(alg, q_coeffs, budget=budget)
    B = recover_sesquilinear(b, profile)
    return QuadraticTypeDetection(profile, b, B, q_coeffs)


def _block_diag(block, copies, F):
    d = len(block)
    N = d * copies
    out = [[F.zero] * N for _ in range(N)]
    for c in range(copies):
        for i in range(d):
            for j in range(d):
                out[c * d + i][c * d + j] = block[i][j]
    return out


def _first_nonzero(G, F):
    for s, row in enumerate(G):
        for t, c in enumerate(row):
            if not F.is_zero(c):
                return s, t
    raise InputError("zero form has no distinguished entry")
