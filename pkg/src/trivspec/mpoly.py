"""Sparse multivariate polynomials over a scalar context.

Terms are stored as {exponent tuple: coefficient}; iteration uses graded
lexicographic order so that every derived artifact (generic matrices,
catcher bases, report strings) is deterministic.
"""

from __future__ import annotations


def _grlex_key(expts):
    return (sum(expts), tuple(-e for e in expts))


class MPoly:
    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx, nvars, terms=None):
        self.ctx = ctx
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items() if isinstance(terms, dict) else terms:
                self._add_term(e, c)

    def _add_term(self, expts, coeff):
        if self.ctx.is_zero(coeff):
            return
        expts = tuple(expts)
        cur = self.terms.get(expts)
        if cur is None:
            self.terms[expts] = coeff
        else:
            s = self.ctx.add(cur, coeff)
            if self.ctx.is_zero(s):
                del self.terms[expts]
            else:
                self.terms[expts] = s

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx, nvars):
        return cls(ctx, nvars)

    @classmethod
    def constant(cls, ctx, nvars, c):
        p = cls(ctx, nvars)
        p._add_term((0,) * nvars, c)
        return p

    @classmethod
    def variable(cls, ctx, nvars, i):
        p = cls(ctx, nvars)
        e = [0] * nvars
        e[i] = 1
        p._add_term(tuple(e), ctx.one)
        return p

    @classmethod
    def linear(cls, ctx, coeffs):
        """1-homogeneous polynomial with the given coefficient vector."""
        n = len(coeffs)
        p = cls(ctx, n)
        for i, c in enumerate(coeffs):
            if not ctx.is_zero(c):
                e = [0] * n
                e[i] = 1
                p._add_term(tuple(e), c)
        return p

    # -- queries ---------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def linear_coeffs(self):
        """Coefficient vector of a 1-homogeneous polynomial."""
        out = [self.ctx.zero] * self.nvars
        for e, c in self.terms.items():
            if sum(e) != 1:
                raise ValueError("polynomial is not 1-homogeneous")
            out[e.index(1)] = c
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def leading(self):
        """Leading (exponent, coeff) in graded lex order, largest last-degree first."""
        if not self.terms:
            return None
        e = min(self.terms, key=lambda t: (-sum(t), tuple(-x for x in t)))
        return e, self.terms[e]

    # -- arithmetic --------------------------------------------------------------

    def _like(self):
        return MPoly(self.ctx, self.nvars)

    def add(self, other):
        out = self._like()
        out.terms = dict(self.terms)
        for e, c in other.terms.items():
            out._add_term(e, c)
        return out

    def neg(self):
        out = self._like()
        out.terms = {e: self.ctx.neg(c) for e, c in self.terms.items()}
        return out

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        out = self._like()
        if self.ctx.is_zero(c):
            return out
        out.terms = {e: self.ctx.mul(c, x) for e, x in self.terms.items()}
        return out

    def mul(self, other):
        ctx = self.ctx
        out = self._like()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out._add_term(tuple(a + b for a, b in zip(e1, e2)), ctx.mul(c1, c2))
        return out

    def eval(self, point):
        ctx = self.ctx
        acc = ctx.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                for _ in range(k):
                    t = ctx.mul(t, x)
            acc = ctx.add(acc, t)
        return acc

    def coefficient(self, expts):
        return self.terms.get(tuple(expts), self.ctx.zero)

    def divide_exact(self, divisor):
        """Exact quotient self / divisor, or None when not divisible."""
        ctx = self.ctx
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = MPoly(ctx, self.nvars, dict(self.terms))
        quot = self._like()
        d_lead = divisor.leading()
        de, dc = d_lead
        dc_inv = ctx.inv(dc)
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(x < 0 for x in qe):
                return None
            qc = ctx.mul(rc, dc_inv)
            mono = MPoly(ctx, self.nvars, {qe: qc})
            quot = quot.add(mono)
            rem = rem.sub(mono.mul(divisor))
        return quot

    def eq(self, other):
        return self.nvars == other.nvars and self.terms == other.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.eq(other)

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.keys()))))

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"z{i+1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            cs = self.ctx.to_str(c)
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        return "+".join(parts)

    def __repr__(self):
        return f"MPoly({self.to_str()})"
